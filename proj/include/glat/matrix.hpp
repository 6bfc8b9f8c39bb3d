#pragma once
#include <optional>
#include <vector>

#include "glat/scalar.hpp"

namespace glat {

using Vec = std::vector<Scalar>;

struct ExactMatrix {
  int rows = 0, cols = 0;
  std::vector<Vec> a;
  ExactMatrix() = default;
  ExactMatrix(int r, int c) : rows(r), cols(c), a(r, Vec(c, Scalar(0))) {}
  Scalar& at(int r, int c) { return a[r][c]; }
  const Scalar& at(int r, int c) const { return a[r][c]; }
};

// Fraction-free (Bareiss) elimination after row-wise denominator clearing;
// deterministic pivoting (first nonzero in column order).
int rank(const ExactMatrix& m);

// Canonical nullspace basis: one vector per free column, scaled so the first
// nonzero entry is 1, ordered by free column index.
std::vector<Vec> nullspace(const ExactMatrix& m);

// Particular solution of m x = rhs with free variables set to 0; nullopt when
// inconsistent.
std::optional<Vec> solve(const ExactMatrix& m, const Vec& rhs);

// Incremental row-reduced span, used for quotient bookkeeping: rows are kept
// fully reduced with leading coefficient 1.
class Echelon {
 public:
  explicit Echelon(int cols) : cols_(cols) {}
  // Reduce v by the current span; if a nonzero residual remains, add it as a
  // new row and return true.
  bool insert(Vec v);
  // Residual of v modulo the span.
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  int rank() const { return (int)rows_.size(); }
  int cols() const { return cols_; }
  const std::vector<int>& pivots() const { return pivots_; }
  std::vector<int> free_cols() const;

 private:
  int cols_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;  // parallel to rows_, strictly increasing
};

}  // namespace glat
