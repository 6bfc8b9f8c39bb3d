#include "glat/matrix.hpp"

#include <algorithm>

namespace glat {

namespace {

// Multiply each row by the lcm of its entries' denominators so Bareiss works
// on Gaussian-integer entries (bounds intermediate growth; rank and nullspace
// are unchanged by row scaling).
void clear_denominators(ExactMatrix& m) {
  for (auto& row : m.a) {
    mpz_class l(1);
    for (const auto& s : row) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.re().get_den().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.im().get_den().get_mpz_t());
    }
    if (l != 1) {
      Scalar f{mpq_class(l)};
      for (auto& s : row) s *= f;
    }
  }
}

struct EchelonForm {
  ExactMatrix m;
  std::vector<int> pivot_cols;
};

EchelonForm bareiss(ExactMatrix m) {
  clear_denominators(m);
  EchelonForm ef;
  Scalar prev(1);
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(m.a[r], m.a[pr]);
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = c + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = Scalar(0);
    }
    prev = m.at(r, c);
    ef.pivot_cols.push_back(c);
    ++r;
  }
  ef.m = std::move(m);
  return ef;
}

// Convert a Bareiss echelon form to RREF (rational division is fine here; the
// heavy elimination already happened fraction-free).
void to_rref(EchelonForm& ef) {
  int nr = (int)ef.pivot_cols.size();
  for (int r = nr - 1; r >= 0; --r) {
    int pc = ef.pivot_cols[r];
    Scalar inv = ef.m.at(r, pc).inverse();
    for (int j = pc; j < ef.m.cols; ++j) ef.m.at(r, j) *= inv;
    for (int i = 0; i < r; ++i) {
      Scalar f = ef.m.at(i, pc);
      if (f.is_zero()) continue;
      for (int j = pc; j < ef.m.cols; ++j)
        ef.m.at(i, j) -= f * ef.m.at(r, j);
    }
  }
}

}  // namespace

int rank(const ExactMatrix& m) { return (int)bareiss(m).pivot_cols.size(); }

std::vector<Vec> nullspace(const ExactMatrix& m) {
  EchelonForm ef = bareiss(m);
  to_rref(ef);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    Vec v(m.cols, Scalar(0));
    v[j] = Scalar(1);
    for (size_t r = 0; r < ef.pivot_cols.size(); ++r)
      v[ef.pivot_cols[r]] = -ef.m.at((int)r, j);
    // canonical scale: first nonzero entry 1
    for (auto& s : v)
      if (!s.is_zero()) {
        Scalar inv = s.inverse();
        for (auto& t : v) t *= inv;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const ExactMatrix& m, const Vec& rhs) {
  ExactMatrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = rhs[i];
  }
  EchelonForm ef = bareiss(std::move(aug));
  for (int c : ef.pivot_cols)
    if (c == m.cols) return std::nullopt;  // inconsistent
  to_rref(ef);
  Vec x(m.cols, Scalar(0));
  for (size_t r = 0; r < ef.pivot_cols.size(); ++r)
    x[ef.pivot_cols[r]] = ef.m.at((int)r, m.cols);
  return x;
}

bool Echelon::insert(Vec v) {
  v = reduce(std::move(v));
  int pc = -1;
  for (int j = 0; j < cols_; ++j)
    if (!v[j].is_zero()) {
      pc = j;
      break;
    }
  if (pc < 0) return false;
  Scalar inv = v[pc].inverse();
  for (auto& s : v) s *= inv;
  // keep existing rows reduced against the new one
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar f = rows_[r][pc];
    if (f.is_zero()) continue;
    for (int j = 0; j < cols_; ++j) rows_[r][j] -= f * v[j];
  }
  auto it = std::upper_bound(pivots_.begin(), pivots_.end(), pc);
  size_t idx = it - pivots_.begin();
  pivots_.insert(it, pc);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

Vec Echelon::reduce(Vec v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar f = v[pivots_[r]];
    if (f.is_zero()) continue;
    for (int j = 0; j < cols_; ++j) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool Echelon::contains(const Vec& v) const {
  Vec r = reduce(v);
  for (const auto& s : r)
    if (!s.is_zero()) return false;
  return true;
}

std::vector<int> Echelon::free_cols() const {
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots_) is_pivot[c] = true;
  std::vector<int> out;
  for (int j = 0; j < cols_; ++j)
    if (!is_pivot[j]) out.push_back(j);
  return out;
}

}  // namespace glat
