#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "glat/scalar.hpp"

namespace glat {

using Int = mpz_class;
using Pt = std::vector<Int>;  // lattice point, arbitrary-precision coordinates

Pt pt_zero(int rank);
Pt operator+(const Pt& a, const Pt& b);
Pt operator-(const Pt& a, const Pt& b);
Pt operator-(const Pt& a);
Pt operator*(const Int& k, const Pt& a);
bool is_zero(const Pt& a);
std::string pt_str(const Pt& a);

struct PtHash {
  size_t operator()(const Pt& p) const;
};
struct PtLess {  // lexicographic
  bool operator()(const Pt& a, const Pt& b) const;
};

// Reduce each coordinate mod its modulus (0 = free coordinate) into [0, m).
Pt canon(const Pt& p, const std::vector<long>& moduli);

// Cube [-radius, radius]^rank traversed in lexicographic order.
struct Box {
  int rank = 1;
  long radius = 0;
  void each(const std::function<void(const Pt&)>& fn) const;
  std::vector<Pt> points() const;
  bool contains(const Pt& p) const;
};

// Additive map Z^rank -> Q(i)^dim given by generator images.
struct AdditiveMap {
  int rank = 0;
  int dim = 1;
  std::vector<std::vector<Scalar>> gen_images;  // [rank][dim]
  std::vector<Scalar> apply(const Pt& p) const;
  Scalar apply1(const Pt& p) const;  // dim == 1 convenience
};

using CPair = std::array<Scalar, 2>;

// <(a,b)|(c,d)> = b*c - a*d
Scalar symplectic_form(const CPair& u, const CPair& v);

// ---- integer lattice utilities (row-style Hermite normal form) ----

// HNF basis of the sublattice generated by the given points; rows are
// echelon with positive pivots, entries above a pivot reduced mod it.
std::vector<Pt> hnf_basis(std::vector<Pt> gens, int rank);

// Index [Z^rank : L] for a full-rank sublattice basis (product of pivots);
// nullopt when the basis has rank < rank.
std::optional<Int> lattice_index(const std::vector<Pt>& hnf, int rank);

// Membership p in span_Z(hnf)?
bool in_lattice(const std::vector<Pt>& hnf, const Pt& p);

// For primitive alpha (gcd of coordinates 1), a unimodular basis of Z^rank
// whose first vector is alpha.
std::vector<Pt> complete_primitive(const Pt& alpha);

// Divide out the gcd of the coordinates; error on the zero vector.
Pt make_primitive(const Pt& p);

}  // namespace glat
