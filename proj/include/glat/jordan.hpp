#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glat/structure.hpp"

namespace glat {

// A lattice-graded unital Jordan line algebra: X_a X_b = p(a,b) X_{a+b} with
// dim-1 components.  p is total on canonical degrees and must vanish whenever
// the target leaves the support.
struct GradedJordan {
  int rank = 1;
  std::vector<long> moduli;
  std::string name = "jordan";
  std::function<Scalar(const Pt&, const Pt&)> p;
  std::function<bool(const Pt&)> supp;

  std::vector<long> moduli_or_free() const {
    return moduli.empty() ? std::vector<long>(rank, 0) : moduli;
  }
  Pt canon_pt(const Pt& q) const { return canon(q, moduli_or_free()); }
  Scalar pp(const Pt& a, const Pt& b) const { return p(canon_pt(a), canon_pt(b)); }
  bool in_supp(const Pt& q) const { return supp(canon_pt(q)); }
};

// Group line algebra of a sublattice (all structure constants 1).
GradedJordan group_jordan(int rank, const std::vector<Pt>& lattice_gens);

struct JordanViolation {
  std::string identity;
  Pt a, b, gamma;  // gamma empty when the identity is purely scalar
};
// Commutativity, unit row, the quadratic operator identity
// [L_{x^2}, L_y] = 2 [L_x, L_{xy}], its scalar companion, and the Jordan
// identity (x^2 y) x = x^2 (y x), all on box pairs (evaluation degrees for the
// operator identity also run over the box support).
std::vector<JordanViolation> check_jordan(const GradedJordan& j, const Box& box);

// 1/p(a,-a) when X_a is invertible with commuting multiplication operators
// (checked on the box window); nothing otherwise.
std::optional<Scalar> strongly_invertible(const GradedJordan& j, const Pt& a, const Box& box);

// Coefficient function of the inner derivation [L_a, L_b] evaluated on the
// box support: gamma -> p(b,gamma) p(a,b+gamma) - p(a,gamma) p(b,a+gamma).
std::map<Pt, Scalar, PtLess> inner_derivation(const GradedJordan& j, const Pt& a,
                                              const Pt& b, const Box& box);

// The graded Lie hull of a Jordan line algebra along a grading shift alpha:
// degrees alpha + a (e-part), -alpha + a (f-part), a (h-part and inner
// derivations).  The inner-derivation line at a degree is pinned to the first
// lexicographic generating pair; every other pair must be proportional on the
// window (the multiplicity-free requirement), which is verified on demand.
ScalarStructure kkt(const GradedJordan& j, const Pt& alpha, long window = 8);

// Reverse direction: reconstruct a Jordan line algebra from a graded bracket
// and a degree alpha with c(alpha,-alpha) != 0 and l(alpha) != 0:
//   J-degrees  mu with l(mu + alpha) = l(alpha) and mu + alpha in supp,
//   p(mu,nu) = c(-alpha, mu+alpha) c(mu, nu+alpha) / (c(-alpha,alpha) l(alpha)).
// The unit row p(0,.) = 1 is verified on the box.
GradedJordan extract_jordan(const ScalarStructure& s, const Pt& alpha, const Box& box);

}  // namespace glat
