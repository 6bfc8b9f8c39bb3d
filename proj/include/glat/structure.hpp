#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glat/lattice.hpp"
#include "glat/matrix.hpp"

namespace glat {

enum class Field { Q, Qi };

// A lattice-graded bracket with one-dimensional components, presented by its
// structure function c: [L_a, L_b] = c(a,b) L_{a+b}.  Degrees live in
// Z^rank / (moduli), moduli[i] = 0 meaning a free coordinate; both callbacks
// receive canonical representatives.
struct ScalarStructure {
  int rank = 1;
  Field field = Field::Q;
  std::vector<long> moduli;  // empty = all free
  std::string name = "anonymous";
  std::function<Scalar(const Pt&, const Pt&)> c;
  std::function<bool(const Pt&)> supp;
  bool param_injective = true;  // catalog metadata, meaningful for wpi
  bool cond_c = true;           // catalog metadata: simplicity precondition
  bool cond_c_exact = true;     // whether cond_c was decided exactly

  std::vector<long> moduli_or_free() const {
    return moduli.empty() ? std::vector<long>(rank, 0) : moduli;
  }
  Pt canon_pt(const Pt& p) const { return canon(p, moduli_or_free()); }
  Scalar cc(const Pt& a, const Pt& b) const { return c(canon_pt(a), canon_pt(b)); }
  bool in_supp(const Pt& p) const { return supp(canon_pt(p)); }
  Scalar l(const Pt& p) const { return cc(pt_zero(rank), p); }
  bool finite() const;          // all moduli positive
  std::vector<Pt> all_degrees() const;  // finite structures only
};

// Memoizing wrapper (the callbacks may be expensive, e.g. pullbacks of
// extracted data).
ScalarStructure memoized(const ScalarStructure& s);

// ---- bracket verification -----------------------------------------------

struct JacobiViolation {
  Pt a, b, nu;      // nu empty => antisymmetry violation on (a, b)
  Scalar residue;
};
struct JacobiReport {
  long pairs = 0, triples = 0;
  std::vector<JacobiViolation> violations;
  bool ok() const { return violations.empty(); }
};
JacobiReport check_jacobi(const ScalarStructure& s, const Box& box, int threads = 1);

// ---- analysis of l(x) = c(0, x) -------------------------------------------

struct LAnalysis {
  enum Kind { Additive, Bounded, Inconclusive } kind = Inconclusive;
  AdditiveMap lhat;     // Additive: l as a linear form (dim 1)
  long bound = 0;       // Bounded: value set is exactly [-bound, bound] * step
  Scalar step;
  std::string detail;
};
LAnalysis analyze_l(const ScalarStructure& s, const Box& box);

// Sigma = degrees x with c(x, -x) != 0 (sl2-pairs), Pi = support degrees with
// l(x) == 0.  `pair_criterion` reports whether within the box every Pi degree
// is a sum of two Sigma degrees (the gateway to the pair decomposition).
struct SigmaPiReport {
  std::vector<Pt> sigma, pi;
  bool pair_criterion = true;
};
SigmaPiReport sigma_pi(const ScalarStructure& s, const Box& box);

// Randomized irreducibility probe: for sampled support degrees a != 0 and b,
// look for theta with c(theta, a) != 0 and c(b - theta - a, theta + a) != 0,
// i.e. a two-step path from L_a to L_b.
struct ProbeTrial {
  Pt a, b, theta;
  bool found = false;
};
struct ProbeReport {
  std::vector<ProbeTrial> trials;
  bool all_found = true;
};
ProbeReport simplicity_probe(const ScalarStructure& s, const Box& box, int trials,
                             std::uint64_t seed);

// Degree-mu centroid elements: psi with psi([L_a, L_b]) = [L_a, psi(L_b)],
// psi(L_b) = psi_b L_{b+mu}, solved on the box.  Returns a basis.
struct CentroidElement {
  Pt degree;
  std::map<Pt, Scalar, PtLess> psi;
};
std::vector<CentroidElement> centroid_solve(const ScalarStructure& s, const Box& box,
                                            const Pt& mu);

// ---- diagonal equivalence ---------------------------------------------------
//
// Find t: degrees -> units with c1(a,b) t(a+b) = t(a) t(b) c2(a,b) on the box.
// Gauge fixing: t = 1 on the coordinate generators (characters are invisible).
struct EquivResult {
  bool ok = false;
  std::map<Pt, Scalar, PtLess> t;
  std::string failure;
};
EquivResult diagonal_equivalence(const ScalarStructure& s1, const ScalarStructure& s2,
                                 const Box& box);

// ---- degree reflections (finite structures) ---------------------------------

struct ReflectionResult {
  std::vector<Pt> degrees;           // column order
  ExactMatrix mat;                   // the composed exponentials
  bool monomial = false;             // every column has a single nonzero entry
  bool automorphism = false;         // s[x,y] = [sx, sy] on all pairs
  bool degree_law = false;           // column of a lands on a - 2 l(a) beta
  std::map<Pt, Scalar, PtLess> diag; // coefficient per degree when monomial
};
ReflectionResult reflection(const ScalarStructure& s, const Pt& beta);

// t = s_alpha s_beta s_alpha s_beta; checks it fixes the l = 0 part pointwise
// and translates degrees by 4 l(x) (alpha - beta).
struct TranslationResult {
  ExactMatrix mat;
  bool fixes_l0 = false;
  bool degree_law = false;
  bool automorphism = false;
};
TranslationResult translation(const ScalarStructure& s, const Pt& alpha, const Pt& beta);

}  // namespace glat
