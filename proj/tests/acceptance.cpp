// Acceptance gate: one line per criterion, [PASS]/[FAIL], exact arithmetic
// throughout, wall-clock budget pinned per criterion.  Any failure exits 1.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "glat/catalog.hpp"
#include "glat/classify.hpp"
#include "glat/jordan.hpp"
#include "glat/local.hpp"
#include "glat/matrix.hpp"
#include "glat/structure.hpp"
#include "glat/symbols.hpp"

using namespace glat;

namespace {

#define REQUIRE(cond, msg)                                                       \
  do {                                                                           \
    if (!(cond)) {                                                               \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << msg        \
                << "\n";                                                         \
      std::exit(1);                                                              \
    }                                                                            \
  } while (0)

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double sec() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void pass(int num, const std::string& what, double sec, double limit) {
  std::ostringstream os;
  os << "criterion " << num << " (" << what << ") took " << sec << "s, budget "
     << limit << "s";
  REQUIRE(sec < limit, os.str());
  std::cout << "[PASS] criterion " << num << ": " << what << " (" << sec << "s < "
            << limit << "s)\n";
}

// ---- shared helpers ----------------------------------------------------------

Scalar term_at(const Pdo& p, const Scalar& zx, const Scalar& dx) {
  for (const auto& t : p.terms)
    if (t.zx == zx && t.dx == dx) return t.coef;
  return Scalar(0);
}

// The anchor rule used by the classifier, replicated independently so the
// round-trip check does not trust the report: smallest sup-norm primitive
// degree with nonzero grading form, lexicographic tie-break.
Pt expected_anchor(const std::vector<CPair>& gens, const Box& box) {
  auto pi1 = [&](const Pt& p) {
    Scalar v(0);
    for (size_t i = 0; i < gens.size(); ++i) v = v + Scalar(p[i]) * gens[i][0];
    return v;
  };
  auto pi2 = [&](const Pt& p) {
    Scalar v(0);
    for (size_t i = 0; i < gens.size(); ++i) v = v + Scalar(p[i]) * gens[i][1];
    return v;
  };
  std::optional<Pt> best;
  long best_norm = 0;
  box.each([&](const Pt& p) {
    if (is_zero(p)) return;
    Pt q = make_primitive(p);
    if ((pi1(q) - pi2(q)).is_zero()) return;
    long nrm = 0;
    for (const Int& x : q) nrm = std::max(nrm, std::labs(x.get_si()));
    if (!best || nrm < best_norm || (nrm == best_norm && PtLess{}(q, *best)))
      best = q, best_norm = nrm;
  });
  REQUIRE(best.has_value(), "no anchor for generated parameters");
  return *best;
}

// ---- criteria ------------------------------------------------------------------

void criterion1() {
  Timer tm;
  const auto s = wpi({CPair{Scalar(1), Scalar(0)}, CPair{Scalar(0), Scalar::i()}},
                     Field::Qi);
  REQUIRE(s.cond_c, "sample parameters must satisfy the simplicity precondition");
  const auto rep = check_jacobi(s, Box{2, 4});
  REQUIRE(rep.ok(), "jacobi violations on the rank-2 sample");
  REQUIRE(rep.triples >= 500000, "triple count below the advertised scale");
  pass(1, "jacobi sweep, rank 2, box 4", tm.sec(), 30.0);
}

void criterion2() {
  Timer tm;
  std::vector<Scalar> zs;
  for (long k = -3; k <= 3; ++k) zs.push_back(Scalar(k));
  const std::vector<Scalar> ds{Scalar(-2),         Scalar(-1), Scalar(0),
                               Scalar(1),          Scalar(2),  Scalar::frac(1, 2),
                               Scalar::frac(1, 3)};
  long cases = 0;
  for (const auto& s : zs)
    for (const auto& x : ds)
      for (const auto& t : zs)
        for (const auto& y : ds) {
          const Pdo a = Pdo::mono(Scalar(1), s, x);
          const Pdo b = Pdo::mono(Scalar(1), t, y);
          const CPair ea{s - Scalar(1), x - Scalar(1)};
          const CPair eb{t - Scalar(1), y - Scalar(1)};
          const CPair ci = commutative_product(ea, eb);
          REQUIRE(term_at(opd_product(a, b, 5), ci[0] + Scalar(1), ci[1] + Scalar(1)) ==
                      Scalar(1),
                  "leading product term does not match the symbol oracle");
          REQUIRE(term_at(opd_commutator(a, b, 5), s + t - Scalar(1),
                          x + y - Scalar(1)) == poisson_coeff(ea, eb),
                  "leading commutator term does not match the poisson oracle");
          ++cases;
        }
  REQUIRE(cases >= 500, "fewer than 500 oracle cases");
  pass(2, "operator oracle coherence, " + std::to_string(cases) + " cases", tm.sec(),
       10.0);
}

void criterion3() {
  Timer tm;
  const std::vector<Scalar> deltas{Scalar(-1), Scalar(2),       Scalar(0),
                                   Scalar(1),  Scalar(3),       Scalar::frac(1, 3)};
  const int expect[6] = {1, 1, 2, 2, 2, 2};
  for (size_t k = 0; k < deltas.size(); ++k) {
    const auto row = lmin_dim_table_row("product", deltas[k], Scalar(0), 12);
    std::ostringstream os;
    os << "interior level-3 dimension for delta " << deltas[k].str() << ": got "
       << row.headline << ", want " << expect[k];
    REQUIRE(row.headline == expect[k], os.str());
  }
  pass(3, "level-3 dimension table over six weights", tm.sec(), 60.0);
}

void criterion4() {
  Timer tm;
  std::mt19937_64 rng(20260814u);
  auto rnd_rat = [&]() {
    const long num = (long)(rng() % 7) - 3;   // [-3, 3]
    const long den = (long)(rng() % 3) + 1;   // [1, 3]
    return Scalar::frac(num, den);
  };
  auto rnd_gauss = [&]() { return rnd_rat() + rnd_rat() * Scalar::i(); };

  const Box box{2, 4};
  int done = 0, attempts = 0;
  while (done < 20) {
    REQUIRE(++attempts < 400, "could not generate 20 admissible parameter sets");
    std::vector<CPair> gens{CPair{rnd_gauss(), rnd_gauss()},
                            CPair{rnd_gauss(), rnd_gauss()}};
    auto s = wpi(gens, Field::Qi);
    if (!s.param_injective || !s.cond_c) continue;

    const auto c = classify(s, box);
    REQUIRE(c.tag == Classification::AdditiveCurrent,
            "random instance not classified as non-integrable");
    REQUIRE(c.embedding.certificate.ok, "missing diagonal-equivalence witness");
    REQUIRE(c.embedding.additive_ok && c.embedding.injective &&
                c.embedding.kernel_basis.empty(),
            "embedding report inconsistent for an injective instance");

    // exact parameter recovery: normalize the input by the same stack
    // (grading form 1 on the anchor, anchor image (1,0)) and compare
    const Pt alpha = expected_anchor(gens, box);
    auto apply = [&](const Pt& p) {
      CPair out{Scalar(0), Scalar(0)};
      for (size_t i = 0; i < gens.size(); ++i) {
        out[0] = out[0] + Scalar(p[i]) * gens[i][0];
        out[1] = out[1] + Scalar(p[i]) * gens[i][1];
      }
      return out;
    };
    const CPair A = apply(alpha);
    const Scalar la = A[0] - A[1];
    REQUIRE(!la.is_zero(), "anchor grading value vanished");
    for (int i = 0; i < 2; ++i) {
      Pt e = pt_zero(2);
      e[(size_t)i] = 1;
      const CPair P = apply(e);
      const Scalar delta =
          (A[1] * (P[0] + Scalar(1)) - A[0] * (P[1] + Scalar(1))) / (A[0] - A[1]);
      const Scalar le = P[0] - P[1];
      const CPair want{le / la - delta - Scalar(1), Scalar(-1) - delta};
      REQUIRE(c.embedding.pi_images[(size_t)i][0] == want[0] &&
                  c.embedding.pi_images[(size_t)i][1] == want[1],
              "recovered parameters differ from the normalized input");
    }
    ++done;
  }
  pass(4, "classifier round trip, 20/20 random rank-2 instances", tm.sec(), 120.0);
}

void criterion5() {
  Timer tm;
  const auto c3 = classify(a1_1(), Box{1, 6});
  REQUIRE(c3.tag == Classification::IntegrableLoop, "type-1 structure not matched");
  REQUIRE(c3.l_analysis.kind == LAnalysis::Bounded && c3.l_analysis.bound == 1,
          "type-1 grading bound wrong");
  REQUIRE(c3.period == 3 && c3.model == "pullback(sl2_z3; 1 mod 3)",
          "type-1 model wrong");
  REQUIRE(c3.certificate.ok, "type-1 witness missing");

  const auto c8 = classify(a2_2(), Box{1, 8});
  REQUIRE(c8.tag == Classification::IntegrableLoop, "type-2 structure not matched");
  REQUIRE(c8.l_analysis.kind == LAnalysis::Bounded && c8.l_analysis.bound == 2,
          "type-2 grading bound wrong");
  REQUIRE(c8.period == 8, "type-2 period wrong");
  REQUIRE(c8.certificate.ok, "type-2 witness missing");
  pass(5, "integrable matching with witnesses, both types", tm.sec(), 60.0);
}

void criterion6() {
  Timer tm;
  const auto j = group_jordan(1, {Pt{Int(3)}});
  const auto s = kkt(j, Pt{Int(1)}, 8);
  REQUIRE(diagonal_equivalence(s, a1_1(), Box{1, 6}).ok,
          "graded hull of the period-3 group algebra does not match type 1");
  pass(6, "unital hull consistency on box 6", tm.sec(), 60.0);
}

void criterion7() {
  Timer tm;
  const auto s = pullback({1}, 3, sl2_z3());
  REQUIRE(centroid_solve(s, Box{1, 6}, Pt{Int(1)}).empty(),
          "unexpected degree-1 centroid element");
  REQUIRE(centroid_solve(s, Box{1, 6}, Pt{Int(2)}).empty(),
          "unexpected degree-2 centroid element");
  REQUIRE(centroid_solve(s, Box{1, 6}, Pt{Int(3)}).size() == 1,
          "missing degree-3 centroid element");
  pass(7, "centroid detects the period-3 support group", tm.sec(), 60.0);
}

void criterion8() {
  Timer tm;
  const auto s = sl3_z8();
  const auto r = reflection(s, Pt{Int(1)});
  REQUIRE(r.degrees.size() == 8, "reflection did not cover all 8 degrees");
  REQUIRE(r.monomial, "reflection is not monomial on some degree");
  REQUIRE(r.degree_law, "reflection degree law violated");
  REQUIRE(r.automorphism, "reflection is not an automorphism");
  int checked = 0;
  for (const auto& q : r.degrees)
    if (s.l(q).is_zero()) {
      const Scalar d = r.diag.at(q);
      REQUIRE(d == Scalar(1) || d == Scalar(-1), "sign rule violated on l = 0");
      ++checked;
    }
  REQUIRE(checked == 2, "expected exactly two isotropic degrees mod 8");
  pass(8, "degree reflection on the period-8 structure", tm.sec(), 60.0);
}

void criterion9() {
  Timer tm;
  // six density weights, six deformation parameter pairs: Witt relation sweeps
  const std::vector<std::pair<Scalar, Scalar>> dens{
      {Scalar(0), Scalar(0)},          {Scalar(1), Scalar(0)},
      {Scalar::frac(1, 2), Scalar::frac(1, 3)},
      {Scalar::frac(1, 3), Scalar(0)}, {Scalar(-1), Scalar::frac(1, 2)},
      {Scalar(2), Scalar::frac(-1, 3)}};
  for (const auto& [d, s] : dens)
    for (long j = -4; j <= 4; ++j) {
      const Scalar x = s + Scalar(j);
      for (long n = -3; n <= 3; ++n)
        for (long m = -3; m <= 3; ++m) {
          const Scalar lhs =
              density_action(m, d, x) * density_action(n, d, x + Scalar(m)) -
              density_action(n, d, x) * density_action(m, d, x + Scalar(n));
          REQUIRE(lhs == Scalar(m - n) * density_action(n + m, d, x),
                  "density module axiom violated");
        }
    }
  const std::vector<std::pair<Scalar, Scalar>> abp{
      {Scalar(0), Scalar(0)},  {Scalar(1), Scalar(0)}, {Scalar(2), Scalar(3)},
      {Scalar::frac(1, 2), Scalar(-2)}, {Scalar(-1), Scalar::frac(1, 3)},
      {Scalar(3), Scalar(-3)}};
  for (char kind : {'A', 'B'})
    for (const auto& [a, b] : abp)
      for (long x = -4; x <= 4; ++x)
        for (long n = -3; n <= 3; ++n)
          for (long m = -3; m <= 3; ++m) {
            const Scalar lhs =
                ab_action(kind, a, b, m, x) * ab_action(kind, a, b, n, m + x) -
                ab_action(kind, a, b, n, x) * ab_action(kind, a, b, m, n + x);
            REQUIRE(lhs == Scalar(m - n) * ab_action(kind, a, b, n + m, x),
                    "deformation module axiom violated");
          }

  // 50 randomly rescaled density windows, exact recognition
  std::mt19937_64 rng(97531u);
  const std::vector<Scalar> pool{Scalar::frac(1, 3), Scalar::frac(2, 3),
                                 Scalar::frac(1, 4), Scalar::frac(3, 4),
                                 Scalar::frac(-1, 2), Scalar::frac(3, 2),
                                 Scalar(2),           Scalar(-1)};
  auto rnd_unit = [&]() {
    long num = (long)(rng() % 9) - 4;
    if (num == 0) num = 5;
    const long den = (long)(rng() % 4) + 1;
    return Scalar::frac(num, den);
  };
  for (int trial = 0; trial < 50; ++trial) {
    const Scalar delta = pool[rng() % pool.size()];
    const Scalar fr = Scalar::frac((long)(rng() % 3), 3);  // s in {0, 1/3, 2/3}
    const Scalar x0 = fr + Scalar((long)(rng() % 5) - 2);
    const int len = 7;
    std::vector<Scalar> t(len);
    t[0] = Scalar(1);
    for (int k = 1; k < len; ++k) t[(size_t)k] = rnd_unit();
    ModuleWindow w;
    w.x0 = x0;
    w.len = len;
    for (int n : {-2, -1, 1, 2})
      for (int m = 0; m < len; ++m) {
        if (m + n < 0 || m + n >= len) continue;
        w.b[{n, m}] = density_action(n, delta, x0 + Scalar(m)) * t[(size_t)m] /
                      t[(size_t)(m + n)];
      }
    const auto recs = module_recognize(w);
    REQUIRE(recs.size() == 1, "rescaled window not recognized uniquely");
    REQUIRE(recs[0].is_density, "rescaled window misread as a deformation");
    REQUIRE(recs[0].density.delta == delta,
            "wrong weight (conjugate separation failed)");
    REQUIRE(recs[0].density.s == x0 - Scalar(x0.floor_re()), "wrong coset parameter");
    for (int k = 0; k < len; ++k)
      REQUIRE(recs[0].t[(size_t)k] == t[(size_t)k], "slot scalings not recovered");
  }
  pass(9, "module sweeps and 50/50 window recognitions", tm.sec(), 60.0);
}

void criterion10() {
  Timer tm;
  // window of monomials z^{a0+j} (x) z^{b0+k), j in [-A,A], k in [-B,B]
  const long A = 4, B = 4;
  const Scalar d1 = Scalar::frac(1, 3), d2 = Scalar::frac(1, 2);
  const Scalar a0 = Scalar::frac(2, 3), b0 = Scalar::frac(1, 5);
  const long cols = (2 * A + 1) * (2 * B + 1);
  const long sums = 2 * (A + B) + 1;  // j + k in [-(A+B), A+B]
  auto col = [&](long j, long k) { return (j + A) * (2 * B + 1) + (k + B); };
  auto row = [&](long m) { return m + A + B; };

  ExactMatrix mpi(sums, cols), m1(sums, cols), m2(sums, cols);
  for (long j = -A; j <= A; ++j)
    for (long k = -B; k <= B; ++k) {
      const Scalar a = a0 + Scalar(j), b = b0 + Scalar(k);
      const auto maps = tensor_pairing_maps(d1, d2, a, b);
      mpi.at((int)row(j + k), (int)col(j, k)) = maps.pi.coef;
      m1.at((int)row(j + k), (int)col(j, k)) = maps.b1.coef;
      m2.at((int)row(j + k), (int)col(j, k)) = maps.b2.coef;
    }

  const auto kernel = nullspace(mpi);
  REQUIRE((long)kernel.size() == cols - sums, "plain-product nullspace dimension");

  // beta1 + beta2 vanishes on the kernel
  for (const auto& v : kernel)
    for (long m = -(A + B); m <= A + B; ++m) {
      Scalar acc(0);
      for (long c = 0; c < cols; ++c)
        acc = acc + (m1.at((int)row(m), (int)c) + m2.at((int)row(m), (int)c)) *
                        v[(size_t)c];
      REQUIRE(acc.is_zero(), "derivative pairing sum does not vanish on the kernel");
    }

  // beta1 restricted to the kernel covers every interior target row
  const long interior = 2 * (A + B) - 1;  // m in [-(A+B)+1, (A+B)-1]
  ExactMatrix rest((int)interior, (int)kernel.size());
  for (long m = -(A + B) + 1; m <= A + B - 1; ++m)
    for (size_t kv = 0; kv < kernel.size(); ++kv) {
      Scalar acc(0);
      for (long c = 0; c < cols; ++c)
        acc = acc + m1.at((int)row(m), (int)c) * kernel[kv][(size_t)c];
      rest.at((int)(m + A + B - 1), (int)kv) = acc;
    }
  REQUIRE(rank(rest) == (int)interior,
          "derivative pairing is not surjective onto the interior window");
  pass(10, "kernel pairing identities on a 9x9 window", tm.sec(), 60.0);
}

void criterion11() {
  Timer tm;
  std::vector<ScalarStructure> subjects;
  subjects.push_back(
      wpi({CPair{Scalar(1), Scalar(0)}, CPair{Scalar(0), Scalar::i()}}, Field::Qi));
  AdditiveMap f;
  f.rank = 2;
  f.dim = 1;
  f.gen_images = {{Scalar(2)}, {Scalar(-3)}};
  subjects.push_back(wl(f));
  std::mt19937_64 rng(424242u);
  auto rnd_rat = [&]() {
    const long num = (long)(rng() % 7) - 3;
    const long den = (long)(rng() % 3) + 1;
    return Scalar::frac(num, den);
  };
  int made = 0, attempts = 0;
  while (made < 5) {
    REQUIRE(++attempts < 200, "could not generate 5 admissible instances");
    auto s = wpi({CPair{rnd_rat() + rnd_rat() * Scalar::i(),
                        rnd_rat() + rnd_rat() * Scalar::i()},
                  CPair{rnd_rat() + rnd_rat() * Scalar::i(),
                        rnd_rat() + rnd_rat() * Scalar::i()}},
                 Field::Qi);
    if (!s.param_injective || !s.cond_c) continue;
    subjects.push_back(std::move(s));
    ++made;
  }
  const Box box{2, 3};
  for (const auto& s : subjects) {
    const auto rep = sigma_pi(s, box);
    std::set<Pt, PtLess> sigma(rep.sigma.begin(), rep.sigma.end());
    box.each([&](const Pt& p) {
      if (is_zero(p)) return;
      const bool expect = !s.l(p).is_zero();
      REQUIRE(sigma.count(s.canon_pt(p)) == (expect ? 1u : 0u),
              "sl2-pair locus differs from the nonzero grading locus");
    });
  }
  pass(11, "sl2-pair locus equals the grading support, 7 structures", tm.sec(), 60.0);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::cout << "acceptance: 11/11 criteria passed\n";
  return 0;
}
