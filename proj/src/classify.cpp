#include "glat/classify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "glat/catalog.hpp"
#include "glat/matrix.hpp"

namespace glat {
namespace {

long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw Error("classify: coordinate out of range");
  return v.get_si();
}

// Integer coordinates of p in a unimodular frame (rows spanning Z^rank).
std::vector<Int> frame_coords(const std::vector<Pt>& frame, const Pt& p) {
  int n = (int)frame.size();
  ExactMatrix A(n, n);
  Vec rhs(n);
  for (int r = 0; r < n; ++r) {
    rhs[r] = Scalar(mpq_class(p[r]));
    for (int c = 0; c < n; ++c) A.at(r, c) = Scalar(mpq_class(frame[c][r]));
  }
  auto sol = solve(A, rhs);
  if (!sol) throw Error("classify: singular frame");
  std::vector<Int> y(n);
  for (int i = 0; i < n; ++i) {
    if (!(*sol)[i].is_integer()) throw Error("classify: non-integral frame coordinate");
    y[i] = (*sol)[i].re().get_num();
  }
  return y;
}

// Shortest primitive box degree with nonzero grading form, by (sup norm, lex).
std::optional<Pt> pick_anchor(const ScalarStructure& s, const Box& box) {
  std::optional<Pt> best;
  long best_norm = 0;
  box.each([&](const Pt& p) {
    if (is_zero(p) || !s.in_supp(p) || s.l(p).is_zero()) return;
    Pt q = make_primitive(p);
    if (s.l(q).is_zero()) return;
    long nrm = 0;
    for (const Int& x : q) nrm = std::max(nrm, std::abs(to_long(x)));
    if (!best || nrm < best_norm || (nrm == best_norm && PtLess{}(q, *best)))
      best = q, best_norm = nrm;
  });
  return best;
}

struct PairPtLess {
  bool operator()(const std::pair<Pt, Pt>& a, const std::pair<Pt, Pt>& b) const {
    PtLess lt;
    if (lt(a.first, b.first)) return true;
    if (lt(b.first, a.first)) return false;
    return lt(a.second, b.second);
  }
};

bool eq(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

}  // namespace

ScalarStructure line_restriction(const ScalarStructure& s, const Pt& alpha) {
  ScalarStructure r;
  r.rank = 1;
  r.field = s.field;
  r.moduli = {0};
  r.name = s.name + "|line";
  r.c = [s, alpha](const Pt& a, const Pt& b) { return s.cc(a[0] * alpha, b[0] * alpha); };
  r.supp = [s, alpha](const Pt& p) { return s.in_supp(p[0] * alpha); };
  return r;
}

const CosetData* DegreeFunction::coset_of(const Pt& tail) const {
  auto it = cosets.find(tail);
  return it == cosets.end() ? nullptr : &it->second;
}

std::optional<DegreeFunction> degree_function(const ScalarStructure& s, const Box& box,
                                              std::string* why) {
  auto fail = [&](const std::string& m) -> std::optional<DegreeFunction> {
    if (why) *why = m;
    return std::nullopt;
  };
  for (long m : s.moduli_or_free())
    if (m != 0) return fail("degree function expects a free grading lattice");
  if (box.radius < 3) return fail("window box too small: need radius >= 3");

  // The grading form must be a linear form on the box.
  std::vector<Scalar> lgen(s.rank);
  for (int i = 0; i < s.rank; ++i) {
    Pt e = pt_zero(s.rank);
    e[i] = 1;
    lgen[i] = s.l(e);
  }
  bool additive = true;
  box.each([&](const Pt& p) {
    Scalar want(0);
    for (int i = 0; i < s.rank; ++i) want += Scalar(mpq_class(p[i])) * lgen[i];
    if (!eq(want, s.l(p))) additive = false;
  });
  if (!additive) return fail("grading form is not additive on the box");

  auto anchor = pick_anchor(s, box);
  if (!anchor) return fail("grading form vanishes on the box");

  DegreeFunction df;
  df.alpha = *anchor;
  df.frame = complete_primitive(df.alpha);
  const Scalar la = s.l(df.alpha);

  // Normalize the anchor line against the Witt bracket.
  long rad_line = std::max<long>(4, box.radius);
  EquivResult line = diagonal_equivalence(line_restriction(s, df.alpha), witt(),
                                          Box{1, rad_line});
  if (!line.ok)
    return fail("anchor line is not equivalent to the Witt bracket: " + line.failure);
  for (const auto& [pt, val] : line.t) {
    if (val.is_zero()) return fail("degenerate line normalization");
    df.g[to_long(pt[0])] = val;
  }

  // Bucket box support into cosets of the line; keep the longest consecutive
  // run per coset.
  std::map<Pt, std::vector<std::pair<long, Pt>>, PtLess> buckets;
  box.each([&](const Pt& p) {
    if (!s.in_supp(p)) return;
    auto y = frame_coords(df.frame, p);
    Pt tail(y.begin() + 1, y.end());
    buckets[tail].push_back({to_long(y[0]), p});
  });

  struct RawCoset {
    std::vector<Pt> run;
    Scalar x0;
    std::vector<Recognition> recs;
    bool saw_ab = false;
  };
  std::map<Pt, RawCoset, PtLess> raw;

  for (auto& [tail, pts] : buckets) {
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // longest consecutive segment in the line coordinate
    size_t bs = 0, bl = 1, cs = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
      if (pts[i].first != pts[i - 1].first + 1) cs = i;
      if (i - cs + 1 > bl) bl = i - cs + 1, bs = cs;
    }
    std::vector<Pt> run;
    for (size_t i = bs; i < bs + bl; ++i) run.push_back(pts[i].second);

    RawCoset rc;
    rc.run = run;
    rc.x0 = s.l(run[0]) / la;
    if (is_zero(tail)) {
      // The line itself: delta = -1 with slot scalings given by the line
      // normalization directly.
      Recognition rec;
      rec.is_density = true;
      rec.density.delta = Scalar(-1);
      rec.t.assign(run.size(), Scalar(1));
      for (size_t i = 0; i < run.size(); ++i) {
        long ni = to_long(frame_coords(df.frame, run[i])[0]);
        rec.t[i] = df.g.at(ni) / df.g.at(to_long(frame_coords(df.frame, run[0])[0]));
      }
      rc.recs = {rec};
      raw.emplace(tail, std::move(rc));
      continue;
    }
    if ((int)run.size() < 6) continue;  // not enough slots to recognize

    ModuleWindow w;
    w.x0 = rc.x0;
    w.len = (int)run.size();
    for (int nn : {-2, -1, 1, 2})
      for (int m = 0; m < w.len; ++m) {
        if (m + nn < 0 || m + nn >= w.len) continue;
        w.b[{nn, m}] = s.cc(Int(nn) * df.alpha, run[m]) / df.g.at(nn);
      }
    for (auto& rec : module_recognize(w))
      if (rec.is_density)
        rc.recs.push_back(rec);
      else
        rc.saw_ab = true;
    if (rc.recs.empty()) {
      std::ostringstream os;
      os << "coset " << pt_str(tail)
         << (rc.saw_ab ? " fits only a deformation family, not a density module"
                       : " window unrecognized");
      return fail(os.str());
    }
    raw.emplace(tail, std::move(rc));
  }

  // Resolve defect-zero ambiguities through the opposite coset, then freeze.
  for (auto& [tail, rc] : raw) {
    int pick = 0;
    bool definite = rc.recs.size() == 1;
    if (!definite) {
      Pt mirror = Int(-1) * tail;
      auto mit = raw.find(mirror);
      if (mit == raw.end() || mit->second.recs.size() != 1)
        return fail("defect-zero ambiguity on coset " + pt_str(tail) +
                    " has no definite mirror");
      Scalar want = Scalar(-2) - mit->second.recs[0].density.delta;
      pick = -1;
      for (int i = 0; i < (int)rc.recs.size(); ++i)
        if (eq(rc.recs[i].density.delta, want)) pick = i;
      if (pick < 0)
        return fail("mirror relation incompatible with window fits on coset " +
                    pt_str(tail));
    }
    CosetData cd;
    cd.tail = tail;
    cd.run = rc.run;
    cd.delta = rc.recs[pick].density.delta;
    cd.definite = definite;
    cd.t = rc.recs[pick].t;
    cd.x0 = rc.x0;
    for (auto& r : rc.recs) cd.delta_candidates.push_back(r.density.delta);
    df.cosets.emplace(tail, std::move(cd));
  }

  // Mirror consistency and the affine law delta(b+c) = delta(b) + delta(c) + 1.
  std::ostringstream notes;
  for (auto& [tail, cd] : df.cosets) {
    auto* op = df.coset_of(Int(-1) * tail);
    if (op && !eq(cd.delta + op->delta, Scalar(-2))) {
      df.mirror_ok = false;
      notes << "mirror law fails at " << pt_str(tail) << "; ";
    }
  }
  for (auto& [t1, c1] : df.cosets)
    for (auto& [t2, c2] : df.cosets) {
      auto* c3 = df.coset_of(t1 + t2);
      if (c3 && !eq(c3->delta, c1.delta + c2.delta + Scalar(1))) {
        df.affine_ok = false;
        notes << "affine law fails at " << pt_str(t1) << "+" << pt_str(t2) << "; ";
      }
    }
  df.detail = notes.str();
  return df;
}

EmbeddingReport recover_embedding(const ScalarStructure& s, const Box& box,
                                  const DegreeFunction& df) {
  EmbeddingReport rep;
  const int n = s.rank;
  const Scalar la = s.l(df.alpha);  // reports use the frame with l(alpha) = 1
  std::ostringstream notes;

  // Parameter images of the generators from their coset degrees.
  rep.pi_images.resize(n);
  for (int i = 0; i < n; ++i) {
    Pt e = pt_zero(n);
    e[i] = 1;
    auto y = frame_coords(df.frame, e);
    const CosetData* cd = df.coset_of(Pt(y.begin() + 1, y.end()));
    if (!cd) {
      rep.detail = "no window data for the coset of generator " + pt_str(e);
      return rep;
    }
    rep.pi_images[i] = {s.l(e) / la - cd->delta - Scalar(1), Scalar(-1) - cd->delta};
  }

  // The recovered map must predict every observed coset degree.
  rep.additive_ok = true;
  box.each([&](const Pt& p) {
    auto y = frame_coords(df.frame, p);
    const CosetData* cd = df.coset_of(Pt(y.begin() + 1, y.end()));
    if (!cd) return;
    Scalar pred(-1);
    for (int i = 0; i < n; ++i) pred -= Scalar(mpq_class(p[i])) * rep.pi_images[i][1];
    if (!eq(pred, cd->delta)) rep.additive_ok = false;
  });
  if (!rep.additive_ok) notes << "coset degrees are not additive in the parameters; ";

  // Kernel of the parameter map over the rationals, reported as primitive
  // integer vectors.
  ExactMatrix M(4, n);
  for (int i = 0; i < n; ++i) {
    M.at(0, i) = Scalar(rep.pi_images[i][0].re());
    M.at(1, i) = Scalar(rep.pi_images[i][0].im());
    M.at(2, i) = Scalar(rep.pi_images[i][1].re());
    M.at(3, i) = Scalar(rep.pi_images[i][1].im());
  }
  auto null = nullspace(M);
  rep.injective = null.empty();
  for (auto& v : null) {
    mpz_class den(1);
    for (auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.re().get_den().get_mpz_t());
    Pt k(n);
    for (int i = 0; i < n; ++i) {
      mpq_class q = v[i].re() * mpq_class(den);
      k[i] = q.get_num();
    }
    rep.kernel_basis.push_back(make_primitive(k));
  }
  if (!rep.injective) {
    notes << "parameter map has a kernel; ";
    rep.detail = notes.str();
    return rep;
  }

  // Mismatch constants between cosets: c(lam,mu) phi(lam+mu) / (phi(lam) phi(mu))
  // must be a fixed multiple of delta(mu-coset) l(lam) - delta(lam-coset) l(mu),
  // and the constants must satisfy the cocycle identity.
  std::map<Pt, std::pair<const CosetData*, int>, PtLess> where;
  for (auto& [tail, cd] : df.cosets)
    for (int i = 0; i < (int)cd.run.size(); ++i) where[cd.run[i]] = {&cd, i};

  std::map<std::pair<Pt, Pt>, Scalar, PairPtLess> K;
  bool defined_ok = true;
  for (auto& [lam, wl] : where)
    for (auto& [mu, wm] : where) {
      auto it = where.find(lam + mu);
      if (it == where.end()) continue;
      const CosetData* cb = wl.first;
      const CosetData* cg = wm.first;
      Scalar w = cg->delta * s.l(lam) - cb->delta * s.l(mu);
      Scalar cs = s.cc(lam, mu);
      if (w.is_zero()) {
        if (!cs.is_zero()) {
          defined_ok = false;
          notes << "unexpected bracket at " << pt_str(lam) << "," << pt_str(mu) << "; ";
        }
        continue;
      }
      if (cs.is_zero()) {
        defined_ok = false;
        notes << "vanishing bracket at " << pt_str(lam) << "," << pt_str(mu) << "; ";
        continue;
      }
      Scalar k = cs * it->second.first->t[it->second.second] /
                 (cb->t[wl.second] * cg->t[wm.second] * w);
      auto [kit, inserted] = K.emplace(std::make_pair(cb->tail, cg->tail), k);
      if (!inserted && !eq(kit->second, k)) {
        defined_ok = false;
        notes << "mismatch constant not constant on cosets " << pt_str(cb->tail) << ","
              << pt_str(cg->tail) << "; ";
      }
    }
  bool ident_ok = true;
  auto getk = [&](const Pt& x, const Pt& y) -> const Scalar* {
    auto it = K.find({x, y});
    return it == K.end() ? nullptr : &it->second;
  };
  for (auto& [tb, cb] : df.cosets)
    for (auto& [tg, cg] : df.cosets)
      for (auto& [te, ce] : df.cosets) {
        (void)cb, (void)cg, (void)ce;
        auto* k1 = getk(tb, tg);
        auto* k2 = getk(tb + tg, te);
        auto* k3 = getk(tb, tg + te);
        auto* k4 = getk(tg, te);
        if (k1 && k2 && k3 && k4 && !eq(*k1 * *k2, *k3 * *k4)) {
          ident_ok = false;
          notes << "cocycle identity fails at " << pt_str(tb) << "," << pt_str(tg) << ","
                << pt_str(te) << "; ";
        }
      }
  rep.cocycle_ok = defined_ok && ident_ok;

  rep.certificate = diagonal_equivalence(s, wpi(rep.pi_images, s.field), box);
  rep.detail = notes.str();
  return rep;
}

Classification classify(const ScalarStructure& s, const Box& box) {
  Classification out;
  for (long m : s.moduli_or_free())
    if (m != 0) {
      out.detail = "classification expects a free grading lattice";
      return out;
    }
  out.l_analysis = analyze_l(s, box);

  if (out.l_analysis.kind == LAnalysis::Additive) {
    std::string why;
    auto df = degree_function(s, box, &why);
    if (!df) {
      out.detail = why;
      return out;
    }
    out.embedding = recover_embedding(s, box, *df);
    if (!out.embedding.injective && !out.embedding.kernel_basis.empty()) {
      out.tag = Classification::Degenerate;
      out.detail = "support lattice is degenerate: the parameter map has a kernel";
      return out;
    }
    if (out.embedding.additive_ok && out.embedding.certificate.ok) {
      out.tag = Classification::AdditiveCurrent;
      out.model = wpi(out.embedding.pi_images, s.field).name;
      out.certificate = out.embedding.certificate;
      if (!df->mirror_ok || !df->affine_ok || !out.embedding.cocycle_ok)
        out.detail = "certified, with notes: " + df->detail + out.embedding.detail;
      return out;
    }
    out.detail = "window data did not certify a symbol-current model: " +
                 out.embedding.detail + out.embedding.certificate.failure;
    return out;
  }

  if (out.l_analysis.kind == LAnalysis::Bounded) {
    long k;
    ScalarStructure target;
    if (out.l_analysis.bound == 1)
      k = 3, target = sl2_z3();
    else if (out.l_analysis.bound == 2)
      k = 8, target = sl3_z8();
    else {
      out.detail = "bounded grading form with ladder height outside {1, 2}";
      return out;
    }
    // Enumerate surjections onto Z/k by generator images, cheapest filter first.
    auto lmatch = [&](const ScalarStructure& model) {
      std::optional<Scalar> ratio;
      bool ok = true;
      box.each([&](const Pt& p) {
        if (!ok) return;
        Scalar a = s.l(p), b = model.l(p);
        if (a.is_zero() != b.is_zero()) {
          ok = false;
          return;
        }
        if (a.is_zero()) return;
        Scalar r = b / a;
        if (!ratio)
          ratio = r;
        else if (!eq(*ratio, r))
          ok = false;
      });
      return ok;
    };
    std::vector<long> phi(s.rank, 0);
    while (true) {
      long g = k;
      for (long x : phi) g = std::gcd(g, x);
      if (g == 1) {
        ScalarStructure model = pullback(phi, k, target);
        if (lmatch(model)) {
          EquivResult cert = diagonal_equivalence(s, model, box);
          if (cert.ok) {
            out.tag = Classification::IntegrableLoop;
            out.period = k;
            out.phi = phi;
            out.model = model.name;
            out.certificate = cert;
            return out;
          }
        }
      }
      int pos = s.rank - 1;
      while (pos >= 0 && phi[pos] == k - 1) phi[pos--] = 0;
      if (pos < 0) break;
      ++phi[pos];
    }
    out.detail = "no surjection onto Z/" + std::to_string(k) + " certified on the box";
    return out;
  }

  out.detail = "grading form is neither additive nor bounded: " + out.l_analysis.detail;
  return out;
}

SectionType rank1_section_type(const ScalarStructure& s, const Box& box) {
  if (s.rank != 1) throw Error("rank1_section_type: rank-1 structures only");
  if (box.radius < 3) return SectionType::Unknown;
  const long R = box.radius;
  auto pred_full = [](long n, long m) { return n == m; };
  auto pred_plus = [](long n, long m) {
    bool vn = n <= -2, vm = m <= -2;
    if (vn && vm) return true;
    if (!vn && !vm) return n == m;
    return n + m >= -1;
  };
  auto pred_minus = [](long n, long m) {
    bool vn = n >= 2, vm = m >= 2;
    if (vn && vm) return true;
    if (!vn && !vm) return n == m;
    return n + m <= 1;
  };
  auto pred_pair = [](long n, long m) {
    bool vn = std::abs(n) >= 2, vm = std::abs(m) >= 2;
    if (vn && vm) return true;
    if (!vn && !vm) return n == m;
    return std::abs(n + m) <= 1;
  };
  bool full = true, plus = true, minus = true, pair = true;
  for (long n = -R; n <= R; ++n)
    for (long m = -R; m <= R; ++m) {
      bool z = s.cc(Pt{Int(n)}, Pt{Int(m)}).is_zero();
      full &= z == pred_full(n, m);
      plus &= z == pred_plus(n, m);
      minus &= z == pred_minus(n, m);
      pair &= z == pred_pair(n, m);
    }
  if (full) return SectionType::FullLine;
  if (plus) return SectionType::HalfPlus;
  if (minus) return SectionType::HalfMinus;
  if (pair) return SectionType::PairOnly;
  return SectionType::Unknown;
}

std::string section_type_name(SectionType t) {
  switch (t) {
    case SectionType::FullLine: return "full-line";
    case SectionType::HalfPlus: return "half-plus";
    case SectionType::HalfMinus: return "half-minus";
    case SectionType::PairOnly: return "pair-only";
    default: return "unknown";
  }
}

}  // namespace glat
