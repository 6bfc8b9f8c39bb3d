#include "glat/jordan.hpp"

#include <memory>
#include <sstream>

namespace glat {

GradedJordan group_jordan(int rank, const std::vector<Pt>& lattice_gens) {
  GradedJordan j;
  j.rank = rank;
  j.moduli.assign(rank, 0);
  j.name = "group line algebra";
  auto hnf = hnf_basis(lattice_gens, rank);
  j.supp = [hnf](const Pt& q) { return in_lattice(hnf, q); };
  auto supp = j.supp;
  j.p = [supp](const Pt& a, const Pt& b) {
    return supp(a) && supp(b) && supp(a + b) ? Scalar(1) : Scalar(0);
  };
  return j;
}

std::map<Pt, Scalar, PtLess> inner_derivation(const GradedJordan& j, const Pt& a,
                                              const Pt& b, const Box& box) {
  std::map<Pt, Scalar, PtLess> f;
  box.each([&](const Pt& g) {
    if (!j.in_supp(g)) return;
    Scalar v = j.pp(b, g) * j.pp(a, b + g) - j.pp(a, g) * j.pp(b, a + g);
    if (!v.is_zero()) f[j.canon_pt(g)] = v;
  });
  return f;
}

std::vector<JordanViolation> check_jordan(const GradedJordan& j, const Box& box) {
  std::vector<JordanViolation> out;
  std::vector<Pt> pts;
  box.each([&](const Pt& q) {
    if (j.in_supp(q)) pts.push_back(q);
  });
  Pt zero = pt_zero(j.rank);
  if (!j.in_supp(zero)) out.push_back({"unit degree missing", zero, zero, {}});

  auto D = [&](const Pt& a, const Pt& b, const Pt& g) {
    return j.pp(b, g) * j.pp(a, b + g) - j.pp(a, g) * j.pp(b, a + g);
  };

  for (const auto& a : pts) {
    if (j.in_supp(zero) && !(j.pp(zero, a) == Scalar(1)))
      out.push_back({"unit row", zero, a, {}});
    for (const auto& b : pts) {
      if (!(j.pp(a, b) == j.pp(b, a))) out.push_back({"commutativity", a, b, {}});

      // (a^2 b) a = a^2 (b a)
      Scalar paa = j.pp(a, a);
      Pt a2 = a + a;
      Scalar lhs = paa * j.pp(a2, b) * j.pp(a2 + b, a);
      Scalar rhs = paa * j.pp(b, a) * j.pp(a2, b + a);
      if (!(lhs == rhs)) out.push_back({"jordan identity", a, b, {}});

      // scalar companion: x2 y2 + 2 (xy)(xy) = y(x2 y) + 2 x(y(yx))
      Pt b2 = b + b;
      Scalar l2 = paa * j.pp(b, b) * j.pp(a2, b2) +
                  Scalar(2) * j.pp(a, b) * j.pp(a, b) * j.pp(a + b, a + b);
      Scalar r2 = paa * j.pp(a2, b) * j.pp(b, a2 + b) +
                  Scalar(2) * j.pp(b, a) * j.pp(b, a + b) * j.pp(a, a + b2);
      if (!(l2 == r2)) out.push_back({"degree-4 scalar identity", a, b, {}});

      // operator identity: p(a,a) D(2a, b) = 2 p(a,b) D(a, a+b), evaluated on
      // the box support
      for (const auto& g : pts) {
        Scalar ol = paa * D(a2, b, g);
        Scalar orr = Scalar(2) * j.pp(a, b) * D(a, a + b, g);
        if (!(ol == orr)) {
          out.push_back({"operator identity", a, b, g});
          break;
        }
      }
    }
  }
  return out;
}

std::optional<Scalar> strongly_invertible(const GradedJordan& j, const Pt& a,
                                          const Box& box) {
  if (!j.in_supp(a) || !j.in_supp(-a)) return std::nullopt;
  Scalar pa = j.pp(a, -a);
  if (pa.is_zero()) return std::nullopt;
  // multiplication operators of a and its inverse candidate must commute
  bool commute = true;
  box.each([&](const Pt& g) {
    if (!commute || !j.in_supp(g)) return;
    Scalar d = j.pp(-a, g) * j.pp(a, g - a) - j.pp(a, g) * j.pp(-a, g + a);
    if (!d.is_zero()) commute = false;
  });
  if (!commute) return std::nullopt;
  return Scalar(1) / pa;
}

// ---- the graded Lie hull -------------------------------------------------------

namespace {

enum class Kind { None, E, H, F, D };

struct InnLine {
  Pt lam, mu;                 // defining pair
  std::vector<Scalar> values;  // on the shared evaluation list
};

struct KktCtx {
  GradedJordan j;
  Pt alpha;
  long window;
  std::vector<Pt> evals;  // box support of J, canonical, lex
  std::vector<Pt> wpts;   // box points of J-degrees (pair search)
  std::map<Pt, Kind, PtLess> kind_cache;
  std::map<Pt, std::optional<InnLine>, PtLess> inn_cache;

  Scalar derivation_value(const Pt& a, const Pt& b, const Pt& g) const {
    return j.pp(b, g) * j.pp(a, b + g) - j.pp(a, g) * j.pp(b, a + g);
  }

  std::vector<Scalar> derivation_profile(const Pt& a, const Pt& b) const {
    std::vector<Scalar> v;
    v.reserve(evals.size());
    for (const auto& g : evals) v.push_back(derivation_value(a, b, g));
    return v;
  }

  static bool profile_zero(const std::vector<Scalar>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  const std::optional<InnLine>& inn_line(const Pt& nu_raw) {
    Pt nu = j.canon_pt(nu_raw);
    auto it = inn_cache.find(nu);
    if (it != inn_cache.end()) return it->second;
    std::optional<InnLine> found;
    for (const auto& lam : wpts) {
      if (!j.in_supp(lam)) continue;
      Pt mu = nu - lam;
      if (!j.in_supp(mu)) continue;
      auto prof = derivation_profile(lam, mu);
      if (profile_zero(prof)) continue;
      found = InnLine{j.canon_pt(lam), j.canon_pt(mu), std::move(prof)};
      break;
    }
    return inn_cache.emplace(nu, std::move(found)).first->second;
  }

  // express the derivation of (a, b) against the pinned line at a+b; the
  // graded component is required to be one-dimensional
  Scalar express_inn(const Pt& a, const Pt& b) {
    auto prof = derivation_profile(a, b);
    if (profile_zero(prof)) return Scalar(0);
    const auto& line = inn_line(a + b);
    if (!line) throw Error("kkt: derivation appears outside the pinned line");
    size_t k = 0;
    while (k < prof.size() && line->values[k].is_zero()) {
      if (!prof[k].is_zero())
        throw Error("kkt: inner-derivation component is not one-dimensional");
      ++k;
    }
    if (k == prof.size()) throw Error("kkt: pinned line is degenerate");
    Scalar r = prof[k] / line->values[k];
    for (size_t i = 0; i < prof.size(); ++i)
      if (!(prof[i] == r * line->values[i]))
        throw Error("kkt: inner-derivation component is not one-dimensional");
    return r;
  }

  Kind kind(const Pt& kappa_raw) {
    Pt kappa = j.canon_pt(kappa_raw);
    auto it = kind_cache.find(kappa);
    if (it != kind_cache.end()) return it->second;
    int hits = 0;
    Kind k = Kind::None;
    if (j.in_supp(kappa - alpha)) {
      ++hits;
      k = Kind::E;
    }
    if (j.in_supp(kappa)) {
      ++hits;
      k = Kind::H;
    }
    if (j.in_supp(kappa + alpha)) {
      ++hits;
      k = Kind::F;
    }
    if (inn_line(kappa)) {
      ++hits;
      k = Kind::D;
    }
    if (hits > 1) throw Error("kkt: a degree carries two of the four lines");
    kind_cache[kappa] = k;
    return k;
  }
};

}  // namespace

ScalarStructure kkt(const GradedJordan& j, const Pt& alpha, long window) {
  auto ctx = std::make_shared<KktCtx>();
  ctx->j = j;
  ctx->alpha = j.canon_pt(alpha);
  ctx->window = window;
  Box wbox{j.rank, window};
  wbox.each([&](const Pt& q) {
    ctx->wpts.push_back(q);
    if (j.in_supp(q)) ctx->evals.push_back(j.canon_pt(q));
  });

  ScalarStructure s;
  s.rank = j.rank;
  s.moduli = j.moduli_or_free();
  s.name = "lie hull of " + j.name;
  s.supp = [ctx](const Pt& q) { return ctx->kind(q) != Kind::None; };
  // a named lambda keeps the case analysis readable; antisymmetry is wired in
  // by flipping non-canonical kind orders
  auto bracket = [ctx](const Pt& ka_raw, const Pt& kb_raw, auto&& self) -> Scalar {
    const GradedJordan& j = ctx->j;
    const Pt& alpha = ctx->alpha;
    Pt ka = j.canon_pt(ka_raw), kb = j.canon_pt(kb_raw);
    Kind k1 = ctx->kind(ka), k2 = ctx->kind(kb);
    if (k1 == Kind::None || k2 == Kind::None) return Scalar(0);
    if (int(k1) > int(k2)) return Scalar(0) - self(kb, ka, self);

    Pt tgt = j.canon_pt(ka + kb);
    auto expect = [&](Kind want, const Scalar& v) {
      if (v.is_zero()) return Scalar(0);
      if (ctx->kind(tgt) != want) throw Error("kkt: bracket lands on the wrong line");
      return v;
    };

    if (k1 == Kind::E && k2 == Kind::E) return Scalar(0);
    if (k1 == Kind::F && k2 == Kind::F) return Scalar(0);

    if (k1 == Kind::E && k2 == Kind::H) {
      // [E(mu), H(nu)] = -2 p(nu, mu) E(mu+nu)
      Pt mu = ka - alpha, nu = kb;
      return expect(Kind::E, Scalar(-2) * j.pp(nu, mu));
    }
    if (k1 == Kind::E && k2 == Kind::F) {
      Pt mu = ka - alpha, nu = kb + alpha;
      Scalar h_part = j.pp(mu, nu);
      auto prof = ctx->derivation_profile(j.canon_pt(mu), j.canon_pt(nu));
      bool d_zero = KktCtx::profile_zero(prof);
      if (!h_part.is_zero()) {
        if (!d_zero) throw Error("kkt: mixed h/derivation image");
        return expect(Kind::H, h_part);
      }
      if (d_zero) return Scalar(0);
      return expect(Kind::D, Scalar::frac(1, 2) * ctx->express_inn(j.canon_pt(mu), j.canon_pt(nu)));
    }
    if (k1 == Kind::E && k2 == Kind::D) {
      Pt mu = ka - alpha, nu = kb;
      const auto& line = ctx->inn_line(nu);
      // [E(mu), D(nu)] = -f_nu(mu) E(mu+nu)
      Scalar f = ctx->derivation_value(line->lam, line->mu, mu);
      return expect(Kind::E, Scalar(0) - f);
    }
    if (k1 == Kind::H && k2 == Kind::H) {
      return expect(Kind::D, ctx->express_inn(ka, kb));
    }
    if (k1 == Kind::H && k2 == Kind::F) {
      Pt mu = ka, nu = kb + alpha;
      return expect(Kind::F, Scalar(-2) * j.pp(mu, nu));
    }
    if (k1 == Kind::H && k2 == Kind::D) {
      const auto& line = ctx->inn_line(kb);
      Scalar f = ctx->derivation_value(line->lam, line->mu, ka);
      return expect(Kind::H, Scalar(0) - f);
    }
    if (k1 == Kind::F && k2 == Kind::D) {
      Pt mu = ka + alpha, nu = kb;
      const auto& line = ctx->inn_line(nu);
      Scalar f = ctx->derivation_value(line->lam, line->mu, mu);
      return expect(Kind::F, Scalar(0) - f);
    }
    if (k1 == Kind::D && k2 == Kind::D) {
      const auto& la = ctx->inn_line(ka);
      const auto& lb = ctx->inn_line(kb);
      // commutator profile of the two derivations on the shared list
      std::vector<Scalar> prof;
      prof.reserve(ctx->evals.size());
      bool zero = true;
      for (const auto& g : ctx->evals) {
        Scalar fb = ctx->derivation_value(lb->lam, lb->mu, g);
        Scalar fa_shift = ctx->derivation_value(la->lam, la->mu, ctx->j.canon_pt(kb + g));
        Scalar fa = ctx->derivation_value(la->lam, la->mu, g);
        Scalar fb_shift = ctx->derivation_value(lb->lam, lb->mu, ctx->j.canon_pt(ka + g));
        Scalar v = fb * fa_shift - fa * fb_shift;
        if (!v.is_zero()) zero = false;
        prof.push_back(v);
      }
      if (zero) return Scalar(0);
      const auto& lt = ctx->inn_line(tgt);
      if (!lt) throw Error("kkt: derivation bracket outside the pinned line");
      size_t k = 0;
      while (k < prof.size() && lt->values[k].is_zero()) {
        if (!prof[k].is_zero()) throw Error("kkt: derivation bracket not proportional");
        ++k;
      }
      Scalar r = prof[k] / lt->values[k];
      for (size_t i = 0; i < prof.size(); ++i)
        if (!(prof[i] == r * lt->values[i]))
          throw Error("kkt: derivation bracket not proportional");
      return expect(Kind::D, r);
    }
    throw Error("kkt: unhandled kind pair");
  };
  s.c = [ctx, bracket](const Pt& a, const Pt& b) { return bracket(a, b, bracket); };
  return s;
}

GradedJordan extract_jordan(const ScalarStructure& s, const Pt& alpha_raw, const Box& box) {
  Pt alpha = s.canon_pt(alpha_raw);
  Scalar pair = s.cc(alpha, -alpha);
  Scalar la = s.l(alpha);
  if (pair.is_zero() || la.is_zero())
    throw Error("extract_jordan: the anchor degree is not an sl2 partner");
  Scalar norm = Scalar(1) / (s.cc(-alpha, alpha) * la);

  GradedJordan j;
  j.rank = s.rank;
  j.moduli = s.moduli_or_free();
  j.name = "extracted from " + s.name;
  auto sc = std::make_shared<ScalarStructure>(memoized(s));
  Pt a = alpha;
  Scalar want = la;
  j.supp = [sc, a, want](const Pt& mu) {
    return sc->in_supp(mu + a) && sc->l(mu + a) == want;
  };
  auto supp = j.supp;
  j.p = [sc, a, norm, supp](const Pt& mu, const Pt& nu) -> Scalar {
    if (!supp(mu) || !supp(nu)) return Scalar(0);
    return norm * sc->cc(-a, mu + a) * sc->cc(mu, nu + a);
  };

  // the unit row must come out as 1 on the window
  Pt zero = pt_zero(s.rank);
  if (!j.in_supp(zero)) throw Error("extract_jordan: unit degree missing");
  bool unit_ok = true;
  box.each([&](const Pt& mu) {
    if (j.in_supp(mu) && !(j.pp(zero, mu) == Scalar(1))) unit_ok = false;
  });
  if (!unit_ok) throw Error("extract_jordan: unit row fails on the box");
  return j;
}

}  // namespace glat
