#include "glat/symbols.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace glat {

CPair rho() { return CPair{Scalar(1), Scalar(1)}; }

CPair cpair_add(const CPair& a, const CPair& b) {
  return CPair{a[0] + b[0], a[1] + b[1]};
}

Scalar poisson_coeff(const CPair& a, const CPair& b) {
  return symplectic_form(cpair_add(a, rho()), cpair_add(b, rho()));
}

CPair commutative_product(const CPair& a, const CPair& b) {
  return cpair_add(cpair_add(a, b), rho());
}

// ---- Pdo -------------------------------------------------------------------

Pdo Pdo::mono(const Scalar& coef, const Scalar& zx, const Scalar& dx) {
  Pdo p;
  p.terms.push_back({coef, zx, dx});
  p.normalize();
  return p;
}

static bool term_before(const PdoTerm& a, const PdoTerm& b) {
  int c = a.dx.cmp(b.dx);
  if (c != 0) return c > 0;
  return a.zx.cmp(b.zx) > 0;
}

void Pdo::normalize() {
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<PdoTerm> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().dx == t.dx && out.back().zx == t.zx)
      out.back().coef = out.back().coef + t.coef;
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const PdoTerm& t) { return t.coef.is_zero(); }),
            out.end());
  terms = std::move(out);
}

std::string Pdo::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << t.coef.str() << " * z^" << t.zx.str() << " d^" << t.dx.str();
  }
  return os.str();
}

Pdo pdo_add(const Pdo& a, const Pdo& b) {
  Pdo r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  r.normalize();
  return r;
}

Pdo pdo_scale(const Scalar& f, const Pdo& a) {
  Pdo r = a;
  for (auto& t : r.terms) t.coef = t.coef * f;
  r.normalize();
  return r;
}

Scalar factorial(long k) {
  Scalar r(1);
  for (long i = 2; i <= k; ++i) r = r * Scalar(i);
  return r;
}

Scalar binom(const Scalar& x, long k) {
  if (k < 0) return Scalar(0);
  Scalar num(1);
  for (long i = 0; i < k; ++i) num = num * (x - Scalar(i));
  return num / factorial(k);
}

Pdo opd_product(const Pdo& a, const Pdo& b, long cut) {
  Pdo r;
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) {
      // z^s d^x . z^t d^y = sum_k k! C(x,k) C(t,k) z^{s+t-k} d^{x+y-k}
      for (long k = 0; k <= cut; ++k) {
        Scalar c = ta.coef * tb.coef * factorial(k) * binom(ta.dx, k) * binom(tb.zx, k);
        if (c.is_zero()) continue;
        r.terms.push_back({c, ta.zx + tb.zx - Scalar(k), ta.dx + tb.dx - Scalar(k)});
      }
    }
  r.normalize();
  return r;
}

Pdo opd_commutator(const Pdo& a, const Pdo& b, long cut) {
  return pdo_add(opd_product(a, b, cut), pdo_scale(Scalar(-1), opd_product(b, a, cut)));
}

// ---- density modules --------------------------------------------------------

Scalar density_action(long n, const Scalar& delta, const Scalar& x) {
  return x + Scalar(n) * delta;
}

PdoTerm density_bilinear(char kind, const Scalar& d1, const Scalar& d2, const Scalar& a,
                         const Scalar& b) {
  if (kind == 'P') return {Scalar(1), a + b, Scalar(0) - d1 - d2};
  if (kind == 'B') return {d2 * a - d1 * b, a + b - Scalar(1), Scalar(-1) - d1 - d2};
  throw Error("density_bilinear: kind must be 'P' or 'B'");
}

PairingMaps tensor_pairing_maps(const Scalar& d1, const Scalar& d2, const Scalar& a,
                                const Scalar& b) {
  PairingMaps m;
  m.pi = {Scalar(1), a + b, Scalar(0) - d1 - d2};
  m.b1 = {b, a + b - Scalar(1), Scalar(-1) - d1 - d2};  // f g'
  m.b2 = {a, a + b - Scalar(1), Scalar(-1) - d1 - d2};  // f' g
  return m;
}

bool bilinear_degree_admissible(const Scalar& d1, const Scalar& d2, const Scalar& gamma,
                                std::string* label) {
  Scalar defect = gamma - d1 - d2;
  if (!defect.is_integer()) return false;
  mpz_class d = defect.re().get_num();
  auto set = [&](const char* s) {
    if (label) *label = s;
    return true;
  };
  const Scalar one(1), zero(0);
  if (d == -2) {
    if (d1 == one && d2 == one) return set("d=-2 transvectant");
    return false;
  }
  if (d == -1) {
    if (d1 == one) return set("d=-1 left current");
    if (d2 == one) return set("d=-1 right current");
    if (d1 + d2 == one) return set("d=-1 complementary product");
    return false;
  }
  if (d == 0) return set("d=0 product");
  if (d == 1) return set("d=1 bracket");
  if (d == 2) {
    if (d1 == zero) return set("d=2 left function");
    if (d2 == zero) return set("d=2 right function");
    if (d1 + d2 == Scalar(-1)) return set("d=2 complementary bracket");
    return false;
  }
  if (d == 3) {
    Scalar m23 = Scalar::frac(-2, 3);
    if (d1 == m23 && d2 == m23) return set("d=3 exceptional (-2/3,-2/3)");
    if (d1 == zero && d2 == zero) return set("d=3 (0,0)");
    if (d1 == zero && d2 == Scalar(-2)) return set("d=3 (0,-2)");
    if (d1 == Scalar(-2) && d2 == zero) return set("d=3 (-2,0)");
    return false;
  }
  return false;
}

// ---- log-extension module ----------------------------------------------------

bool LogElem::is_zero() const {
  if (!logz.is_zero() || !logd.is_zero()) return false;
  for (const auto& [n, c] : e)
    if (!c.is_zero()) return false;
  return true;
}

LogElem log_witt_action(long n, const LogElem& v) {
  LogElem r;
  auto add_e = [&](long m, const Scalar& c) {
    if (m == 0 || c.is_zero()) return;
    auto it = r.e.find(m);
    if (it == r.e.end())
      r.e[m] = c;
    else
      it->second = it->second + c;
  };
  for (const auto& [m, c] : v.e)
    if (n + m != 0) add_e(n + m, Scalar(m) * c);
  add_e(n, v.logz);
  add_e(n, Scalar(-(n + 1)) * v.logd);
  for (auto it = r.e.begin(); it != r.e.end();)
    it = it->second.is_zero() ? r.e.erase(it) : std::next(it);
  return r;
}

std::vector<std::pair<Scalar, Scalar>> log_density_action(const LogElem& v,
                                                          const Scalar& delta,
                                                          const Scalar& x) {
  std::map<std::string, std::pair<Scalar, Scalar>> acc;  // canonical index -> (idx, coef)
  auto add = [&](const Scalar& idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = idx.str();
    auto it = acc.find(key);
    if (it == acc.end())
      acc[key] = {idx, c};
    else
      it->second.second = it->second.second + c;
  };
  for (const auto& [n, c] : v.e) add(x + Scalar(n), Scalar(n) * delta * c);
  add(x, delta * v.logz);
  add(x, (x - delta) * v.logd);
  std::vector<std::pair<Scalar, Scalar>> out;
  for (auto& [k, p] : acc)
    if (!p.second.is_zero()) out.push_back(p);
  return out;
}

// ---- deformation family -------------------------------------------------------

Scalar ab_action(char kind, const Scalar& a, const Scalar& b, long m, long n) {
  if (kind == 'A') {
    if (n != 0) return Scalar(m + n);
    return a * Scalar(m) * Scalar(m) + b * Scalar(m);
  }
  if (kind == 'B') {
    if (m + n != 0) return Scalar(n);
    return a * Scalar(m) * Scalar(m) + b * Scalar(m);
  }
  throw Error("ab_action: kind must be 'A' or 'B'");
}

// ---- recognition ---------------------------------------------------------------

namespace {

// Try to rescale slots so that every observed entry matches the model
// coefficient `model(n, m)`; entries at (n, m) with `special(n, m)` true are
// excluded from both the zero-pattern test and the propagation.  Returns slot
// scalings (normalized to t[0] = 1 when slot 0 is reachable) or nothing on
// mismatch.  `allow_unknown_slot` names a slot that may stay disconnected
// (its t entry is left at 0 for the caller to pin); any other disconnected
// slot is a failure.
std::optional<std::vector<Scalar>> fit_window(
    const ModuleWindow& w, const std::function<Scalar(int, int)>& model,
    const std::function<bool(int, int)>& special, int allow_unknown_slot = -1) {
  std::vector<Scalar> t(w.len, Scalar(0));
  std::vector<bool> known(w.len, false);

  for (const auto& [nm, val] : w.b) {
    auto [n, m] = nm;
    if (special(n, m)) continue;
    Scalar a = model(n, m);
    if (val.is_zero() != a.is_zero()) return std::nullopt;
  }

  // propagate scalings over nonzero observed edges, t[anchor] = 1 where the
  // anchor is the first slot touched by a usable edge (slot 0 in practice)
  int anchor = -1;
  for (int m = 0; m < w.len && anchor < 0; ++m)
    for (int n : {-2, -1, 1, 2}) {
      int mm = m + n;
      if (mm < 0 || mm >= w.len) continue;
      auto it = w.b.find({n, m});
      if (it == w.b.end() || special(n, m) || it->second.is_zero()) continue;
      anchor = m;
      break;
    }
  if (anchor < 0) return std::nullopt;
  t[anchor] = Scalar(1);
  known[anchor] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [nm, val] : w.b) {
      auto [n, m] = nm;
      int mm = m + n;
      if (special(n, m) || val.is_zero()) continue;
      if (mm < 0 || mm >= w.len || m < 0 || m >= w.len) continue;
      Scalar a = model(n, m);
      // relation: val * t[m+n] = a * t[m]
      if (known[m] && !known[mm]) {
        t[mm] = a * t[m] / val;
        known[mm] = true;
        grew = true;
      } else if (known[mm] && !known[m]) {
        t[m] = val * t[mm] / a;
        known[m] = true;
        grew = true;
      }
    }
  }
  for (int m = 0; m < w.len; ++m)
    if (!known[m] && m != allow_unknown_slot)
      return std::nullopt;  // window not connected: cannot normalize
  // verify every non-special entry
  for (const auto& [nm, val] : w.b) {
    auto [n, m] = nm;
    int mm = m + n;
    if (special(n, m) || mm < 0 || mm >= w.len) continue;
    if (!(val * t[mm] == model(n, m) * t[m])) return std::nullopt;
  }
  // renormalize so t[0] = 1 (slot 0 may be the allowed disconnected slot)
  Scalar t0 = t[0];
  if (!t0.is_zero())
    for (auto& x : t) x = x / t0;
  return t;
}

std::function<bool(int, int)> no_special() {
  return [](int, int) { return false; };
}

}  // namespace

std::vector<Recognition> module_recognize(const ModuleWindow& w) {
  std::vector<Recognition> out;
  if (w.len < 6) return out;

  auto xm = [&](int m) { return w.x0 + Scalar(m); };
  auto density_model = [&](const Scalar& delta) {
    return [&w, delta](int n, int m) {
      return (w.x0 + Scalar(m)) + Scalar(n) * delta;
    };
  };

  // -- invariant scan: P section (q) and triangle section (T) -----------------
  std::optional<Scalar> q;
  bool q_consistent = true;
  for (int m = 0; m + 1 < w.len; ++m) {
    auto i1 = w.b.find({1, m});
    auto i2 = w.b.find({-1, m + 1});
    if (i1 == w.b.end() || i2 == w.b.end()) continue;
    Scalar x = xm(m);
    Scalar qm = i1->second * i2->second - x * x - x;
    if (!q)
      q = qm;
    else if (!(*q == qm))
      q_consistent = false;
  }

  std::vector<Scalar> deltas;
  if (q && q_consistent) {
    if (q->is_zero()) {
      deltas.push_back(Scalar(0));
      deltas.push_back(Scalar(1));
    } else {
      // triangle invariant: b1(m) b1(m+1) b-2(m+2) = x^3+3x^2+(2+3q)x+2q(1+delta)
      std::optional<Scalar> delta;
      bool ok = true;
      for (int m = 0; m + 2 < w.len; ++m) {
        auto a1 = w.b.find({1, m});
        auto a2 = w.b.find({1, m + 1});
        auto a3 = w.b.find({-2, m + 2});
        if (a1 == w.b.end() || a2 == w.b.end() || a3 == w.b.end()) continue;
        Scalar x = xm(m);
        Scalar T = a1->second * a2->second * a3->second;
        Scalar rhs = T - x * x * x - Scalar(3) * x * x - (Scalar(2) + Scalar(3) * *q) * x;
        Scalar dm = rhs / (Scalar(2) * *q) - Scalar(1);
        if (!delta)
          delta = dm;
        else if (!(*delta == dm))
          ok = false;
      }
      if (ok && delta && *delta * (Scalar(1) - *delta) == *q) deltas.push_back(*delta);
    }
  }

  for (const auto& d : deltas) {
    if (auto t = fit_window(w, density_model(d), no_special())) {
      Recognition r;
      r.is_density = true;
      r.density.delta = d;
      r.density.s = w.x0 - Scalar(w.x0.floor_re());
      r.t = *t;
      out.push_back(r);
    }
  }
  if (!out.empty()) return out;

  // -- deformation branch: requires integral indices and 0 in the window ------
  if (!w.x0.is_integer()) return out;
  int m0 = -1;
  for (int m = 0; m < w.len; ++m)
    if (xm(m).is_zero()) m0 = m;
  if (m0 < 0) return out;

  for (char kind : {'A', 'B'}) {
    // kind A: away from the special slot the window looks like delta = 1
    // (coefficient x + n, source-indexed); the special slot is the source 0.
    // kind B: delta = 0 pattern (coefficient x); the special slot is target 0.
    auto model = kind == 'A' ? density_model(Scalar(1)) : density_model(Scalar(0));
    auto special = [&](int n, int m) { return kind == 'A' ? m == m0 : m + n == m0; };
    auto t = fit_window(w, model, special, m0);
    if (!t) continue;
    // the special slot is disconnected from the propagation; pin it to 1
    if ((*t)[m0].is_zero()) (*t)[m0] = Scalar(1);
    // solve a, b from the n = +-1 special rows, then verify n = +-2
    auto special_val = [&](int n) -> std::optional<Scalar> {
      int src = kind == 'A' ? m0 : m0 - n;
      int dst = src + n;
      if (src < 0 || src >= w.len || dst < 0 || dst >= w.len) return std::nullopt;
      auto it = w.b.find({n, src});
      if (it == w.b.end()) return std::nullopt;
      // observed * t[dst] = (a n^2 + b n) * t[src]
      return it->second * (*t)[dst] / (*t)[src];
    };
    auto p1 = special_val(1), m1 = special_val(-1);
    if (!p1 || !m1) continue;
    Scalar a = (*p1 + *m1) / Scalar(2);
    Scalar b = (*p1 - *m1) / Scalar(2);
    bool ok = true;
    for (int n : {-2, 2}) {
      auto v = special_val(n);
      if (v && !(*v == a * Scalar(n) * Scalar(n) + b * Scalar(n))) ok = false;
    }
    if (!ok) continue;
    Recognition r;
    r.is_density = false;
    r.ab.kind = kind;
    r.ab.a = a;
    r.ab.b = b;
    r.t = *t;
    out.push_back(r);
  }
  return out;
}

}  // namespace glat
