#include "glat/catalog.hpp"

#include <sstream>

#include "glat/symbols.hpp"

namespace glat {

namespace {

bool all_supp(const Pt&) { return true; }

using IMat = std::vector<std::vector<long>>;

IMat munit(int n, int i, int j) {
  IMat m(n, std::vector<long>(n, 0));
  m[i][j] = 1;
  return m;
}
IMat madd(const IMat& a, const IMat& b, long sb) {
  IMat r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r.size(); ++j) r[i][j] += sb * b[i][j];
  return r;
}
IMat mcom(const IMat& a, const IMat& b) {
  int n = int(a.size());
  IMat r(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long v = 0;
      for (int k = 0; k < n; ++k) v += a[i][k] * b[k][j] - b[i][k] * a[k][j];
      r[i][j] = v;
    }
  return r;
}
bool mzero(const IMat& a) {
  for (const auto& row : a)
    for (long v : row)
      if (v) return false;
  return true;
}
// m = r * b with r rational; throws if m is outside the line spanned by b
Scalar mratio(const IMat& m, const IMat& b) {
  if (mzero(m)) return Scalar(0);
  int n = int(m.size());
  int pi = -1, pj = -1;
  for (int i = 0; i < n && pi < 0; ++i)
    for (int j = 0; j < n; ++j)
      if (b[i][j]) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) throw Error("catalog: bracket hits a zero basis line");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (long(m[i][j]) * b[pi][pj] != long(m[pi][pj]) * b[i][j])
        throw Error("catalog: bracket leaves the graded line");
  return Scalar::frac(m[pi][pj], b[pi][pj]);
}

long floordiv(long a, long b) {
  long q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

ScalarStructure witt() {
  ScalarStructure s;
  s.rank = 1;
  s.name = "witt";
  s.moduli = {0};
  s.c = [](const Pt& a, const Pt& b) { return Scalar(mpq_class(b[0] - a[0])); };
  s.supp = all_supp;
  return s;
}

ScalarStructure wl(const AdditiveMap& l) {
  if (l.dim != 1) throw Error("wl: grading form must have dim 1");
  ScalarStructure s;
  s.rank = l.rank;
  s.name = "wl";
  s.moduli.assign(l.rank, 0);
  s.c = [l](const Pt& a, const Pt& b) { return l.apply1(b) - l.apply1(a); };
  s.supp = all_supp;
  return s;
}

ScalarStructure wpi(const std::vector<CPair>& gen_images, Field field) {
  ScalarStructure s;
  s.rank = int(gen_images.size());
  s.field = field;
  s.name = "wpi";
  s.moduli.assign(s.rank, 0);
  auto apply = [gen_images](const Pt& p) {
    CPair out{Scalar(0), Scalar(0)};
    for (size_t i = 0; i < gen_images.size(); ++i) {
      out[0] = out[0] + Scalar(p[i]) * gen_images[i][0];
      out[1] = out[1] + Scalar(p[i]) * gen_images[i][1];
    }
    return out;
  };
  s.c = [apply](const Pt& a, const Pt& b) { return poisson_coeff(apply(a), apply(b)); };
  s.supp = all_supp;

  // injectivity: the 4 x rank rational matrix of real coordinates has full
  // column rank iff the lattice map is injective
  ExactMatrix m;
  m.rows = 4;
  m.cols = s.rank;
  m.a.assign(4, Vec(s.rank, Scalar(0)));
  for (int j = 0; j < s.rank; ++j) {
    m.a[0][j] = Scalar(gen_images[j][0].re());
    m.a[1][j] = Scalar(gen_images[j][0].im());
    m.a[2][j] = Scalar(gen_images[j][1].re());
    m.a[3][j] = Scalar(gen_images[j][1].im());
  }
  s.param_injective = rank(m) == s.rank;

  // simplicity precondition: image not inside the diagonal line, and (2,2)
  // not in the image lattice (decided exactly via the column lattice)
  bool off_diag = false;
  for (const auto& g : gen_images)
    if (!(g[0] == g[1])) off_diag = true;
  mpz_class den(1);
  for (int j = 0; j < s.rank; ++j)
    for (int i = 0; i < 4; ++i) den = lcm(den, m.a[i][j].re().get_den());
  std::vector<Pt> cols;
  for (int j = 0; j < s.rank; ++j) {
    Pt col(4);
    for (int i = 0; i < 4; ++i) {
      mpq_class v = m.a[i][j].re() * den;
      col[i] = v.get_num();
    }
    cols.push_back(col);
  }
  Pt target{2 * den, 0, 2 * den, 0};
  auto hnf = hnf_basis(cols, 4);
  bool two_rho_hit = in_lattice(hnf, target);
  s.cond_c = off_diag && !two_rho_hit;
  s.cond_c_exact = true;
  return s;
}

ScalarStructure a1_1() {
  ScalarStructure s;
  s.rank = 1;
  s.name = "a1_1";
  s.moduli = {0};
  const IMat e = munit(2, 0, 1), f = munit(2, 1, 0);
  const IMat h = madd(munit(2, 0, 0), munit(2, 1, 1), -1);
  // degree 3n+1: e t^n, 3n-1: f t^n, 3n: h t^n
  auto basis = [=](long d, long& power) -> IMat {
    long r = ((d % 3) + 3) % 3;
    if (r == 1) {
      power = (d - 1) / 3;
      return e;
    }
    if (r == 2) {
      power = (d + 1) / 3;
      return f;
    }
    power = d / 3;
    return h;
  };
  s.c = [basis](const Pt& a, const Pt& b) {
    long p1, p2, p3;
    IMat x = basis(a[0].get_si(), p1), y = basis(b[0].get_si(), p2);
    IMat target = basis(a[0].get_si() + b[0].get_si(), p3);
    IMat m = mcom(x, y);
    if (mzero(m)) return Scalar(0);
    if (p1 + p2 != p3) throw Error("a1_1: loop power mismatch");
    return mratio(m, target);
  };
  s.supp = all_supp;
  return s;
}

namespace {

// class representatives of the twisted loop algebra, degree r mod 8
IMat twisted_rep(long r) {
  const IMat e1 = munit(3, 0, 1), e2 = munit(3, 1, 2);
  const IMat f1 = munit(3, 1, 0), f2 = munit(3, 2, 1);
  const IMat h1 = madd(munit(3, 0, 0), munit(3, 1, 1), -1);
  const IMat h2 = madd(munit(3, 1, 1), munit(3, 2, 2), -1);
  switch (r) {
    case 0: return madd(h1, h2, 1);
    case 1: return madd(e1, e2, 1);
    case 7: return madd(f1, f2, 1);
    case 2: return mcom(f1, f2);
    case 3: return madd(f1, f2, -1);
    case 4: return madd(h1, h2, -1);
    case 5: return madd(e1, e2, -1);
    case 6: return mcom(e1, e2);
  }
  throw Error("twisted_rep: bad class");
}

// loop power attached to degree d (residues 0,1,7 ride even powers, 2..6 odd)
long twisted_power(long d) {
  long r = ((d % 8) + 8) % 8;
  if (r == 0) return 2 * floordiv(d, 8);
  if (r == 1) return 2 * floordiv(d - 1, 8);
  if (r == 7) return 2 * floordiv(d + 1, 8);
  return 2 * floordiv(d - r, 8) + 1;
}

}  // namespace

ScalarStructure a2_2() {
  ScalarStructure s;
  s.rank = 1;
  s.name = "a2_2";
  s.moduli = {0};
  s.c = [](const Pt& a, const Pt& b) {
    long d1 = a[0].get_si(), d2 = b[0].get_si();
    IMat m = mcom(twisted_rep(((d1 % 8) + 8) % 8), twisted_rep(((d2 % 8) + 8) % 8));
    if (mzero(m)) return Scalar(0);
    if (twisted_power(d1) + twisted_power(d2) != twisted_power(d1 + d2))
      throw Error("a2_2: loop power mismatch");
    return mratio(m, twisted_rep((((d1 + d2) % 8) + 8) % 8));
  };
  s.supp = all_supp;
  return s;
}

ScalarStructure sl2_z3() {
  ScalarStructure s;
  s.rank = 1;
  s.name = "sl2_z3";
  s.moduli = {3};
  const IMat e = munit(2, 0, 1), f = munit(2, 1, 0);
  const IMat h = madd(munit(2, 0, 0), munit(2, 1, 1), -1);
  auto basis = [=](long r) { return r == 1 ? e : (r == 2 ? f : h); };
  s.c = [basis](const Pt& a, const Pt& b) {
    long r1 = a[0].get_si(), r2 = b[0].get_si();
    IMat m = mcom(basis(r1), basis(r2));
    if (mzero(m)) return Scalar(0);
    return mratio(m, basis((r1 + r2) % 3));
  };
  s.supp = all_supp;
  return s;
}

ScalarStructure sl3_z8() {
  ScalarStructure s;
  s.rank = 1;
  s.name = "sl3_z8";
  s.moduli = {8};
  s.c = [](const Pt& a, const Pt& b) {
    long r1 = a[0].get_si(), r2 = b[0].get_si();
    IMat m = mcom(twisted_rep(r1), twisted_rep(r2));
    if (mzero(m)) return Scalar(0);
    return mratio(m, twisted_rep((r1 + r2) % 8));
  };
  s.supp = all_supp;
  return s;
}

ScalarStructure pullback(const std::vector<long>& phi, long k, const ScalarStructure& target) {
  if (target.rank != 1 || target.moduli != std::vector<long>{k})
    throw Error("pullback: target must be rank 1 with the matching modulus");
  ScalarStructure s;
  s.rank = int(phi.size());
  s.field = target.field;
  {
    std::ostringstream os;
    os << "pullback(" << target.name << ";";
    for (size_t i = 0; i < phi.size(); ++i) os << (i ? "," : " ") << phi[i];
    os << " mod " << k << ")";
    s.name = os.str();
  }
  s.moduli.assign(s.rank, 0);
  auto project = [phi, k](const Pt& p) {
    Int m = 0;
    for (size_t i = 0; i < phi.size(); ++i) m += phi[i] * p[i];
    Pt q{m};
    return canon(q, {k});
  };
  auto tc = target.c;
  auto tsupp = target.supp;
  s.c = [project, tc](const Pt& a, const Pt& b) { return tc(project(a), project(b)); };
  s.supp = [project, tsupp](const Pt& p) { return tsupp(project(p)); };
  return s;
}

ScalarStructure imprimitive(const ScalarStructure& s, int extra) {
  if (extra < 0) throw Error("imprimitive: extra must be >= 0");
  ScalarStructure r;
  r.rank = s.rank + extra;
  r.field = s.field;
  r.name = s.name + "+spectators";
  r.moduli = s.moduli_or_free();
  r.moduli.resize(r.rank, 0);
  int base = s.rank;
  auto sc = s.c;
  auto ssupp = s.supp;
  auto head = [base](const Pt& p) { return Pt(p.begin(), p.begin() + base); };
  r.c = [sc, head](const Pt& a, const Pt& b) { return sc(head(a), head(b)); };
  r.supp = [ssupp, head](const Pt& p) { return ssupp(head(p)); };
  return r;
}

}  // namespace glat
