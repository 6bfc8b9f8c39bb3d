#include "glat/local.hpp"

#include <algorithm>
#include <sstream>

namespace glat {

long LocalAlgebra::w0() const {
  Scalar sum = sP + sM;
  if (!sum.is_integer()) throw Error("local: sP + sM must be an integer");
  return sum.re().get_num().get_si();
}

LocalAlgebra product_local(const Scalar& delta, const Scalar& s) {
  LocalAlgebra v;
  v.kind = "product";
  v.delta = delta;
  v.s = s;
  v.thetaP = Scalar(0) - delta;
  v.thetaM = delta - Scalar(1);
  v.sP = s;
  v.sM = Scalar(0) - s;
  v.pair = [](const Scalar&, const Scalar&) { return Scalar(-1); };
  return v;
}

LocalAlgebra bracket_local(const Scalar& delta, const Scalar& s) {
  LocalAlgebra v;
  v.kind = "bracket";
  v.delta = delta;
  v.s = s;
  v.thetaP = delta;
  v.thetaM = Scalar(-2) - delta;
  v.sP = s;
  v.sM = Scalar(0) - s;
  Scalar d = delta;
  v.pair = [d](const Scalar& x, const Scalar& y) {
    return (Scalar(-2) - d) * x - d * y;
  };
  return v;
}

LocalAlgebra opposite(const LocalAlgebra& v) {
  LocalAlgebra o = v;
  o.kind = v.kind + " (opposite)";
  std::swap(o.thetaP, o.thetaM);
  std::swap(o.sP, o.sM);
  auto base = v.pair;
  o.pair = [base](const Scalar& x, const Scalar& y) { return Scalar(0) - base(y, x); };
  return o;
}

bool local_check(const LocalAlgebra& v, long window) {
  for (long k = -3; k <= 3; ++k)
    for (long xj = -window; xj <= window; ++xj)
      for (long ys = -window; ys <= window; ++ys) {
        Scalar x = v.xp(xj), y = v.xm(ys);
        Scalar lhs = v.pair(x, y) * (x + y - Scalar(k));
        Scalar rhs = v.actP(k, xj) * v.pair(x + Scalar(k), y) +
                     v.actM(k, ys) * v.pair(x, y + Scalar(k));
        if (!(lhs == rhs)) return false;
      }
  return true;
}

// ---- word calculus ---------------------------------------------------------

void WordElem::add(const Word& w, const Scalar& v) {
  if (v.is_zero()) return;
  auto it = c.find(w);
  if (it == c.end()) {
    c.emplace(w, v);
    return;
  }
  it->second = it->second + v;
  if (it->second.is_zero()) c.erase(it);
}

bool WordElem::is_zero() const { return c.empty(); }

WordElem witt_word_action(const LocalAlgebra& v, long k, const Word& w) {
  WordElem out;
  if (w.empty()) return out;
  Word shifted = w;
  shifted[0] += k;
  out.add(shifted, v.actP(k, w[0]));
  if (w.size() > 1) {
    Word rest(w.begin() + 1, w.end());
    for (const auto& [rw, rc] : witt_word_action(v, k, rest).c) {
      Word full;
      full.reserve(rw.size() + 1);
      full.push_back(w[0]);
      full.insert(full.end(), rw.begin(), rw.end());
      out.add(full, rc);
    }
  }
  return out;
}

WordElem witt_word_action(const LocalAlgebra& v, long k, const WordElem& e) {
  WordElem out;
  for (const auto& [w, coef] : e.c)
    for (const auto& [rw, rc] : witt_word_action(v, k, w).c) out.add(rw, coef * rc);
  return out;
}

Scalar collapse_pair(const LocalAlgebra& v, long jp, long ym) {
  return v.pair(v.xp(jp), v.xm(ym));
}

WordElem descend(const LocalAlgebra& v, long y, const Word& w) {
  if (w.size() < 2) throw Error("descend: word must have length >= 2");
  WordElem out;
  long w0 = v.w0();
  long j1 = w[0];
  if (w.size() == 2) {
    long j2 = w[1];
    Word tgt{j1 + j2 + y + w0};
    Scalar c1 = Scalar(0) - v.pair(v.xp(j1), v.xm(y)) * v.actP(j1 + y + w0, j2);
    Scalar c2 = v.pair(v.xp(j2), v.xm(y)) * v.actP(j2 + y + w0, j1);
    out.add(tgt, c1 + c2);
    return out;
  }
  Word rest(w.begin() + 1, w.end());
  // [[u-_y, u+_{j1}], rest] = -pair * (L_{j1+y} . rest)
  Scalar lead = Scalar(0) - v.pair(v.xp(j1), v.xm(y));
  for (const auto& [rw, rc] : witt_word_action(v, j1 + y + w0, rest).c)
    out.add(rw, lead * rc);
  // [u+_{j1}, [u-_y, rest]]
  for (const auto& [rw, rc] : descend(v, y, rest).c) {
    Word full;
    full.reserve(rw.size() + 1);
    full.push_back(j1);
    full.insert(full.end(), rw.begin(), rw.end());
    out.add(full, rc);
  }
  return out;
}

WordElem descend(const LocalAlgebra& v, long y, const WordElem& e) {
  WordElem out;
  for (const auto& [w, coef] : e.c)
    for (const auto& [rw, rc] : descend(v, y, w).c) out.add(rw, coef * rc);
  return out;
}

// ---- minimal extension ------------------------------------------------------

namespace {

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Vec fingerprint_impl(const LocalAlgebra& v, long yrange, int level, const WordElem& e) {
  for (const auto& [w, coef] : e.c)
    if (int(w.size()) != level) throw Error("fingerprint: word length != level");
  long side = 2 * yrange + 1;
  long cols = ipow(side, level - 1);
  Vec fp(cols, Scalar(0));
  std::vector<WordElem> cur{e};
  for (int step = 1; step < level; ++step) {
    std::vector<WordElem> next;
    next.reserve(cur.size() * side);
    for (const auto& el : cur)
      for (long y = -yrange; y <= yrange; ++y) next.push_back(descend(v, y, el));
    cur = std::move(next);
  }
  for (long i = 0; i < cols; ++i) {
    if (cur[i].c.size() > 1) throw Error("fingerprint: descent scattered over slots");
    Scalar val(0);
    for (const auto& [w, coef] : cur[i].c) val = val + coef;
    fp[i] = val;
  }
  return fp;
}

WordElem prepend(long j, const WordElem& e) {
  WordElem out;
  for (const auto& [w, coef] : e.c) {
    Word full;
    full.reserve(w.size() + 1);
    full.push_back(j);
    full.insert(full.end(), w.begin(), w.end());
    out.add(full, coef);
  }
  return out;
}

}  // namespace

Vec Lmin::fingerprint(int level, const WordElem& e) const {
  return fingerprint_impl(v, yrange, level, e);
}

std::optional<Vec> Lmin::coords(int level, long degree, const WordElem& e) const {
  if (level < 1 || level > int(levels.size())) return std::nullopt;
  auto it = levels[level - 1].at.find(degree);
  if (it == levels[level - 1].at.end()) return std::nullopt;
  const auto& ld = it->second;
  Vec fp = fingerprint(level, e);
  if (ld.dim == 0) {
    for (const auto& x : fp)
      if (!x.is_zero()) return std::nullopt;
    return Vec{};
  }
  ExactMatrix m;
  m.rows = int(fp.size());
  m.cols = ld.dim;
  m.a.assign(m.rows, Vec(m.cols, Scalar(0)));
  for (int c = 0; c < ld.dim; ++c)
    for (int r = 0; r < m.rows; ++r) m.a[r][c] = ld.fingerprints[c][r];
  return solve(m, fp);
}

Lmin lmin_build(const LocalAlgebra& v, int max_level, long jrange, long yrange,
                long drange) {
  Lmin m;
  m.v = v;
  m.jrange = jrange;
  m.yrange = yrange;
  m.drange = drange;

  LevelData l1;
  l1.level = 1;
  for (long d = -drange; d <= drange; ++d) {
    LevelDegreeData ld;
    ld.degree = d;
    ld.dim = 1;
    WordElem e;
    e.add(Word{d}, Scalar(1));
    ld.basis.push_back(e);
    ld.fingerprints.push_back(Vec{Scalar(1)});
    l1.at[d] = std::move(ld);
  }
  m.levels.push_back(std::move(l1));

  for (int n = 2; n <= max_level; ++n) {
    const LevelData& prev = m.levels.back();
    LevelData ln;
    ln.level = n;
    std::vector<long> js;
    for (long j = -jrange; j <= jrange; ++j) js.push_back(j);
    std::sort(js.begin(), js.end(), [](long a, long b) {
      if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
      return a < b;
    });
    for (long d = -drange; d <= drange; ++d) {
      LevelDegreeData ld;
      ld.degree = d;
      Echelon ech(int(ipow(2 * yrange + 1, n - 1)));
      for (long j : js) {
        long p = d - j;
        auto pit = prev.at.find(p);
        if (pit == prev.at.end()) continue;
        for (const auto& pe : pit->second.basis) {
          WordElem cand = prepend(j, pe);
          Vec fp = fingerprint_impl(v, yrange, n, cand);
          if (ech.insert(fp)) {
            ld.basis.push_back(std::move(cand));
            ld.fingerprints.push_back(std::move(fp));
          }
        }
      }
      ld.dim = int(ld.basis.size());
      ln.at[d] = std::move(ld);
    }
    m.levels.push_back(std::move(ln));
  }
  return m;
}

std::map<int, std::vector<int>> lmin_dims(const Lmin& m) {
  std::map<int, std::vector<int>> out;
  for (const auto& lv : m.levels) {
    std::vector<int> dims;
    for (long d = -m.drange; d <= m.drange; ++d) {
      auto it = lv.at.find(d);
      dims.push_back(it == lv.at.end() ? 0 : it->second.dim);
    }
    out[lv.level] = dims;
  }
  return out;
}

bool lmin_stability(const LocalAlgebra& v, const Lmin& m) {
  Lmin wide = lmin_build(v, int(m.levels.size()), m.jrange + 3, m.yrange + 1, m.drange);
  for (const auto& lv : m.levels) {
    long margin = 2 * (lv.level - 1);
    for (long d = -(m.drange - margin); d <= m.drange - margin; ++d) {
      auto a = lv.at.find(d);
      auto b = wide.levels[lv.level - 1].at.find(d);
      int da = a == lv.at.end() ? 0 : a->second.dim;
      int db = b == wide.levels[lv.level - 1].at.end() ? 0 : b->second.dim;
      if (da != db) return false;
    }
  }
  return true;
}

namespace {

SideProfile side_profile(const Lmin& m) {
  SideProfile p;
  for (const auto& lv : m.levels) {
    long margin = 2 * (lv.level - 1);
    int mx = 0;
    for (long d = -(m.drange - margin); d <= m.drange - margin; ++d) {
      auto it = lv.at.find(d);
      if (it != lv.at.end()) mx = std::max(mx, it->second.dim);
    }
    p.dims_by_level.push_back(mx);
  }
  return p;
}

}  // namespace

DimTableRow lmin_dim_table_row(const std::string& kind, const Scalar& delta,
                               const Scalar& s, long window) {
  LocalAlgebra v = kind == "product" ? product_local(delta, s) : bracket_local(delta, s);
  DimTableRow row;
  row.delta = delta;
  row.s = s;
  row.kind = kind;
  Lmin a = lmin_build(v, 3, window, 4, window);
  Lmin b = lmin_build(opposite(v), 3, window, 4, window);
  row.side = side_profile(a);
  row.opposite_side = side_profile(b);
  row.headline = std::max(row.side.dims_by_level.back(),
                          row.opposite_side.dims_by_level.back());
  return row;
}

MinimalityReport minimality_check(const LocalAlgebra& v, int max_level, long window) {
  MinimalityReport rep;
  Lmin m = lmin_build(v, max_level, window, 4, window);
  rep.dims = lmin_dims(m);

  bool ok = true;
  for (const auto& lv : m.levels) {
    long margin = 2 * (lv.level - 1);
    long lo = -(m.drange - margin), hi = m.drange - margin;
    bool level_empty = true;
    for (long d = lo; d <= hi; ++d) {
      auto it = lv.at.find(d);
      int dim = it == lv.at.end() ? 0 : it->second.dim;
      if (dim > 0) level_empty = false;
      if (dim > 1) {
        rep.flagged.push_back({lv.level, d});
        ok = false;
      }
    }
    if (level_empty) {
      std::ostringstream os;
      os << "level " << lv.level << " vanishes on the interior window";
      rep.notes.push_back(os.str());
      continue;
    }
    // connectivity of the degree graph under L_{+-1}, L_{+-2}
    std::map<long, bool> reach;
    std::vector<long> stack;
    long start = lo;
    while (start <= hi) {
      auto it = lv.at.find(start);
      if (it != lv.at.end() && it->second.dim > 0) break;
      ++start;
    }
    stack.push_back(start);
    reach[start] = true;
    while (!stack.empty()) {
      long d = stack.back();
      stack.pop_back();
      auto dit = lv.at.find(d);
      if (dit == lv.at.end() || dit->second.dim == 0) continue;
      for (long k : {-2L, -1L, 1L, 2L}) {
        long d2 = d + k;
        if (d2 < lo || d2 > hi || reach.count(d2)) continue;
        bool edge = false;
        for (const auto& bas : dit->second.basis) {
          WordElem img = witt_word_action(v, k, bas);
          auto co = m.coords(lv.level, d2, img);
          if (!co) {
            rep.notes.push_back("window artifact: action image leaves the span");
            continue;
          }
          for (const auto& x : *co)
            if (!x.is_zero()) edge = true;
        }
        if (edge) {
          reach[d2] = true;
          stack.push_back(d2);
        }
      }
    }
    for (long d = lo; d <= hi; ++d) {
      auto it = lv.at.find(d);
      if (it != lv.at.end() && it->second.dim > 0 && !reach.count(d)) {
        std::ostringstream os;
        os << "level " << lv.level << " degree " << d << " unreachable under small shifts";
        rep.notes.push_back(os.str());
        ok = false;
      }
    }
    // descents kill nothing: basis fingerprints are independent by
    // construction, so every stored class pairs nontrivially downward
    if (lv.level >= 2) {
      bool down_ok = true;
      for (const auto& [d, ld] : lv.at)
        for (const auto& fp : ld.fingerprints) {
          bool nz = false;
          for (const auto& x : fp)
            if (!x.is_zero()) nz = true;
          if (!nz) down_ok = false;
        }
      if (!down_ok) {
        rep.notes.push_back("a stored class has a vanishing descent profile");
        ok = false;
      }
    }
  }
  std::sort(rep.notes.begin(), rep.notes.end());
  rep.notes.erase(std::unique(rep.notes.begin(), rep.notes.end()), rep.notes.end());
  rep.certified = ok;
  return rep;
}

}  // namespace glat
