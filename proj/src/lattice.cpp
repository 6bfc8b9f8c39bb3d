#include "glat/lattice.hpp"

#include <algorithm>

namespace glat {

Pt pt_zero(int rank) { return Pt(rank, Int(0)); }

Pt operator+(const Pt& a, const Pt& b) {
  Pt r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

Pt operator-(const Pt& a, const Pt& b) {
  Pt r(a);
  for (size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

Pt operator-(const Pt& a) {
  Pt r(a);
  for (auto& c : r) c = -c;
  return r;
}

Pt operator*(const Int& k, const Pt& a) {
  Pt r(a);
  for (auto& c : r) c *= k;
  return r;
}

bool is_zero(const Pt& a) {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

std::string pt_str(const Pt& a) {
  std::string s = "(";
  for (size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += a[k].get_str();
  }
  return s + ")";
}

size_t PtHash::operator()(const Pt& p) const {
  size_t h = 1469598103934665603ULL;
  for (const auto& c : p) {
    unsigned long v = mpz_fdiv_ui(c.get_mpz_t(), 2305843009213693951UL);
    h = (h ^ v) * 1099511628211ULL;
    h ^= static_cast<size_t>(mpz_sgn(c.get_mpz_t()) < 0);
  }
  return h;
}

bool PtLess::operator()(const Pt& a, const Pt& b) const {
  for (size_t k = 0; k < a.size() && k < b.size(); ++k) {
    int c = cmp(a[k], b[k]);
    if (c) return c < 0;
  }
  return a.size() < b.size();
}

Pt canon(const Pt& p, const std::vector<long>& moduli) {
  Pt r(p);
  for (size_t k = 0; k < r.size(); ++k) {
    if (k < moduli.size() && moduli[k] > 0) {
      Int m(moduli[k]);
      mpz_fdiv_r(r[k].get_mpz_t(), p[k].get_mpz_t(), m.get_mpz_t());
    }
  }
  return r;
}

void Box::each(const std::function<void(const Pt&)>& fn) const {
  std::vector<long> cur(rank, -radius);
  Pt p(rank);
  for (;;) {
    for (int k = 0; k < rank; ++k) p[k] = cur[k];
    fn(p);
    int k = rank - 1;
    while (k >= 0 && cur[k] == radius) cur[k--] = -radius;
    if (k < 0) break;
    ++cur[k];
  }
}

std::vector<Pt> Box::points() const {
  std::vector<Pt> out;
  each([&](const Pt& p) { out.push_back(p); });
  return out;
}

bool Box::contains(const Pt& p) const {
  if ((int)p.size() != rank) return false;
  for (const auto& c : p)
    if (c > radius || c < -radius) return false;
  return true;
}

std::vector<Scalar> AdditiveMap::apply(const Pt& p) const {
  std::vector<Scalar> out(dim, Scalar(0));
  for (int g = 0; g < rank; ++g) {
    if (p[g] == 0) continue;
    Scalar m((mpq_class(p[g])));
    for (int d = 0; d < dim; ++d) out[d] += m * gen_images[g][d];
  }
  return out;
}

Scalar AdditiveMap::apply1(const Pt& p) const { return apply(p)[0]; }

Scalar symplectic_form(const CPair& u, const CPair& v) {
  return u[1] * v[0] - u[0] * v[1];
}

// ---- integer lattice utilities ----

std::vector<Pt> hnf_basis(std::vector<Pt> gens, int rank) {
  std::vector<Pt> rows;
  for (auto& g : gens)
    if (!is_zero(g)) rows.push_back(g);
  std::vector<Pt> out;
  int col = 0;
  while (col < rank && !rows.empty()) {
    // gather rows with nonzero entry in this column (all have zeros before it)
    std::vector<size_t> live;
    for (size_t r = 0; r < rows.size(); ++r)
      if (rows[r][col] != 0) live.push_back(r);
    if (live.empty()) {
      ++col;
      continue;
    }
    // Euclid: reduce until one live row remains
    while (live.size() > 1) {
      size_t best = live[0];
      for (size_t r : live)
        if (abs(rows[r][col]) < abs(rows[best][col])) best = r;
      std::vector<size_t> next{best};
      for (size_t r : live) {
        if (r == best) continue;
        Int q = rows[r][col] / rows[best][col];  // truncated ok
        rows[r] = rows[r] - q * rows[best];
        if (rows[r][col] != 0) next.push_back(r);
      }
      live = next;
    }
    size_t pr = live[0];
    Pt piv = rows[pr];
    if (piv[col] < 0) piv = -piv;
    rows.erase(rows.begin() + pr);
    for (auto& r : rows)
      if (r[col] != 0) throw Error("hnf: column clear failed");
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const Pt& r) { return is_zero(r); }),
               rows.end());
    out.push_back(piv);
    ++col;
  }
  // reduce entries above each pivot mod the pivot
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    for (size_t j = i + 1; j < out.size(); ++j) {
      int pc = 0;
      while (out[j][pc] == 0) ++pc;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), out[i][pc].get_mpz_t(), out[j][pc].get_mpz_t());
      out[i] = out[i] - q * out[j];
    }
  }
  return out;
}

std::optional<Int> lattice_index(const std::vector<Pt>& hnf, int rank) {
  if ((int)hnf.size() < rank) return std::nullopt;
  Int d(1);
  for (const auto& row : hnf) {
    int pc = 0;
    while (pc < rank && row[pc] == 0) ++pc;
    if (pc >= rank) return std::nullopt;
    d *= row[pc];
  }
  return d;
}

bool in_lattice(const std::vector<Pt>& hnf, const Pt& p) {
  Pt r(p);
  for (const auto& row : hnf) {
    int pc = 0;
    while (pc < (int)row.size() && row[pc] == 0) ++pc;
    if (pc >= (int)row.size()) continue;
    Int rem = r[pc] % row[pc];
    if (rem != 0) return false;
    Int q = r[pc] / row[pc];
    r = r - q * row;
  }
  return is_zero(r);
}

Pt make_primitive(const Pt& p) {
  Int g(0);
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw Error("make_primitive: zero vector");
  Pt r(p);
  for (auto& c : r) c /= g;
  return r;
}

std::vector<Pt> complete_primitive(const Pt& alpha) {
  const int n = (int)alpha.size();
  // Reduce the row vector alpha to e1 by elementary column operations while
  // applying the inverse operations to V from the left; then V has first row
  // alpha and determinant +-1.
  Pt a(alpha);
  std::vector<Pt> V(n, pt_zero(n));
  for (int k = 0; k < n; ++k) V[k][k] = 1;

  auto nonzeros = [&]() {
    std::vector<int> nz;
    for (int k = 0; k < n; ++k)
      if (a[k] != 0) nz.push_back(k);
    return nz;
  };
  for (;;) {
    auto nz = nonzeros();
    if (nz.empty()) throw Error("complete_primitive: zero vector");
    if (nz.size() == 1) break;
    int piv = nz[0];
    for (int k : nz)
      if (abs(a[k]) < abs(a[piv])) piv = k;
    for (int j : nz) {
      if (j == piv) continue;
      Int q = a[j] / a[piv];
      if (q == 0) continue;
      // column op: col_j -= q * col_piv ; inverse on V: row_piv += q * row_j
      a[j] -= q * a[piv];
      V[piv] = V[piv] + q * V[j];
    }
    // if no progress was possible (all |a[j]| < |a[piv]| handled next round)
  }
  int k0 = nonzeros()[0];
  if (a[k0] != 1 && a[k0] != -1) throw Error("complete_primitive: vector not primitive");
  if (k0 != 0) {
    std::swap(a[k0], a[0]);
    std::swap(V[k0], V[0]);
  }
  if (a[0] == -1) {
    a[0] = 1;
    V[0] = -V[0];
  }
  if (V[0] != alpha) throw Error("complete_primitive: internal check failed");
  return V;
}

}  // namespace glat
