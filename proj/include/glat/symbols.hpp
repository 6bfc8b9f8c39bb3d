#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glat/lattice.hpp"

namespace glat {

// ---- symbol algebra on index pairs -------------------------------------
//
// E_lam (lam in C^2) spans the symbol of z^{lam1+1} d^{lam2+1}.  With
// rho = (1,1):  E_a * E_b = E_{a+b+rho}  and  {E_a, E_b} = <a+rho|b+rho> E_{a+b}.

CPair rho();
CPair cpair_add(const CPair& a, const CPair& b);
Scalar poisson_coeff(const CPair& a, const CPair& b);
CPair commutative_product(const CPair& a, const CPair& b);  // index of E_a E_b

// ---- twisted pseudodifferential operators -------------------------------
//
// Finite sums  coef * z^zx * d^dx  with exponents in Q(i).  The product
// follows the full composition series; `cut` bounds how many descent steps
// (k = 0..cut) are retained, which is exact when the series terminates
// inside the cut and a declared truncation otherwise.

struct PdoTerm {
  Scalar coef, zx, dx;
};
struct Pdo {
  std::vector<PdoTerm> terms;
  static Pdo mono(const Scalar& coef, const Scalar& zx, const Scalar& dx);
  void normalize();  // combine, drop zeros, sort by (dx, zx) descending
  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

Pdo pdo_add(const Pdo& a, const Pdo& b);
Pdo pdo_scale(const Scalar& f, const Pdo& a);
Scalar factorial(long k);
Scalar binom(const Scalar& x, long k);  // x(x-1)...(x-k+1)/k!
Pdo opd_product(const Pdo& a, const Pdo& b, long cut);
Pdo opd_commutator(const Pdo& a, const Pdo& b, long cut);

// ---- density modules -----------------------------------------------------
//
// O^delta_s has basis u^delta_x = z^{x-delta} d^{-delta}, x in s+Z, with
// Witt action  L_n . u_x = (x + n*delta) u_{x+n}.

Scalar density_action(long n, const Scalar& delta, const Scalar& x);

// Bilinear maps on monomial densities f = z^a (in O^d1) and g = z^b (in O^d2):
//   product: f g d^{-d1-d2};  bracket: (d2 f'g - d1 f g') d^{-d1-d2-1}.
PdoTerm density_bilinear(char kind /* 'P' | 'B' */, const Scalar& d1, const Scalar& d2,
                         const Scalar& a, const Scalar& b);

// The three canonical maps on z^a (x) z^b: plain product pi, right-derivative
// b1 = f g', left-derivative b2 = f' g (so  d2*b2 - d1*b1  is the bracket).
struct PairingMaps {
  PdoTerm pi, b1, b2;
};
PairingMaps tensor_pairing_maps(const Scalar& d1, const Scalar& d2, const Scalar& a,
                                const Scalar& b);

// Is a nonzero Witt-equivariant bilinear map O^d1 x O^d2 -> O^gamma possible?
// gamma - d1 - d2 must be an integer in [-2,3] and the pair must match one of
// the admissible patterns for that defect.
bool bilinear_degree_admissible(const Scalar& d1, const Scalar& d2, const Scalar& gamma,
                                std::string* label = nullptr);

// ---- log-extension module ------------------------------------------------
//
// The extension of the Laurent-coefficient module by log z and log d:
//   L_n . e_m    = m e_{n+m}        (e_0 := 0)
//   L_n . log z  = e_n
//   L_n . log d  = -(n+1) e_n
// acting on densities by
//   e_n . u^delta_x   = n*delta u^{delta+1}_{x+n}
//   log z . u^delta_x = delta u^{delta+1}_x
//   log d . u^delta_x = (x - delta) u^{delta+1}_x
struct LogElem {
  Scalar logz, logd;
  std::map<long, Scalar> e;
  bool is_zero() const;
};
LogElem log_witt_action(long n, const LogElem& v);
// result: list of (target index x', coefficient) in O^{delta+1}
std::vector<std::pair<Scalar, Scalar>> log_density_action(const LogElem& v,
                                                          const Scalar& delta,
                                                          const Scalar& x);

// ---- the two-parameter deformation family --------------------------------
//
// kind 'A':  L_m.u_n = (m+n) u_{m+n} (n != 0),  L_m.u_0 = (a m^2 + b m) u_m
// kind 'B':  L_m.v_n = n v_{m+n} (m+n != 0),    L_m.v_{-m} = (a m^2 + b m) v_0
Scalar ab_action(char kind, const Scalar& a, const Scalar& b, long m, long n);

// ---- window recognition ----------------------------------------------------

struct ModuleWindow {
  Scalar x0;   // index attached to slot 0
  int len = 0;  // >= 6 slots
  // (n, m) -> coefficient of the map slot m -> slot m+n under L_n,
  // n in {-2,-1,1,2}; absent entries are unobserved.
  std::map<std::pair<int, int>, Scalar> b;
};

struct RecDensity {
  Scalar delta, s;
};
struct RecAB {
  char kind = 'A';
  Scalar a, b;
};
struct Recognition {
  bool is_density = true;
  RecDensity density;
  RecAB ab;
  std::vector<Scalar> t;  // slot rescalings, t[0] = 1
};

// Every model consistent with the window after slot rescaling.  Irreducible
// density windows give one hit; the defect-zero reducible family can give
// both delta=0 and delta=1 (callers resolve via the opposite window).
std::vector<Recognition> module_recognize(const ModuleWindow& w);

}  // namespace glat
