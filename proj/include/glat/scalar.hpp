#pragma once
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace glat {

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};

// Exact element of Q(i): re + im*i, both arbitrary-precision rationals.
// mpq_class keeps both parts reduced with positive denominator, so equality
// is structural and printing is canonical.
class Scalar {
 public:
  Scalar() : re_(0) {}
  Scalar(int n) : re_(n) {}                 // NOLINT(runtime/explicit)
  Scalar(long n) : re_(n) {}                // NOLINT(runtime/explicit)
  Scalar(const mpz_class& n) : re_(n) {}    // NOLINT(runtime/explicit)
  Scalar(const mpq_class& re) : re_(re) {}  // NOLINT(runtime/explicit)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar frac(long num, long den);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_rational() const { return im_ == 0; }
  bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

  Scalar conj() const { return Scalar(re_, -im_); }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Scalar inverse() const;
  Scalar pow(long k) const;

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Scalar& operator-=(const Scalar& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order (real part, then imaginary part); used for canonical sorting only.
  int cmp(const Scalar& o) const;

  // Canonical text form: "p/q" (q>0 reduced, "/1" omitted), "r/si" for purely
  // imaginary, "p/q+r/si" / "p/q-r/si" otherwise.  parse accepts exactly the
  // printed grammar plus bare "i" / "-i" / "+i".
  std::string str() const;
  static std::optional<Scalar> parse(const std::string& text);

  // Floor of the real part (imaginary part ignored); used to canonicalize
  // shift parameters modulo Z.
  mpz_class floor_re() const;

 private:
  mpq_class re_, im_;
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

std::string rat_str(const mpq_class& q);

}  // namespace glat
