#include "glat/scalar.hpp"

namespace glat {

Scalar Scalar::frac(long num, long den) {
  if (den == 0) throw Error("Scalar::frac: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("Scalar: division by zero");
  mpq_class n = norm();
  return Scalar(re_ / n, -im_ / n);
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar acc(1), base = *this;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

int Scalar::cmp(const Scalar& o) const {
  int c = ::cmp(re_, o.re_);
  if (c) return c;
  return ::cmp(im_, o.im_);
}

std::string rat_str(const mpq_class& q) {
  return q.get_str();  // reduced, minus sign up front, "/1" omitted
}

std::string Scalar::str() const {
  if (im_ == 0) return rat_str(re_);
  std::string tail = rat_str(im_) + "i";
  if (re_ == 0) return tail;
  if (im_ > 0) return rat_str(re_) + "+" + tail;
  return rat_str(re_) + tail;  // im part carries its own '-'
}

mpz_class Scalar::floor_re() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), re_.get_num().get_mpz_t(), re_.get_den().get_mpz_t());
  return f;
}

namespace {

bool parse_rat(const std::string& s, mpq_class* out) {
  if (s.empty()) return false;
  size_t start = (s[0] == '+') ? 1 : 0;  // mpq accepts '-', not '+'
  std::string body = s.substr(start);
  if (body.empty()) return false;
  // mpq set_str tolerates some junk; validate: [-]digits[/digits]
  size_t pos = (body[0] == '-') ? 1 : 0;
  if (pos >= body.size()) return false;
  bool seen_slash = false;
  for (size_t k = pos; k < body.size(); ++k) {
    char c = body[k];
    if (c == '/') {
      if (seen_slash || k == pos || k + 1 == body.size()) return false;
      seen_slash = true;
    } else if (c < '0' || c > '9') {
      return false;
    }
  }
  mpq_class q;
  if (q.set_str(body, 10) != 0) return false;
  if (q.get_den() == 0) return false;
  q.canonicalize();
  *out = q;
  return true;
}

// One additive term: "rat", "rati", or bare "i"/"+i"/"-i".  Returns (value, is_imag).
bool parse_term(const std::string& s, mpq_class* val, bool* imag) {
  if (s.empty()) return false;
  if (s == "i" || s == "+i") { *val = 1; *imag = true; return true; }
  if (s == "-i") { *val = -1; *imag = true; return true; }
  if (s.back() == 'i') {
    *imag = true;
    return parse_rat(s.substr(0, s.size() - 1), val);
  }
  *imag = false;
  return parse_rat(s, val);
}

}  // namespace

std::optional<Scalar> Scalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (s.empty()) return std::nullopt;
  // Split into at most two additive terms at a sign that is not leading and
  // not part of a rational (signs only occur at term boundaries here).
  size_t split = std::string::npos;
  for (size_t k = 1; k < s.size(); ++k)
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  std::string first = (split == std::string::npos) ? s : s.substr(0, split);
  std::string second = (split == std::string::npos) ? "" : s.substr(split);

  mpq_class re(0), im(0);
  mpq_class v;
  bool imag = false;
  if (!parse_term(first, &v, &imag)) return std::nullopt;
  (imag ? im : re) = v;
  if (!second.empty()) {
    bool imag2 = false;
    if (!parse_term(second, &v, &imag2)) return std::nullopt;
    if (imag2 == imag) return std::nullopt;  // two real or two imaginary terms
    (imag2 ? im : re) = v;
  }
  return Scalar(re, im);
}

}  // namespace glat
