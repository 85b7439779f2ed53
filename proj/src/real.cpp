#include "hypermeasure/real.hpp"

#include <cmath>
#include <vector>

#include "hypermeasure/error.hpp"

namespace hm {

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

Real::Real(const std::string& s, mpfr_prec_t bits) : Real(bits) {
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(v_))
    fail(ErrorKind::Domain, "cannot parse real '" + s + "'");
}

std::string Real::str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }
}  // namespace

Real& Real::operator+=(const Real& o) { *this = *this + o; return *this; }
Real& Real::operator-=(const Real& o) { *this = *this - o; return *this; }
Real& Real::operator*=(const Real& o) { *this = *this * o; return *this; }
Real& Real::operator/=(const Real& o) { *this = *this / o; return *this; }

#define HM_BINOP(OP, FN)                                \
  Real operator OP(const Real& a, const Real& b) {      \
    Real r(pmax(a, b));                                 \
    FN(r.get(), a.get(), b.get(), MPFR_RNDN);           \
    return r;                                           \
  }
HM_BINOP(+, mpfr_add)
HM_BINOP(-, mpfr_sub)
HM_BINOP(*, mpfr_mul)
HM_BINOP(/, mpfr_div)
#undef HM_BINOP

Real operator-(const Real& a) {
  Real r(a.bits());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}

#define HM_UNARY(NAME, FN)                  \
  Real NAME(const Real& a) {                \
    Real r(a.bits());                       \
    FN(r.get(), a.get(), MPFR_RNDN);        \
    return r;                               \
  }
HM_UNARY(sqrt, mpfr_sqrt)
HM_UNARY(log, mpfr_log)
HM_UNARY(exp, mpfr_exp)
HM_UNARY(sin, mpfr_sin)
HM_UNARY(cos, mpfr_cos)
HM_UNARY(abs, mpfr_abs)
#undef HM_UNARY

Real floor(const Real& a) {
  Real r(a.bits());
  mpfr_floor(r.get(), a.get());
  return r;
}

Real pow(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

mpz_class to_mpz_floor(const Real& a) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), a.get(), MPFR_RNDD);
  return z;
}

Real rebits(const Real& a, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set(r.get(), a.get(), MPFR_RNDN);
  return r;
}

Complex rebits(const Complex& a, mpfr_prec_t bits) { return {rebits(a.re, bits), rebits(a.im, bits)}; }

Real pow10(long e, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

std::string Complex::str(int digits) const {
  return "(" + re.str(digits) + ", " + im.str(digits) + ")";
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator/(const Complex& a, const Complex& b) {
  // Smith's scaling keeps intermediate magnitudes bounded.
  if (abs(b.re) >= abs(b.im)) {
    Real t = b.im / b.re;
    Real den = b.re + b.im * t;
    return {(a.re + a.im * t) / den, (a.im - a.re * t) / den};
  }
  Real t = b.re / b.im;
  Real den = b.re * t + b.im;
  return {(a.re * t + a.im) / den, (a.im * t - a.re) / den};
}
Complex conj(const Complex& a) { return {a.re, -a.im}; }

Real abs(const Complex& a) {
  Real r(a.bits());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& a) { return atan2(a.im, a.re); }

Complex log(const Complex& a) {
  if (a.re.is_zero() && a.im.is_zero()) fail(ErrorKind::Domain, "log(0)");
  return {log(abs(a)), arg(a)};
}

Complex polar(const Real& r, const Real& theta) {
  Real s(theta.bits()), c(theta.bits());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {r * c, r * s};
}

Complex exp(const Complex& a) { return polar(exp(a.re), a.im); }

Complex pow(const Complex& a, const Real& e) {
  if (a.re.is_zero() && a.im.is_zero()) {
    if (e.sign() > 0) return Complex(a.bits());
    fail(ErrorKind::Domain, "0 raised to a non-positive power");
  }
  Complex l = log(a);
  return exp(Complex(l.re * e, l.im * e));
}

Complex pow(const Complex& a, long k) {
  Complex result(Real(1L, a.bits()));
  Complex base = a;
  bool inv = k < 0;
  unsigned long u = inv ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
  while (u) {
    if (u & 1) result = result * base;
    u >>= 1;
    if (u) base = base * base;
  }
  if (inv) return Complex(Real(1L, a.bits())) / result;
  return result;
}

Complex sqrt(const Complex& a) {
  if (a.re.is_zero() && a.im.is_zero()) return Complex(a.bits());
  Real half(0.5, a.bits());
  Complex l = log(a);
  return polar(sqrt(abs(a)), l.im * half);
}

}  // namespace hm
