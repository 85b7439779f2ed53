#pragma once
// Thin RAII layer over MPFR. Precision always travels with the value; there
// is no global default precision anywhere in the library.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace hm {

mpfr_prec_t digits_to_bits(int digits);

class Real {
 public:
  Real() : Real(mpfr_prec_t(128)) {}
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Real(long x, mpfr_prec_t bits) : Real(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x, mpfr_prec_t bits) : Real(static_cast<long>(x), bits) {}
  Real(double x, mpfr_prec_t bits) : Real(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const mpz_class& x, mpfr_prec_t bits) : Real(bits) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const mpq_class& x, mpfr_prec_t bits) : Real(bits) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  Real(const std::string& s, mpfr_prec_t bits);

  Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real(mpfr_prec_t(MPFR_PREC_MIN)) { mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  std::string str(int digits = 20) const;
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }

  static Real pi(mpfr_prec_t bits);

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }

Real sqrt(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
Real pow(const Real& a, const Real& b);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real abs(const Real& a);
Real floor(const Real& a);
Real max(const Real& a, const Real& b);
mpz_class to_mpz_floor(const Real& a);

Real rebits(const Real& a, mpfr_prec_t bits);

// Power of ten 10^e at the given precision (used for tolerances).
Real pow10(long e, mpfr_prec_t bits);

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(const Real& r) : re(r), im(r.bits()) {}
  mpfr_prec_t bits() const { return re.bits(); }
  std::string str(int digits = 20) const;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex conj(const Complex& a);
Real abs(const Complex& a);
Real arg(const Complex& a);
Complex log(const Complex& a);         // principal branch
Complex exp(const Complex& a);
Complex pow(const Complex& a, const Real& e);  // exp(e Log a), principal
Complex pow(const Complex& a, long k);         // repeated squaring
Complex sqrt(const Complex& a);                // principal
Complex polar(const Real& r, const Real& theta);
Complex rebits(const Complex& a, mpfr_prec_t bits);

}  // namespace hm
