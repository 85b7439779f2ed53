#include "hypermeasure/hypg_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hypermeasure/error.hpp"
#include "hypermeasure/sturm.hpp"
#include "tanh_sinh.hpp"

namespace hm {

void HypgIndex::validate() const {
  if (n < 3) fail(ErrorKind::ConstraintViolation, "n must be at least 3, got " + std::to_string(n));
  if (m <= 0 || 2 * m >= n)
    fail(ErrorKind::ConstraintViolation, "need 0 < m < n/2, got m=" + std::to_string(m) +
                                             " n=" + std::to_string(n));
  if (std::gcd(m, n) != 1)
    fail(ErrorKind::ConstraintViolation, "gcd(m,n) != 1 for m=" + std::to_string(m) +
                                             " n=" + std::to_string(n));
  if (r < 0) fail(ErrorKind::ConstraintViolation, "r must be non-negative");
}

std::string HypgIndex::str() const {
  return "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(r) + ")";
}

mpq_class RatPoly::eval(const mpq_class& z) const {
  mpq_class v = 0;
  for (size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

Complex RatPoly::eval(const Complex& z) const {
  const mpfr_prec_t b = z.bits();
  Complex v(b);
  for (size_t k = c.size(); k-- > 0;) v = v * z + Complex(Real(c[k], b));
  return v;
}

std::string RatPoly::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    mpq_class a = abs(c[k]);
    if (!first) os << (sgn(c[k]) < 0 ? " - " : " + ");
    else if (sgn(c[k]) < 0) os << "-";
    first = false;
    const bool unit = (a == 1);
    if (k == 0 || !unit) {
      if (a.get_den() != 1 && k > 0) os << "(" << a.get_str() << ")";
      else os << a.get_str();
    }
    if (k >= 1) os << "z";
    if (k >= 2) os << "^" << k;
  }
  if (first) os << "0";
  return os.str();
}

ComplexHP::ComplexHP(const Complex& v, int digits) : z(rebits(v, digits_to_bits(digits))), prec(digits) {
  if (digits < 30) fail(ErrorKind::ConstraintViolation, "precision must be at least 30 digits");
}

ComplexHP ComplexHP::from_double(double re, double im, int digits) {
  const auto b = digits_to_bits(digits);
  return ComplexHP(Complex(Real(re, b), Real(im, b)), digits);
}

ComplexHP ComplexHP::from_string(const std::string& re, const std::string& im, int digits) {
  const auto b = digits_to_bits(digits);
  return ComplexHP(Complex(Real(re, b), Real(im, b)), digits);
}

ComplexHP ComplexHP::unit(const Real& angle, int digits) {
  const auto b = digits_to_bits(digits);
  return ComplexHP(polar(Real(1L, b), rebits(angle, b)), digits);
}

RatPoly x_poly(const HypgIndex& idx) {
  idx.validate();
  RatPoly p;
  p.c.reserve(idx.r + 1);
  const mpq_class nu = idx.nu();
  mpq_class ck = 1;
  p.c.push_back(ck);
  for (long k = 0; k < idx.r; ++k) {
    // c_{k+1}/c_k = (k-r)(k-r-nu) / ((k+1-nu)(k+1))
    mpq_class num = mpq_class(k - idx.r) * (mpq_class(k - idx.r) - nu);
    mpq_class den = (mpq_class(k + 1) - nu) * mpq_class(k + 1);
    ck = ck * num / den;
    p.c.push_back(ck);
  }
  return p;
}

RatPoly y_poly(const HypgIndex& idx) {
  RatPoly p = x_poly(idx);
  std::reverse(p.c.begin(), p.c.end());
  return p;
}

mpq_class x_at_one(const HypgIndex& idx) {
  idx.validate();
  mpz_class num = 1, den = 1;
  for (long k = 1; k <= idx.r; ++k) {
    num *= mpz_class(idx.n) * (idx.r + k);
    den *= mpz_class(k * idx.n - idx.m);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class pochhammer_ratio(const HypgIndex& idx) {
  idx.validate();
  mpz_class num = 1, den = 1;
  for (long k = 0; k <= idx.r; ++k) {
    num *= mpz_class(k * idx.n + idx.m);
    den *= mpz_class(idx.n);
  }
  for (long k = idx.r + 1; k <= 2 * idx.r + 1; ++k) den *= k;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpq_class gamma_middle_term(const HypgIndex& idx) {
  idx.validate();
  mpz_class num = 1, den = 1;
  for (long k = 1; k <= idx.r; ++k) {
    num *= mpz_class(k * idx.n);
    den *= mpz_class(k * idx.n - idx.m);
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool on_negative_axis(const Complex& z) { return z.im.is_zero() && z.re.sign() <= 0; }

// (2r+1)! / (r!)^2
mpz_class central_scale(long r) {
  mpz_class f2, f1;
  mpz_fac_ui(f2.get_mpz_t(), 2 * r + 1);
  mpz_fac_ui(f1.get_mpz_t(), r);
  return f2 / (f1 * f1);
}

// Integrand t^r (1-t)^r ((1-t) + t z)^alpha with preallocated MPFR scratch.
class EulerIntegrand {
 public:
  EulerIntegrand(long r, const mpq_class& alpha, const Complex& z, mpfr_prec_t wp) {
    for (mpfr_ptr p : {re_, im_, lw_, ang_, er_, ei_, s_, c_, zr_, zi_, al_, rr_}) mpfr_init2(p, wp);
    mpfr_set(zr_, z.re.get(), MPFR_RNDN);
    mpfr_set(zi_, z.im.get(), MPFR_RNDN);
    mpfr_set_q(al_, alpha.get_mpq_t(), MPFR_RNDN);
    mpfr_set_si(rr_, r, MPFR_RNDN);
  }
  ~EulerIntegrand() {
    for (mpfr_ptr p : {re_, im_, lw_, ang_, er_, ei_, s_, c_, zr_, zi_, al_, rr_}) mpfr_clear(p);
  }
  EulerIntegrand(const EulerIntegrand&) = delete;
  EulerIntegrand& operator=(const EulerIntegrand&) = delete;

  // Adds w * f(x) to (acc_re, acc_im), with log w supplied by the node table.
  void accumulate(const Real& x, const Real& omx, const Real& lx, const Real& lomx, const Real& log_w,
                  Real& acc_re, Real& acc_im) {
    mpfr_fma(re_, x.get(), zr_, omx.get(), MPFR_RNDN);
    mpfr_mul(im_, x.get(), zi_, MPFR_RNDN);
    mpfr_hypot(lw_, re_, im_, MPFR_RNDN);
    mpfr_log(lw_, lw_, MPFR_RNDN);
    mpfr_atan2(ang_, im_, re_, MPFR_RNDN);
    mpfr_add(er_, lx.get(), lomx.get(), MPFR_RNDN);
    mpfr_mul(er_, er_, rr_, MPFR_RNDN);
    mpfr_fma(er_, al_, lw_, er_, MPFR_RNDN);
    mpfr_add(er_, er_, log_w.get(), MPFR_RNDN);
    mpfr_exp(er_, er_, MPFR_RNDN);
    mpfr_mul(ei_, al_, ang_, MPFR_RNDN);
    mpfr_sin_cos(s_, c_, ei_, MPFR_RNDN);
    mpfr_fma(acc_re.get(), er_, c_, acc_re.get(), MPFR_RNDN);
    mpfr_fma(acc_im.get(), er_, s_, acc_im.get(), MPFR_RNDN);
  }

 private:
  mpfr_t re_, im_, lw_, ang_, er_, ei_, s_, c_, zr_, zi_, al_, rr_;
};

QuadratureReport integrate(const HypgIndex& idx, const Complex& z, int prec, int guard) {
  const mpfr_prec_t wp = digits_to_bits(prec + guard);
  EulerIntegrand f(idx.r, mpq_class(-idx.r - 1) + idx.nu(), rebits(z, wp), wp);
  const double log10_tol = -(prec + 5.0);

  // |(1-t) + t z|^alpha <= dist(0, [1, z])^alpha since alpha < 0
  const double dre = z.re.to_double() - 1, dim = z.im.to_double();
  const double tt = std::clamp(-dre / (dre * dre + dim * dim), 0.0, 1.0);
  const double dist = std::hypot(1 + tt * dre, tt * dim) * (1 - 1e-9);
  const double log_wmax = (-idx.r - 1.0 + static_cast<double>(idx.m) / idx.n) * std::log(dist);
  double cut = -1e300;

  QuadratureReport rep;
  Real tre(0L, wp), tim(0L, wp);
  std::vector<Complex> hist;
  const int max_level = 12;
  for (int level = 0; level <= max_level; ++level) {
    const auto& lv = detail::ts_level(wp, level);
    for (size_t i = 0; i < lv.nodes.size(); ++i) {
      const auto& nd = lv.nodes[i];
      if (level > 0) {
        // Tail cut: upper bound for log|w f| at this node and all further out.
        const double lb = idx.r * (nd.log_x.to_double() + nd.log_omx.to_double()) +
                          nd.log_w.to_double() + log_wmax;
        if (lb < cut) break;
      }
      f.accumulate(nd.x, nd.omx, nd.log_x, nd.log_omx, nd.log_w, tre, tim);
      ++rep.evaluations;
      if (lv.has_center && i == 0) continue;
      f.accumulate(nd.omx, nd.x, nd.log_omx, nd.log_x, nd.log_w, tre, tim);
      ++rep.evaluations;
    }
    Complex cur(tre, tim);
    mpfr_div_2si(cur.re.get(), cur.re.get(), level, MPFR_RNDN);
    mpfr_div_2si(cur.im.get(), cur.im.get(), level, MPFR_RNDN);
    hist.push_back(cur);
    rep.levels = level;
    if (level == 0) cut = std::log(abs(cur).to_double()) - (prec + guard + 10) * std::log(10.0);
    if (level >= 3) {
      // Bailey's estimate: the digits gained roughly double per level.
      const double scale = std::log10(abs(cur).to_double());
      const double d1 = std::log10(abs(cur - hist[level - 1]).to_double()) - scale;
      const double d2 = std::log10(abs(cur - hist[level - 2]).to_double()) - scale;
      double e;
      if (!std::isfinite(d1) || d1 < log10_tol - 10) e = log10_tol - 10;
      else if (d1 >= 0 || d2 >= 0) e = 0;
      else e = std::max(d1 * d1 / d2, 2 * d1);
      e = std::max(e, -(prec + guard - 2.0));
      if (e <= log10_tol) {
        rep.value = cur;
        rep.error_estimate = abs(cur) * pow10(static_cast<long>(std::ceil(e)), wp);
        return rep;
      }
    }
  }
  fail(ErrorKind::PrecisionFailure,
       "tanh-sinh quadrature did not reach 10^-" + std::to_string(prec + 5) + " for " + idx.str());
}

}  // namespace

QuadratureReport hyp2f1_remainder(const HypgIndex& idx, const ComplexHP& zp) {
  idx.validate();
  const Complex& z = zp.z;
  if (on_negative_axis(z)) fail(ErrorKind::Domain, "z on the non-positive real axis");
  const mpfr_prec_t b = digits_to_bits(zp.prec);
  if (mpfr_cmp_ui(z.re.get(), 1) == 0 && z.im.is_zero()) {
    // argument 1-z = 0
    QuadratureReport rep;
    rep.value = Complex(Real(1L, b));
    rep.error_estimate = Real(0L, b);
    return rep;
  }
  QuadratureReport rep = integrate(idx, z, zp.prec, 12);
  const mpfr_prec_t wp = rep.value.bits();
  Real s(central_scale(idx.r), wp);
  rep.value = rep.value * s;
  rep.error_estimate = rep.error_estimate * s;
  return rep;
}

Complex remainder_eval(const HypgIndex& idx, const ComplexHP& z) {
  QuadratureReport rep = hyp2f1_remainder(idx, z);
  const mpfr_prec_t wp = rep.value.bits();
  return rep.value * Real(pochhammer_ratio(idx), wp);
}

Real relation_residual(const HypgIndex& idx, const ComplexHP& zp) {
  idx.validate();
  const int guard = 40;
  const mpfr_prec_t wp = digits_to_bits(zp.prec + guard);
  const Complex z = rebits(zp.z, wp);
  const Real one(1L, wp);
  const Real slack = pow10(-(zp.prec - 15), wp);
  if (on_negative_axis(z)) fail(ErrorKind::Domain, "z on the non-positive real axis");
  if (abs(z) > one + slack) fail(ErrorKind::Domain, "relation needs |z| <= 1");
  if (!(abs(z - Complex(one)) < one)) fail(ErrorKind::Domain, "relation needs |z-1| < 1");

  const RatPoly X = x_poly(idx);
  const RatPoly Y = y_poly(idx);
  const Complex xz = X.eval(z);
  const Complex yz = Y.eval(z);
  const Real mnu = Real(-idx.nu(), wp);
  const Complex zneg = pow(z, mnu);  // z^{-m/n}, principal
  const Complex zm1 = z - Complex(one);
  // R at higher working precision than the target so its error is negligible.
  const ComplexHP zhp(z, zp.prec + guard - 20);
  const Complex R = rebits(remainder_eval(idx, zhp), wp);
  const Complex rhs = zneg * pow(zm1, 2 * idx.r + 1) * R;
  return abs(yz - zneg * xz - rhs);
}

bool ArcMinimum::adjacent_to_one() const { return std::fabs(argmin_angle) <= step * (1 + 1e-9); }

ArcMinimum f21_min_check(const HypgIndex& idx, int samples, int prec) {
  idx.validate();
  if (samples < 8) fail(ErrorKind::ConstraintViolation, "f21_min_check needs at least 8 samples");
  const mpfr_prec_t b = digits_to_bits(prec);
  const Real pi = Real::pi(b);
  ArcMinimum out;
  out.samples = samples;
  out.step = M_PI / (samples - 1);
  std::vector<double> vals(samples, 0.0);
  // |F(conj z)| = |F(z)| because the parameters are real: evaluate half the arc.
  for (int j = 0; j < samples; ++j) {
    const int mirror = samples - 1 - j;
    if (mirror < j) {
      vals[j] = vals[mirror];
      continue;
    }
    Real ang = -pi / Real(2L, b) + pi * Real(long(j), b) / Real(long(samples - 1), b);
    ComplexHP z(Complex(Real(1L, b)), prec);
    if (2 * j != samples - 1) z = ComplexHP::unit(ang, prec);
    vals[j] = abs(hyp2f1_remainder(idx, z).value).to_double(MPFR_RNDD);
  }
  int best = 0;
  for (int j = 1; j < samples; ++j) {
    const double dj = std::fabs(j - (samples - 1) / 2.0), db = std::fabs(best - (samples - 1) / 2.0);
    if (vals[j] < vals[best] || (vals[j] == vals[best] && dj < db)) best = j;
  }
  out.min_abs = vals[best];
  out.argmin_index = best;
  out.argmin_angle = -M_PI / 2 + best * out.step;
  return out;
}

namespace {
IntPoly cleared_x(const HypgIndex& idx) {
  RatPoly X = x_poly(idx);
  mpz_class L = 1;
  for (auto& c : X.c) L = lcm(L, mpz_class(c.get_den()));
  IntPoly p;
  for (auto& c : X.c) p.push_back(c.get_num() * (L / c.get_den()));
  return p;
}
}  // namespace

SturmCount x_negative_root_count(const HypgIndex& idx) {
  IntPoly p = cleared_x(idx);
  SturmCount sc;
  if (p.size() <= 1) return sc;
  auto seq = sturm_sequence(p);
  const long at_neg = variations_at_neg_infinity(seq);
  const long at_zero = variations_at(seq, mpq_class(0));
  const long at_pos = variations_at_pos_infinity(seq);
  sc.negative_roots = at_neg - at_zero;
  sc.real_roots = at_neg - at_pos;
  return sc;
}

bool x_root_certificate(const HypgIndex& idx, long r_cap) {
  idx.validate();
  if (idx.r > r_cap)
    fail(ErrorKind::CapExceeded, "r=" + std::to_string(idx.r) + " above Sturm cap " + std::to_string(r_cap));
  return x_negative_root_count(idx).negative_roots == idx.r;
}

BoundsCheck x_bounds_check(const HypgIndex& idx, const ComplexHP& zp) {
  idx.validate();
  const mpfr_prec_t wp = digits_to_bits(zp.prec + 20);
  const Complex z = rebits(zp.z, wp);
  const Real one(1L, wp);
  const Real slack = pow10(-(zp.prec - 15), wp);
  BoundsCheck bc;
  const Complex xz = x_poly(idx).eval(z);
  const Complex yz = y_poly(idx).eval(z);
  const Real ax = abs(xz);
  bc.abs_x = ax.to_double();
  Real base = one + z.re;
  Real lower(wp);
  mpfr_pow_ui(lower.get(), base.get(), static_cast<unsigned long>(idx.r), MPFR_RNDN);
  if (z.re.sign() >= 0) {
    bc.lower_ok = ax >= lower - slack;
    bc.y_lower_ok = abs(yz) >= lower - slack;
  }
  const Real mod = abs(z);
  bc.upper_applicable = abs(mod - one) <= slack && abs(z - Complex(one)) < one;
  if (bc.upper_applicable) {
    Real g(gamma_middle_term(idx), wp);
    Complex s = sqrt(z);
    Real t = abs(Complex(one) + s);
    Real tp(wp);
    mpfr_pow_ui(tp.get(), t.get(), static_cast<unsigned long>(2 * idx.r), MPFR_RNDN);
    Real bound = Real(mpq_class(134, 125), wp) * g * tp + slack;
    bc.upper_ok = ax <= bound;
  }
  return bc;
}

bool x_real_lower_bound(const HypgIndex& idx, const mpq_class& x) {
  if (sgn(x) < 0) fail(ErrorKind::Domain, "real lower bound is stated for x >= 0");
  mpq_class lhs = 1;
  for (long k = 0; k < idx.r; ++k) lhs *= (1 + x);
  return lhs <= x_poly(idx).eval(x);
}

}  // namespace hm
