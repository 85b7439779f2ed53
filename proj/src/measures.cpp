#include "hypermeasure/measures.hpp"

#include <cmath>
#include <regex>

#include "hypermeasure/denominators.hpp"
#include "hypermeasure/error.hpp"
#include "hypermeasure/tables.hpp"

namespace hm {

// ---------------------------------------------------------------- QuadNum

QuadNum::QuadNum(mpq_class u_, mpq_class v_, i64 t_) : u(std::move(u_)), v(std::move(v_)), t(t_) {
  u.canonicalize();
  v.canonicalize();
}

bool QuadNum::operator==(const QuadNum& o) const {
  return u == o.u && v == o.v && (v == 0 || t == o.t);
}

bool QuadNum::is_integral() const {
  if (t % 4 == 3) {
    const mpq_class U = 2 * u, V = 2 * v;
    if (U.get_den() != 1 || V.get_den() != 1) return false;
    return (U.get_num() - V.get_num()) % 2 == 0;
  }
  return u.get_den() == 1 && v.get_den() == 1;
}

Complex QuadNum::to_complex(mpfr_prec_t bits) const {
  return {Real(u, bits), Real(v, bits) * sqrt(Real(static_cast<long>(t), bits))};
}

std::string QuadNum::str() const {
  if (v == 0) return to_string(u);
  std::string s = u == 0 ? "" : to_string(u);
  const mpq_class av = abs(v);
  s += v < 0 ? "-" : (u == 0 ? "" : "+");
  if (av != 1) s += to_string(av) + "*";
  return s + "sqrt(-" + std::to_string(t) + ")";
}

namespace {

i64 pick_t(const QuadNum& a, const QuadNum& b) {
  if (a.v == 0) return b.t;
  if (b.v == 0) return a.t;
  if (a.t != b.t) fail(ErrorKind::Domain, "elements of different quadratic fields");
  return a.t;
}

}  // namespace

QuadNum operator+(const QuadNum& a, const QuadNum& b) { return {a.u + b.u, a.v + b.v, pick_t(a, b)}; }
QuadNum operator-(const QuadNum& a, const QuadNum& b) { return {a.u - b.u, a.v - b.v, pick_t(a, b)}; }
QuadNum operator-(const QuadNum& a) { return {-a.u, -a.v, a.t}; }
QuadNum operator*(const QuadNum& a, const QuadNum& b) {
  const i64 t = pick_t(a, b);
  return {a.u * b.u - mpq_class(t) * a.v * b.v, a.u * b.v + a.v * b.u, t};
}
QuadNum conj(const QuadNum& a) { return {a.u, -a.v, a.t}; }
QuadNum operator/(const QuadNum& a, const QuadNum& b) {
  if (b.is_zero()) fail(ErrorKind::Domain, "division by zero");
  const QuadNum num = a * conj(b);
  const mpq_class nb = b.norm();
  return {num.u / nb, num.v / nb, num.t};
}
QuadNum pow(const QuadNum& a, long k) {
  QuadNum out(1, 0, a.t), base = a;
  for (; k > 0; k >>= 1) {
    if (k & 1) out = out * base;
    base = base * base;
  }
  return out;
}

// ---------------------------------------------------------------- QuadInt

namespace {

bool squarefree(i64 t) {
  for (i64 p = 2; p * p <= t; ++p)
    if (t % (p * p) == 0) return false;
  return true;
}

void check_t(i64 t) {
  if (t < 1 || !squarefree(t)) fail(ErrorKind::Domain, "t must be a positive squarefree integer, got " + std::to_string(t));
}

}  // namespace

QuadInt QuadInt::integer(const mpz_class& x) { return halves(2 * x, 0, 1); }

QuadInt QuadInt::of(const mpz_class& x, const mpz_class& y, i64 t) { return halves(2 * x, 2 * y, t); }

QuadInt QuadInt::halves(const mpz_class& X, const mpz_class& Y, i64 t) {
  check_t(t);
  const bool odd = X % 2 != 0, yodd = Y % 2 != 0;
  if (odd != yodd || ((odd || yodd) && t % 4 != 3))
    fail(ErrorKind::Domain, "(" + X.get_str() + "+" + Y.get_str() + "*sqrt(-" + std::to_string(t) +
                                "))/2 is not an algebraic integer");
  QuadInt q;
  q.X = X;
  q.Y = Y;
  q.t = t;
  return q;
}

QuadInt QuadInt::parse(const std::string& raw) {
  static const std::regex split_digits(R"(\d\s+\d)");
  if (std::regex_search(raw, split_digits)) fail(ErrorKind::Domain, "cannot parse quadratic integer '" + raw + "'");
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  static const std::regex ascii(R"(\*?sqrt\(-(\d+)\))");
  s = std::regex_replace(s, ascii, "\xE2\x88\x9A-$1");
  static const std::regex star(R"(\*(\xE2\x88\x9A))");
  s = std::regex_replace(s, star, "$1");
  bool half = false;
  if (s.size() > 4 && s.front() == '(' && s.compare(s.size() - 3, 3, ")/2") == 0) {
    half = true;
    s = s.substr(1, s.size() - 4);
  }
  static const std::regex both(R"(^([+-]?\d+)([+-])(\d*)\xE2\x88\x9A-(\d+)$)");
  static const std::regex imag(R"(^([+-]?)(\d*)\xE2\x88\x9A-(\d+)$)");
  static const std::regex real(R"(^([+-]?\d+)$)");
  std::smatch mt;
  mpz_class x = 0, y = 0;
  i64 t = 1;
  auto digits = [](const std::string& d) { return d.empty() ? mpz_class(1) : mpz_class(d); };
  auto signed_int = [](std::string d) {
    if (!d.empty() && d[0] == '+') d.erase(0, 1);
    return mpz_class(d);
  };
  try {
    if (std::regex_match(s, mt, both)) {
      x = signed_int(mt[1]);
      y = digits(mt[3]);
      if (mt[2] == "-") y = -y;
      t = std::stoll(mt[4]);
    } else if (std::regex_match(s, mt, imag)) {
      y = digits(mt[2]);
      if (mt[1] == "-") y = -y;
      t = std::stoll(mt[3]);
    } else if (std::regex_match(s, mt, real)) {
      x = signed_int(mt[1]);
    } else {
      fail(ErrorKind::Domain, "cannot parse quadratic integer '" + raw + "'");
    }
  } catch (const std::out_of_range&) {
    fail(ErrorKind::Domain, "t out of range in '" + raw + "'");
  }
  return half ? halves(x, y, t) : of(x, y, t);
}

QuadNum QuadInt::num() const { return {mpq_class(X, 2), mpq_class(Y, 2), t}; }

mpz_class QuadInt::norm() const {
  mpz_class n4 = X * X + t * Y * Y;
  return n4 / 4;
}

std::string QuadInt::str() const {
  if (is_half()) {
    return "(" + X.get_str() + (Y < 0 ? "-" : "+") + (abs(Y) == 1 ? "" : mpz_class(abs(Y)).get_str()) +
           "\xE2\x88\x9A-" + std::to_string(t) + ")/2";
  }
  const mpz_class x = X / 2, y = Y / 2;
  if (y == 0) return x.get_str();
  std::string s = x == 0 ? "" : x.get_str();
  s += y < 0 ? "-" : (x == 0 ? "" : "+");
  if (abs(y) != 1) s += mpz_class(abs(y)).get_str();
  return s + "\xE2\x88\x9A-" + std::to_string(t);
}

bool QuadInt::operator==(const QuadInt& o) const { return X == o.X && Y == o.Y && (Y == 0 || t == o.t); }

// ---------------------------------------------------------------- constants

MeasureConstants MeasureConstants::from_table(u64 n) {
  const auto row = table_row(n);
  if (!row) fail(ErrorKind::Domain, "no table row for n = " + std::to_string(n));
  MeasureConstants k;
  const double inf = HUGE_VAL;
  // printed values are exact decimals; stay on the large side of them
  k.log_cn = std::nextafter(std::nextafter(std::log(row->cn()), inf), inf);
  k.log_dn = std::nextafter(row->log_D1n, inf);
  k.source = "table:" + std::to_string(n);
  return k;
}

MeasureConstants MeasureConstants::from_cert(const ConstantsCert& c) {
  MeasureConstants k;
  k.log_cn = c.log_cn;
  k.log_dn = c.log_dn;
  k.source = "cert";
  return k;
}

MeasureConstants MeasureConstants::inline_values(double cn, double log_dn) {
  if (!(cn >= 1) || !(log_dn > 0)) fail(ErrorKind::Domain, "constants need C_n >= 1 and log D_n > 0");
  MeasureConstants k;
  k.log_cn = std::nextafter(std::log(cn), HUGE_VAL);
  k.log_dn = log_dn;
  k.source = "inline";
  return k;
}

const char* to_string(MeasureCase c) { return c == MeasureCase::Rational ? "rational" : "unit"; }

// ---------------------------------------------------------------- inputs

MeasureInput check_measure_input(const QuadInt& a, const QuadInt& b, long m, long n) {
  HypgIndex{m, n, 0}.validate();
  if (a.X == 0 && a.Y == 0) fail(ErrorKind::Domain, "a must be nonzero");
  if (b.X == 0 && b.Y == 0) fail(ErrorKind::Domain, "b must be nonzero");
  MeasureInput in;
  in.a = a;
  in.b = b;
  in.m = m;
  in.n = n;
  const QuadNum A = a.num(), B = b.num();
  in.ratio = A / B;
  const QuadNum inv = B / A;
  if (inv.is_rational()) {
    if (!(inv.u > 0 && inv.u < 1)) fail(ErrorKind::Domain, "b/a must lie in (0, 1), got " + inv.str());
    in.kind = MeasureCase::Rational;
  } else {
    const mpz_class na = a.norm(), nd = (A - B).norm().get_num();
    if (na != b.norm()) fail(ErrorKind::Domain, "b/a is neither rational nor of modulus 1");
    if (!(nd > 0 && nd < na)) fail(ErrorKind::Domain, "|b/a - 1| must lie in (0, 1)");
    in.kind = MeasureCase::Unit;
  }
  const QuadNum diff = A - B;
  const QuadNum d = diff * diff;
  if (!d.is_rational() || d.u.get_den() != 1)
    fail(ErrorKind::Domain, "d = (a-b)^2 = " + d.str() + " is not a rational integer");
  if (!d.u.get_num().fits_slong_p()) fail(ErrorKind::Domain, "d = (a-b)^2 is too large");
  in.d = d.u.get_num().get_si();
  return in;
}

// ---------------------------------------------------------------- measure

namespace {

// Values carried at `bits` are trusted to 2^-(bits-40) relative to `scale`.
struct Rounder {
  mpfr_prec_t bits;
  Real eps;
  explicit Rounder(mpfr_prec_t b) : bits(b), eps(b) { mpfr_set_ui_2exp(eps.get(), 1, -(b - 40), MPFR_RNDU); }
  Real slack(const Real& x, const Real& scale) const { return (abs(x) + scale) * eps; }
  double up(const Real& x, const Real& scale) const { return (x + slack(x, scale)).to_double(MPFR_RNDU); }
  double down(const Real& x, const Real& scale) const { return (x - slack(x, scale)).to_double(MPFR_RNDD); }
};

Real log_abs_num(const QuadNum& z, mpfr_prec_t bits) {
  return log(Real(z.norm(), bits)) / Real(2L, bits);
}

struct RootPair {
  Real lo, hi;  // min and max of |sqrt a -+ sqrt b|
};

RootPair root_pair(const QuadInt& a, const QuadInt& b, mpfr_prec_t bits) {
  const Complex sa = sqrt(a.to_complex(bits)), sb = sqrt(b.to_complex(bits));
  Real x = abs(sa - sb), y = abs(sa + sb);
  if (y < x) std::swap(x, y);
  return {x, y};
}

}  // namespace

MeasureResult compute_measure(const QuadInt& a, const QuadInt& b, long m, long n, const MeasureConstants& k,
                              int prec) {
  const MeasureInput in = check_measure_input(a, b, m, n);
  prec = std::max(prec, 50);
  const mpfr_prec_t wp = digits_to_bits(prec + 30);
  const Rounder rd(wp);

  MeasureResult out;
  out.a = a.str();
  out.b = b.str();
  out.m = m;
  out.n = n;
  out.kind = in.kind;
  out.d = in.d;
  out.constants = k;
  out.prec = prec;

  const PrimePowerReal Nd = n_dn(in.d, static_cast<u64>(n));
  out.ndn = Nd.str();
  out.ndn_value = Nd.value();
  const Real logN = log(Nd.value(wp));
  const Real logD(k.log_dn, wp), logC(k.log_cn, wp);
  const RootPair rp = root_pair(a, b, wp);
  const Real two(2L, wp);
  const Real log_lo = log(rp.lo), log_hi = log(rp.hi);

  const Real logE = logN - logD - two * log_lo;
  const Real logQ = logD - logN + two * log_hi;
  const Real scale = Real(100L, wp) + abs(logN) + abs(logD) + abs(logC) + abs(log_lo) + abs(log_hi);

  out.valid = logE - rd.slack(logE, scale) > Real(0L, wp);
  out.E = rd.down(exp(logE - rd.slack(logE, scale)), scale);
  out.Q = rd.up(exp(logQ + rd.slack(logQ, scale)), scale);

  const Real log18(std::string("18.4"), wp);
  out.log_two_l0_E = rd.up(log(log18) + logC + logN, scale);

  if (in.kind == MeasureCase::Unit) {
    const Complex ba = (b.num() / a.num()).to_complex(wp);
    const Real phi = arg(ba);
    out.phi = phi.to_double();
    const Real rhs = Real(std::string("1.22"), wp) * exp(log_abs_num(a.num() - b.num(), wp) - log_abs_num(b.num(), wp));
    out.phi_ok = abs(phi) <= rhs;
  }

  if (out.valid) {
    const Real num = logQ + rd.slack(logQ, scale);
    const Real den = num.sign() >= 0 ? logE - rd.slack(logE, scale) : logE + rd.slack(logE, scale);
    out.kappa = rd.up(num / den, scale);
    const Real kap(*out.kappa, wp);
    const Real log_a = log_abs_num(a.num(), wp);
    const Real logn = log(Real(n, wp));
    const Real logc = log(Real(3L, wp)) + log_a + logC + kap * (log(Real(20L, wp)) + logC) + max(logn, kap * logN);
    out.log_c = rd.up(logc, scale);
    const Real c = exp(Real(*out.log_c, wp));
    if (std::isfinite(c.to_double(MPFR_RNDU))) out.c = rd.up(c, Real(0L, wp));
    const Real lemma = log(Real(std::string("2.144"), wp)) + logC + kap * (log(log18) + logC + logN);
    out.log_c_lemma = rd.up(lemma, scale);
  }
  return out;
}

LemmaConstants lemma_approx_c(const ApproxSeqParams& p) {
  if (!(p.E > 1)) fail(ErrorKind::Domain, "lemma hypothesis E > 1 fails");
  if (!(p.Q > 1)) fail(ErrorKind::Domain, "lemma hypothesis Q > 1 fails");
  if (!(p.k0 > 0) || !(p.l0 > 0)) fail(ErrorKind::Domain, "lemma hypothesis k0, l0 > 0 fails");
  const mpfr_prec_t bits = 256;
  const Real E(p.E, bits), Q(p.Q, bits), k0(p.k0, bits), l0(p.l0, bits), two(2L, bits);
  const Real tle = two * l0 * E;
  if (tle < Real(1L, bits)) fail(ErrorKind::Domain, "lemma hypothesis 2 l0 E >= 1 fails");
  const Real kappa = log(Q) / log(E);
  LemmaConstants out;
  out.kappa = kappa.to_double(MPFR_RNDU);
  const Real c = two * k0 * exp(Real(out.kappa, bits) * log(tle));
  out.c = c.to_double(MPFR_RNDU);
  out.c_no_excl = (c * Q).to_double(MPFR_RNDU);
  return out;
}

// ---------------------------------------------------------------- approximants

ApproximantPair approximants(const QuadInt& a, const QuadInt& b, long m, long n, long r) {
  const MeasureInput in = check_measure_input(a, b, m, n);
  const HypgIndex idx{m, n, r};
  idx.validate();
  const NumeratorResult nr = n_dmnr(idx, in.d);
  ApproximantPair out;
  out.idx = idx;
  out.D = nr.poly.common_denominator;
  out.N = nr.n_value;
  const std::vector<mpz_class> coef = shifted_coefficients(idx, out.D);
  const QuadNum A = a.num(), B = b.num(), diff = A - B, ndiff = -diff;
  // q = sum c_j (a-b)^j a^{r-j},  p = sum c_j (b-a)^j b^{r-j}
  std::vector<QuadNum> pa(r + 1), pb(r + 1);
  pa[0] = QuadNum(1, 0, A.t);
  pb[0] = QuadNum(1, 0, B.t);
  for (long j = 1; j <= r; ++j) {
    pa[j] = pa[j - 1] * A;
    pb[j] = pb[j - 1] * B;
  }
  QuadNum q(0, 0, A.t), p(0, 0, A.t), dq(1, 0, A.t), dp(1, 0, A.t);
  for (long j = 0; j <= r; ++j) {
    const QuadNum c(mpq_class(coef[j]), 0, A.t);
    q = q + c * dq * pa[r - j];
    p = p + c * dp * pb[r - j];
    dq = dq * diff;
    dp = dp * ndiff;
  }
  const mpq_class N(out.N);
  out.q = QuadNum(q.u / N, q.v / N, q.t);
  out.p = QuadNum(p.u / N, p.v / N, p.t);
  if (!out.q.is_integral() || !out.p.is_integral())
    fail(ErrorKind::PrecisionFailure, "internal: approximants not integral at " + idx.str());
  return out;
}

bool nonvanishing(const ApproximantPair& x, const ApproximantPair& y) { return !(x.p * y.q == y.p * x.q); }

QEstimate q_estimate(const QuadInt& a, const QuadInt& b, long m, long n, long r, const MeasureConstants& k) {
  const MeasureInput in = check_measure_input(a, b, m, n);
  const ApproximantPair ap = approximants(a, b, m, n, r);
  const mpfr_prec_t wp = digits_to_bits(60);
  const Real R(r, wp);
  const Real logq = log_abs_num(ap.q, wp);
  const Real logDN = log(Real(ap.D, wp)) - log(Real(ap.N, wp));
  const QuadNum ba = b.num() / a.num();
  const Real lower = logDN + R * (log_abs_num(a.num(), wp) + log(abs(Real(mpq_class(1 + ba.u), wp))));
  const Real logN = log(n_dn(in.d, static_cast<u64>(n)).value(wp));
  const RootPair rp = root_pair(a, b, wp);
  const Real upper = log(Real(std::string("1.072"), wp)) + Real(k.log_cn, wp) +
                     R * (Real(k.log_dn, wp) - logN) + Real(2L, wp) * R * log(rp.hi);
  QEstimate out;
  out.log_lower = lower.to_double();
  out.log_q = logq.to_double();
  out.log_upper = upper.to_double();
  out.lower_ok = lower <= logq;
  out.upper_ok = logq < upper;
  return out;
}

RemainderBracket remainder_bracket(const QuadInt& a, const QuadInt& b, long m, long n, long r,
                                   const MeasureConstants& k, int prec) {
  const MeasureInput in = check_measure_input(a, b, m, n);
  const ApproximantPair ap = approximants(a, b, m, n, r);
  const QuadNum A = a.num(), B = b.num(), diff = A - B;

  const mpfr_prec_t lp = digits_to_bits(40);
  const Real lower_est = log_abs_num(diff, lp) - log(Real(60 * n, lp)) - log_abs_num(A, lp) - log_abs_num(ap.q, lp);
  // |q theta| ~ |q|, the remainder is above `lower`: cancellation costs their ratio
  const double lost = (log_abs_num(ap.q, lp) - lower_est).to_double() / std::log(10.0);
  const int digits = prec + static_cast<int>(std::ceil(std::max(lost, 0.0))) + 30;

  auto actual_at = [&](mpfr_prec_t bits) {
    const Complex theta = pow(in.ratio.to_complex(bits), Real(mpq_class(m, n), bits));
    return abs(ap.q.to_complex(bits) * theta - ap.p.to_complex(bits));
  };
  const mpfr_prec_t b1 = digits_to_bits(digits), b2 = b1 + 64;
  const Real r1 = actual_at(b1), r2 = actual_at(b2);
  if (r2.is_zero() || abs(r1 - r2) > r2 * pow10(-prec, b2))
    fail(ErrorKind::PrecisionFailure, "remainder unstable across precisions at " + ap.idx.str());

  const mpfr_prec_t wp = b2;
  const Real R(r, wp), two(2L, wp);
  const Real logC(k.log_cn, wp), logD(k.log_dn, wp);
  const Real logN = log(n_dn(in.d, static_cast<u64>(n)).value(wp));
  const RootPair rp = root_pair(a, b, wp);
  const Real log_actual = log(r2);
  const Real lower = log_abs_num(diff, wp) - log(Real(60 * n, wp)) - log_abs_num(A, wp) - log_abs_num(ap.q, wp);
  const Real upper = log(Real(std::string("1.22"), wp)) + log_abs_num(diff, wp) - log_abs_num(B, wp) + logC +
                     R * (logD - logN) + two * R * log(rp.lo);
  const Real logE = logN - logD - two * log(rp.lo);
  const Real l0 = log(Real(std::string("9.2"), wp)) + logC + logD + two * log(rp.lo);

  RemainderBracket out;
  out.log_lower = lower.to_double();
  out.log_actual = log_actual.to_double();
  out.log_upper = upper.to_double();
  out.lower_ok = lower < log_actual;
  out.upper_ok = log_actual < upper;
  const Real l0er = l0 - R * logE;
  out.log_l0_E_r = l0er.to_double();
  out.lemma_ok = log_actual <= l0er;
  if (in.kind == MeasureCase::Unit) {
    const Real phi = arg((B / A).to_complex(wp));
    out.phi = phi.to_double();
    out.phi_ok = abs(phi) <= Real(std::string("1.22"), wp) * exp(log_abs_num(diff, wp) - log_abs_num(B, wp));
  }
  return out;
}

// ---------------------------------------------------------------- convergents

namespace {

bool perfect_power(const mpz_class& x, long n) {
  mpz_class r;
  return mpz_root(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
}

Real root_value(const mpq_class& ratio, long m, long n, mpfr_prec_t bits) {
  return pow(Real(ratio, bits), Real(mpq_class(m, n), bits));
}

std::vector<mpz_class> cf_at(const mpq_class& ratio, long m, long n, const mpz_class& H, mpfr_prec_t bits) {
  Real x = root_value(ratio, m, n, bits);
  std::vector<mpz_class> out;
  mpz_class q1 = 1, q2 = 0;  // q_{k-1}, q_{k-2}
  for (int guard = 0; guard < 100'000; ++guard) {
    const mpz_class ak = to_mpz_floor(x);
    const mpz_class q = ak * q1 + q2;
    if (q > H) break;
    out.push_back(ak);
    q2 = q1;
    q1 = q;
    const Real frac = x - Real(ak, bits);
    if (frac.is_zero()) break;
    x = Real(1L, bits) / frac;
  }
  return out;
}

}  // namespace

std::vector<mpz_class> root_partial_quotients(const mpq_class& ratio, long m, long n, const mpz_class& H, int prec) {
  if (ratio <= 0) fail(ErrorKind::Domain, "continued fractions need a positive ratio");
  mpz_class nm, dm;
  mpz_pow_ui(nm.get_mpz_t(), ratio.get_num().get_mpz_t(), static_cast<unsigned long>(m));
  mpz_pow_ui(dm.get_mpz_t(), ratio.get_den().get_mpz_t(), static_cast<unsigned long>(m));
  if (perfect_power(nm, n) && perfect_power(dm, n)) fail(ErrorKind::Domain, "(a/b)^{m/n} is rational");
  const auto lo = cf_at(ratio, m, n, H, digits_to_bits(prec));
  const auto hi = cf_at(ratio, m, n, H, digits_to_bits(2 * prec));
  if (lo != hi) fail(ErrorKind::PrecisionFailure, "continued fraction differs between " + std::to_string(prec) +
                                                      " and " + std::to_string(2 * prec) + " digits");
  return hi;
}

ConvergentReport verify_against_convergents(const QuadInt& a, const QuadInt& b, long m, long n,
                                            const MeasureResult& mr, const mpz_class& H, int prec) {
  const MeasureInput in = check_measure_input(a, b, m, n);
  if (in.kind != MeasureCase::Rational) fail(ErrorKind::Domain, "convergent check needs b/a rational");
  if (!mr.valid || !mr.kappa || !mr.log_c) fail(ErrorKind::Domain, "convergent check needs a valid measure");
  const mpq_class ratio = in.ratio.u;

  ConvergentReport rep;
  rep.prec = prec;
  rep.partial_quotients = root_partial_quotients(ratio, m, n, H, prec);
  const mpfr_prec_t bits = digits_to_bits(2 * prec);
  const Real theta = root_value(ratio, m, n, bits);
  const Real logc(*mr.log_c, bits), k1(*mr.kappa + 1, bits);
  mpz_class p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  rep.all_pass = true;
  rep.min_margin = HUGE_VAL;
  for (const mpz_class& ak : rep.partial_quotients) {
    const mpz_class p = ak * p1 + p2, q = ak * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    const Real gap = abs(theta - Real(mpq_class(p, q), bits));
    const Real margin = log(gap) + logc + k1 * log(Real(q, bits));
    Convergent c{p, q, margin.to_double(MPFR_RNDD)};
    rep.all_pass = rep.all_pass && margin.sign() > 0;
    rep.min_margin = std::min(rep.min_margin, c.margin);
    rep.convergents.push_back(std::move(c));
  }
  if (a.is_rational() && b.is_rational() && a.X == b.X + 2 && n % 2 == 1 && m == 1) {
    const mpz_class av = a.X / 2;
    rep.a1_expected = n * av - (n + 3) / 2;
    const auto pq = root_partial_quotients(ratio, 1, n, rep.a1_expected * 2 + 2, prec);
    rep.a1_law = pq.size() > 1 && pq[1] == rep.a1_expected;
  }
  return rep;
}

}  // namespace hm
