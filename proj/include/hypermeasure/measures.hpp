#pragma once
// Measure constants for theta = (a/b)^{m/n}, the approximant sequence p_r/q_r
// behind them, and checks of both against exact and continued-fraction data.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "hypermeasure/arith.hpp"
#include "hypermeasure/constants_pipeline.hpp"
#include "hypermeasure/index.hpp"
#include "hypermeasure/real.hpp"

namespace hm {

// Element u + v sqrt(-t) of Q(sqrt(-t)). A rational element (v = 0) mixes
// with any t.
struct QuadNum {
  mpq_class u = 0, v = 0;
  i64 t = 1;

  QuadNum() = default;
  QuadNum(mpq_class u_, mpq_class v_ = 0, i64 t_ = 1);
  bool is_rational() const { return v == 0; }
  bool is_zero() const { return u == 0 && v == 0; }
  mpq_class norm() const { return u * u + t * v * v; }
  bool is_integral() const;
  Complex to_complex(mpfr_prec_t bits) const;
  std::string str() const;
  bool operator==(const QuadNum& o) const;
};

QuadNum operator+(const QuadNum& a, const QuadNum& b);
QuadNum operator-(const QuadNum& a, const QuadNum& b);
QuadNum operator-(const QuadNum& a);
QuadNum operator*(const QuadNum& a, const QuadNum& b);
QuadNum operator/(const QuadNum& a, const QuadNum& b);
QuadNum conj(const QuadNum& a);
QuadNum pow(const QuadNum& a, long k);

// Algebraic integer (X + Y sqrt(-t)) / 2, stored with doubled coordinates so
// the half-integers of t = 3 (mod 4) fields need no special type.
struct QuadInt {
  mpz_class X = 0, Y = 0;
  i64 t = 1;

  static QuadInt integer(const mpz_class& x);
  static QuadInt of(const mpz_class& x, const mpz_class& y, i64 t);            // x + y sqrt(-t)
  static QuadInt halves(const mpz_class& X, const mpz_class& Y, i64 t);        // (X + Y sqrt(-t))/2
  // "x", "x+y√-t", "x-√-t", "y√-t", "x+y*sqrt(-t)", "(X+Y√-t)/2"
  static QuadInt parse(const std::string& s);

  bool is_rational() const { return Y == 0; }
  bool is_half() const { return X % 2 != 0; }
  QuadNum num() const;
  mpz_class norm() const;  // x^2 + t y^2
  Complex to_complex(mpfr_prec_t bits) const { return num().to_complex(bits); }
  std::string str() const;
  bool operator==(const QuadInt& o) const;
};

// Constants C_n, D_n, both as natural logs.
struct MeasureConstants {
  double log_cn = 0;
  double log_dn = 0;
  std::string source;  // "table:n", "cert", "inline"

  // Table-1 (C_{1,n}, log D_{1,n}) of the golden tables, nudged one ulp up.
  static MeasureConstants from_table(u64 n);
  static MeasureConstants from_cert(const ConstantsCert& c);
  static MeasureConstants inline_values(double cn, double log_dn);
  bool operator==(const MeasureConstants&) const = default;
};

enum class MeasureCase { Rational, Unit };
const char* to_string(MeasureCase c);

// Hypotheses on (a, b): same field, b/a rational in (0, 1) or |b/a| = 1 with
// 0 < |b/a - 1| < 1, and d = (a - b)^2 a rational integer.
struct MeasureInput {
  QuadInt a, b;
  long m = 1, n = 3;
  MeasureCase kind = MeasureCase::Rational;
  i64 d = 1;
  QuadNum ratio;  // a / b
};
MeasureInput check_measure_input(const QuadInt& a, const QuadInt& b, long m, long n);

struct MeasureResult {
  std::string a, b;
  long m = 1, n = 3;
  MeasureCase kind = MeasureCase::Rational;
  i64 d = 1;
  double E = 0, Q = 0;  // E rounded down, Q up
  bool valid = false;   // E > 1
  std::optional<double> kappa, c, log_c;  // rounded up; empty when invalid or c overflows
  std::string ndn;      // N_{d,n} as a prime power product
  double ndn_value = 1;
  MeasureConstants constants;
  double log_two_l0_E = 0;  // log(18.4 C_n N_{d,n})
  std::optional<double> log_c_lemma;  // log 2k0 (2 l0 E)^kappa with k0 = 1.072 C_n
  std::optional<double> phi;          // arg(b/a) in the unit case
  bool phi_ok = true;                 // |phi| <= 1.22 |(a-b)/b|
  int prec = 50;
  bool operator==(const MeasureResult&) const = default;
};

MeasureResult compute_measure(const QuadInt& a, const QuadInt& b, long m, long n,
                              const MeasureConstants& k, int prec = 50);

struct ApproxSeqParams {
  double k0 = 1, l0 = 1, E = 2, Q = 2;
};
struct LemmaConstants {
  double kappa = 0;
  double c = 0;           // 2 k0 (2 l0 E)^kappa
  double c_no_excl = 0;   // 2 k0 Q (2 l0 E)^kappa
};
LemmaConstants lemma_approx_c(const ApproxSeqParams& p);

struct ApproximantPair {
  HypgIndex idx;
  QuadNum p, q;
  mpz_class D, N;
  bool exact = true;
};
// Exact p_r, q_r; fails unless both are algebraic integers.
ApproximantPair approximants(const QuadInt& a, const QuadInt& b, long m, long n, long r);
bool nonvanishing(const ApproximantPair& x, const ApproximantPair& y);  // p_r q_s != p_s q_r

// Natural logs of both sides of the q_r estimate and of |q_r| itself.
struct QEstimate {
  double log_lower = 0, log_q = 0, log_upper = 0;
  bool lower_ok = false, upper_ok = false;
  bool ok() const { return lower_ok && upper_ok; }
};
QEstimate q_estimate(const QuadInt& a, const QuadInt& b, long m, long n, long r,
                     const MeasureConstants& k);

struct RemainderBracket {
  double log_lower = 0, log_actual = 0, log_upper = 0;
  bool lower_ok = false, upper_ok = false;
  double log_l0_E_r = 0;  // log(l0 E^-r), l0 = 9.2 C_n D_n |sqrt a - sqrt b|^2
  bool lemma_ok = false;  // actual <= l0 E^-r
  std::optional<double> phi;
  bool phi_ok = true;
  bool ok() const { return lower_ok && upper_ok; }
};
// |q_r (a/b)^{m/n} - p_r| against its two bounds, with at least prec correct
// digits; cross-checked at two working precisions.
RemainderBracket remainder_bracket(const QuadInt& a, const QuadInt& b, long m, long n, long r,
                                   const MeasureConstants& k, int prec = 60);

struct Convergent {
  mpz_class p, q;
  double margin = 0;  // log|theta - p/q| + log c + (kappa+1) log q, > 0 passes
  bool operator==(const Convergent&) const = default;
};
struct ConvergentReport {
  std::vector<mpz_class> partial_quotients;  // a_0, a_1, ... up to the last q <= H
  std::vector<Convergent> convergents;
  bool all_pass = false;
  double min_margin = 0;
  std::optional<bool> a1_law;  // b = a - 1, n odd, m = 1
  mpz_class a1_expected = 0;
  int prec = 200;
};
ConvergentReport verify_against_convergents(const QuadInt& a, const QuadInt& b, long m, long n,
                                            const MeasureResult& mr, const mpz_class& H, int prec = 200);

// Partial quotients of (a/b)^{m/n} for positive rationals, while q <= H, at
// two precisions; fails with PrecisionFailure when they disagree.
std::vector<mpz_class> root_partial_quotients(const mpq_class& ratio, long m, long n,
                                              const mpz_class& H, int prec);

}  // namespace hm
