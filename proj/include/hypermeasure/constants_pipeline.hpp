#pragma once
// The two constants of the master inequality
//   Gamma-term * D_{m,n,r} / N_{d,m,n,r} < C_n (D_n / N_{d,n})^r,
// chosen analytically (D_n) and then swept exhaustively (C_n).
// All sizes are carried as natural logarithms.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypermeasure/arith.hpp"
#include "hypermeasure/denominators.hpp"
#include "hypermeasure/index.hpp"
#include "hypermeasure/prime_tables.hpp"
#include "hypermeasure/real.hpp"

namespace hm {

// prod p^{e_p} with exact rational exponents.
struct PrimePowerReal {
  std::map<u64, mpq_class> factors;
  long double log() const;
  double value() const;
  Real value(mpfr_prec_t bits) const;
  std::string str() const;
  bool operator==(const PrimePowerReal& o) const { return factors == o.factors; }
};

PrimePowerReal mu_n(u64 n);            // prod_{p|n} p^{1/(p-1)}
PrimePowerReal n_dn(i64 d, u64 n);     // prod_{p|n} p^{min(v_p(d)/2, v_p(n)+1/(p-1))}
double log_n_mu_n(u64 n);
double chud_rate(u64 n);               // pi/phi(n) * sum cot(pi j/n), (j,n)=1, j <= n/2

// log of the bound on N_{d,n}^r / N_{d,m,n,r}: the d1/d2 product form when d
// is known, otherwise n mu_n r^omega(n).
double numerator_bound(std::optional<i64> d, u64 n, long r);
// d-free form of the product bound: (r odd ? n : 1) prod_{p|n} p^{r/(p-1) - v_p(r!)}.
double numerator_bound_dfree(u64 n, long r);
// Exact log(N_{d,n}^r / N_{d,m,n,r}); without d, the maximum over all d.
double numerator_exact(const HypgIndex& idx, std::optional<i64> d, long r_cap = kDefaultDenomCap);

// (n/2) e^{1/4} sqrt(r)
double gamma_term_bound(u64 n, long r);
struct GammaTerms {
  mpq_class middle;  // prod_{k<=r} kn/(kn-m)
  mpq_class upper;   // prod_{k<=r} (kn+m)/(kn)
  mpq_class max() const;  // max(1, middle, upper)
};
GammaTerms gamma_terms_exact(const HypgIndex& idx);
double gamma_terms_log(const HypgIndex& idx);  // log max(1, middle, upper)

mpz_class ds_bound(u64 n, long r);      // prod_{p <= sqrt(nr)} p^{floor(log(nr)/log p)}
double ds_bound_log(u64 n, long r);
double ds_bound_analytic(u64 n, long r);  // log: 2.033 x^{1/2} + 1.017 x^{1/3} + 4.156 x^{1/4}, x = nr
double ds_exact_log(const HypgIndex& idx);  // log of the p <= sqrt(nr) part of D
double s_bound(u64 n, long r);          // log S(n,r)

// Largest N with nr/(nN + n/2) >= sqrt(nr); 0 when none.
long dl_max_valid_n(u64 n, long r);
double dl_bound(u64 n, long r, long N, const ThetaBandTable& bands);  // log D^(L)(N,n,r)
// log D^(L)(N,n,r) for N = 1..N_max, entries for invalid N are NaN.
std::vector<double> dl_bound_all(u64 n, long r, long N_max, const ThetaBandTable& bands);

// Product of the primes p > sqrt(nr) dividing D_{m,n,r}, from the residue and
// interval criterion (no factorisation of D involved).
mpz_class dl_exact(const HypgIndex& idx);
double dl_exact_log(const HypgIndex& idx, const ThetaAP& ap);  // ap.n() == idx.n

struct Grid {
  long r_step = 10'000;
  long r_max = 1'000'000;
  long N_max = 50;
  bool operator==(const Grid&) const = default;
};

struct DnChoice {
  double log_dn = 0;   // minimum rounded outward
  double min_ratio = 0;
  long r_comp = 0;
  long N = 0;
  bool below_chud_floor = false;  // log_dn < chud_rate - 0.05
};
DnChoice choose_dn(u64 n, const Grid& grid, const ThetaBandTable& bands);

struct SweepConfig {
  long numerator_cap = 2000;  // exact numerators only up to here
  std::vector<long> m_values;  // empty: every admissible m
  int threads = 0;             // 0: default_threads()
};

struct ConstantsCert {
  u64 n = 0;
  std::optional<i64> d;
  double log_dn = 0;
  double log_cn = 0;
  double cn = 1;
  long r_comp = 0;
  long n_chosen = 0;
  long m_max = 0, r_max = 0;
  std::string evidence_hash;
  Grid grid;
  bool analytic_ok = false;
  long points = 0, escalations = 0;
  long numerator_cap = 0;
  std::vector<long> m_values;
  std::string path = "pipeline";  // or "baker"
  bool operator==(const ConstantsCert&) const = default;
};

// Exhaustive sweep over admissible m and 0 <= r < r_max. n_chosen and the
// analytic fields are left for the caller.
ConstantsCert verify_small_r(u64 n, double log_dn, std::optional<i64> d, long r_max,
                             const SweepConfig& cfg = {});

struct PipelineConfig {
  Grid grid;
  SweepConfig sweep;
};
ConstantsCert run_pipeline(u64 n, std::optional<i64> d, const PipelineConfig& cfg = {});

// Upper estimate of log(LHS) - r log D_n + r log N_{d,n} at one point, exact
// in every factor where the caps allow.
double point_value(const HypgIndex& idx, double log_dn, std::optional<i64> d, long numerator_cap);

struct ReverifyReport {
  int samples = 0;
  int failures = 0;
  double worst_gap = 0;  // max over samples of value - log_cn (negative when sound)
  long worst_m = 0, worst_r = 0;
};
ReverifyReport reverify(const ConstantsCert& cert, int samples, std::uint64_t seed);

struct EscalationReport {
  long checked = 0;
  long numerator_fail = 0, small_prime_fail = 0, large_prime_fail = 0;
  bool ok() const { return numerator_fail == 0 && small_prime_fail == 0 && large_prime_fail == 0; }
};
// exact <= estimate for the numerator, small-prime and large-prime parts,
// for every admissible m and 1 <= r <= r_max.
EscalationReport escalation_check(u64 n, long r_max, const ThetaBandTable& bands);

struct BakerConstants {
  double cn = 0;
  double log_dn = 0;
};
BakerConstants baker_fallback(u64 n, i64 d);  // needs d2 = 1
// max over the given points of point_value - log n, with the exact numerator.
double baker_check(u64 n, i64 d, const std::vector<long>& m_values, long r_max);

}  // namespace hm
