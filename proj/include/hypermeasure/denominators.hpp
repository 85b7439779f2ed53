#pragma once
// D_{m,n,r} (exact lcm of the X coefficient denominators), the content
// N_{d,m,n,r} of D X(1 - sqrt(d) z), and the lower-bound checks on D.

#include <gmpxx.h>

#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypermeasure/arith.hpp"
#include "hypermeasure/index.hpp"

namespace hm {

inline constexpr long kDefaultDenomCap = 5000;

struct DenomResult {
  mpz_class value;
  Factorization factorization;
};

// lcm route; throws CapExceeded above r_cap.
DenomResult d_mnr(const HypgIndex& idx, long r_cap = kDefaultDenomCap);
// Valuation route: v_p(D) = max_k -v_p(c_k), walked over the k where the
// coefficient ratio changes its p-adic valuation. No cap; needs primes <= nr.
Factorization d_mnr_factorization(const HypgIndex& idx);
double log_d_mnr(const HypgIndex& idx);  // from the valuation route
int d_mnr_valuation(const HypgIndex& idx, u64 p);

struct QuadCoeffPoly {
  i64 d0 = 1;  // core(d)
  std::vector<std::pair<mpz_class, mpz_class>> coeffs;  // u_k + v_k sqrt(d0)
  mpz_class common_denominator = 1;
};

struct NumeratorResult {
  mpz_class n_value;
  i64 d1 = 1, d2 = 1;
  QuadCoeffPoly poly;  // X(1 - sqrt(d) z) = poly / common_denominator, common_denominator = D
};

// Integers a_j with D X(1-u) = sum_j a_j u^j, via the hypergeometric
// expansion of X about z = 1.
std::vector<mpz_class> shifted_coefficients(const HypgIndex& idx, const mpz_class& D);

NumeratorResult n_dmnr(const HypgIndex& idx, i64 d, long r_cap = kDefaultDenomCap);
std::pair<i64, i64> d1_d2(i64 d, i64 n);

struct Lb2Check {
  double rhs = 0;
  bool ok = false;
};
Lb2Check denom_lb2_check(const HypgIndex& idx, long r_cap = kDefaultDenomCap);

// pochhammer_ratio > 4^-r sqrt(m/(8nr)), decided exactly (r >= 1). This is
// false for small m/n, so it is a checker, not an assumption.
bool gamma1_check(const HypgIndex& idx);

// (n/4)^r * prod_{p | n} p^{v_p((2r)!) - v_p(r!)}
mpq_class denom_lb1a_bound(const HypgIndex& idx);
// Tabulated c * b^r for 3 <= n <= 8, as exact rationals; false if n has no row.
bool denom_lb1b_bound(long n, long r, mpq_class& out);
bool denom_lb1_check(const HypgIndex& idx, long r_cap = kDefaultDenomCap);

// v_p((2r)!) - v_p(r!), with both Legendre forms cross-checked.
u64 legendre_valuation_gap(u64 p, u64 r);

// Concurrent memo of D factorizations with an optional binary file.
//
// File format (little-endian):
//   magic "HMD1"
//   repeated records:
//     u32 record_length (bytes that follow)
//     i64 m, i64 n, i64 r, u32 count, count x (u64 prime, u32 exponent)
class DenomCache {
 public:
  bool get(const HypgIndex& idx, Factorization& out) const;
  void put(const HypgIndex& idx, const Factorization& f);
  size_t size() const;
  void clear();
  void save(const std::string& path) const;
  void load(const std::string& path);  // merges into the cache
  static DenomCache& global();

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<HypgIndex, Factorization, HypgIndexHash> map_;
};

}  // namespace hm
