#pragma once
// Segmented sieve, Chebyshev functions and the epsilon-band envelopes for
// theta(x; n, k).

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hypermeasure/arith.hpp"

namespace hm {

struct SieveConfig {
  u64 x_max = 100'000'000;
  u64 segment_size = 1u << 18;
  int parallelism = 1;
  void validate() const;
};

class PrimeSieve {
 public:
  explicit PrimeSieve(const SieveConfig& cfg);
  u64 ceiling() const { return x_max_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  size_t count_upto(u64 x) const;

  // Process-wide sieve covering at least x; grown on demand, never shrunk.
  static std::shared_ptr<const PrimeSieve> shared(u64 x);

 private:
  u64 x_max_;
  std::vector<std::uint32_t> primes_;
};

// Upper limit for the shared sieve (CeilingExceeded beyond it); at most 2^32 - 1.
void set_sieve_limit(u64 x);
u64 sieve_limit();

void set_default_threads(int threads);
int default_threads();

// Compensated (Neumaier) accumulator in long double.
class CompensatedSum {
 public:
  void add(long double v) {
    long double t = s_ + v;
    if (fabsl(s_) >= fabsl(v)) c_ += (s_ - t) + v;
    else c_ += (v - t) + s_;
    s_ = t;
  }
  long double value() const { return s_ + c_; }

 private:
  long double s_ = 0, c_ = 0;
};

// theta(x; n, k) for every k coprime to n, up to a ceiling. n = 1 gives theta(x).
class ThetaAP {
 public:
  ThetaAP(u64 n, u64 x_max, std::shared_ptr<const PrimeSieve> sieve = nullptr);

  u64 n() const { return n_; }
  u64 phi() const { return phi_; }
  u64 ceiling() const { return x_max_; }
  const std::vector<u64>& residues() const { return residues_; }

  long double theta(long double x, u64 k) const;
  // Sum of log p over primes p = k (mod n) with lo <= p <= hi (integers).
  long double theta_range(u64 lo, u64 hi, u64 k) const;
  const std::vector<std::uint32_t>& class_primes(u64 k) const { return primes_[slot(k)]; }
  const std::vector<long double>& class_cumulative(u64 k) const { return cum_[slot(k)]; }

  // O(1) rank structure for theta at integer x. Build once before sharing
  // the table across threads.
  void build_fast_index();
  bool has_fast_index() const { return !rank_.empty(); }
  long double theta_fast(u64 x, u64 k) const;
  long double theta_range_fast(u64 lo, u64 hi, u64 k) const;  // primes in [lo, hi]

 private:
  size_t slot(u64 k) const;
  u64 n_, phi_, x_max_;
  std::vector<u64> residues_;
  std::vector<int> slot_of_;
  std::vector<std::vector<std::uint32_t>> primes_;
  std::vector<std::vector<long double>> cum_;  // cum[i] = sum_{j <= i} log p_j
  struct Rank {
    std::vector<std::uint64_t> bits;    // bit x set iff x is a prime in the class
    std::vector<std::uint32_t> before;  // class primes below 64*block
  };
  std::vector<Rank> rank_;
  size_t count_upto(size_t s, u64 x) const;
};

long double theta(const ThetaAP& all, long double x);  // all.n() == 1
long double psi(const ThetaAP& all, long double x);
// Direct definition on a sieve, for callers that need a single value.
long double theta_ap(long double x, u64 n, u64 k, const PrimeSieve& sieve);

struct Band {
  long index = 0;
  double eps_lb = 0, eps_ub = 0;
  bool operator==(const Band&) const = default;
};

struct BennettConstants {
  static constexpr double c840 = 840.0;
  static constexpr double c_sqrt = 1.818;
  static constexpr double analytic_from = 1.8e9;
  static constexpr double t12 = 1e12, slope12 = 4.31e-5;
  static constexpr double t13 = 1e13, slope13 = 3.98e-5;
  // Envelope slope valid above analytic_from, or a negative value when not covered.
  static double slope(long double x);
};

enum class Side { UB, LB };

struct ThetaBandTable {
  static constexpr u64 kWidth = 2000;
  static constexpr const char* kBuildVersion = "hypermeasure-bands-1";
  u64 n = 0;
  u64 band_width = kWidth;
  u64 x_max = 0;
  std::vector<Band> bands;  // bands[i-1] is band i; values are suffix maxima

  static long band_of(long double x);  // largest i with 2000(i-1)+1 <= x, at least 1
  double eps(long double x, Side side) const;  // throws EnvelopeGap
  long double envelope(long double x, Side side) const;  // x/phi +- eps x

  std::string to_csv() const;
  std::string meta_json() const;
  static ThetaBandTable from_csv(const std::string& csv, const std::string& meta_json);
  bool operator==(const ThetaBandTable&) const = default;

  u64 phi = 0;
};

ThetaBandTable build_bands(const ThetaAP& ap, u64 x_max);
ThetaBandTable build_bands(u64 n, u64 x_max);
long double theta_envelope(const ThetaBandTable& t, long double x, Side side);

// Largest integer x <= x_max with |theta(x;n,k) - x/phi| >= x/(840 log x) for some k.
u64 breach_point(const ThetaAP& ap, u64 x_max);

}  // namespace hm
