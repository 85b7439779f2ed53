#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hypermeasure/error.hpp"
#include "hypermeasure/prime_tables.hpp"

using namespace hm;

namespace {

// Plain Eratosthenes, written independently of the segmented sieve.
std::vector<bool> composite_upto(u64 x) {
  std::vector<bool> c(x + 1, false);
  c[0] = c[1] = true;
  for (u64 i = 2; i * i <= x; ++i)
    if (!c[i])
      for (u64 j = i * i; j <= x; j += i) c[j] = true;
  return c;
}

long double theta_oracle(u64 x, u64 n, u64 k, const std::vector<bool>& comp) {
  long double s = 0;
  for (u64 p = 2; p <= x; ++p)
    if (!comp[p] && p % n == k % n) s += logl(static_cast<long double>(p));
  return s;
}

}  // namespace

TEST_CASE("segmented sieve agrees with a plain sieve for any segment and thread count") {
  const u64 X = 1'000'000;
  auto comp = composite_upto(X);
  std::vector<std::uint32_t> want;
  for (u64 p = 2; p <= X; ++p)
    if (!comp[p]) want.push_back(static_cast<std::uint32_t>(p));
  CHECK(want.size() == 78498);
  for (int threads : {1, 3}) {
    SieveConfig cfg;
    cfg.x_max = X;
    cfg.segment_size = 1 << 16;
    cfg.parallelism = threads;
    PrimeSieve s(cfg);
    CHECK(s.primes() == want);
    CHECK(s.count_upto(100) == 25);
    CHECK(s.count_upto(X) == 78498);
  }
  SieveConfig bad;
  bad.x_max = 100;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("theta and psi at small arguments") {
  ThetaAP all(1, 100'000);
  CHECK(theta(all, 10) == doctest::Approx(std::log(210.0)).epsilon(1e-15));
  CHECK(theta(all, 10.9L) == doctest::Approx(std::log(210.0)).epsilon(1e-15));
  // psi(8) = log lcm(1..8) = log 840
  CHECK(psi(all, 8) == doctest::Approx(std::log(840.0)).epsilon(1e-15));
  CHECK(psi(all, 27) == doctest::Approx(std::log(80313433200.0)).epsilon(1e-14));
  CHECK(theta(all, 1.5L) == 0);
}

TEST_CASE("theta in progressions: table, direct sum, fast index and oracle agree") {
  const u64 X = 200'000;
  auto comp = composite_upto(X);
  auto sieve = PrimeSieve::shared(X);
  std::mt19937_64 rng(7);
  for (u64 n : {3u, 4u, 5u, 8u, 12u}) {
    ThetaAP ap(n, X, sieve);
    ap.build_fast_index();
    for (int i = 0; i < 40; ++i) {
      const u64 x = std::uniform_int_distribution<u64>(1, X)(rng);
      for (u64 k : ap.residues()) {
        const long double want = theta_oracle(x, n, k, comp);
        CHECK(static_cast<double>(ap.theta(x, k)) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
        CHECK(static_cast<double>(ap.theta_fast(x, k)) == doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
        CHECK(static_cast<double>(theta_ap(x, n, k, *sieve)) ==
              doctest::Approx(static_cast<double>(want)).epsilon(1e-14));
        const u64 lo = x / 3 + 1;
        CHECK(static_cast<double>(ap.theta_range_fast(lo, x, k)) ==
              doctest::Approx(static_cast<double>(ap.theta_range(lo, x, k))).epsilon(1e-13));
      }
    }
    CHECK_THROWS_AS(ap.theta(X + 1, 1), Error);
    CHECK_THROWS_AS(ap.theta(10, n), Error);  // residue 0 is not coprime
  }
}

TEST_CASE("band lookup boundaries") {
  CHECK(ThetaBandTable::band_of(1) == 1);
  CHECK(ThetaBandTable::band_of(2000) == 1);
  CHECK(ThetaBandTable::band_of(2000.5L) == 1);
  CHECK(ThetaBandTable::band_of(2001) == 2);
  CHECK(ThetaBandTable::band_of(4001) == 3);
}

TEST_CASE("band envelopes contain theta at every integer and every left limit") {
  const u64 X = 200'000;
  auto sieve = PrimeSieve::shared(X);
  for (u64 n : {3u, 4u, 5u, 7u, 12u}) {
    ThetaAP ap(n, X, sieve);
    const ThetaBandTable t = build_bands(ap, X);
    REQUIRE(t.bands.size() == 100);
    for (size_t i = 1; i < t.bands.size(); ++i) {
      CHECK(t.bands[i].eps_ub <= t.bands[i - 1].eps_ub);
      CHECK(t.bands[i].eps_lb <= t.bands[i - 1].eps_lb);
    }
    for (u64 k : ap.residues()) {
      const auto& ps = ap.class_primes(k);
      const auto& cum = ap.class_cumulative(k);
      size_t j = 0;
      long double th = 0;
      long bad = 0;
      for (u64 x = 1; x <= X; ++x) {
        const long double before = th;  // theta(x^-)
        while (j < ps.size() && ps[j] == x) th = cum[j++];
        if (th > t.envelope(x, Side::UB)) ++bad;
        if (th < t.envelope(x, Side::LB)) ++bad;
        if (x > 1 && before < t.envelope(static_cast<long double>(x) - 1e-9L, Side::LB)) ++bad;
      }
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("band tables: CSV round trip, gap errors and analytic tail") {
  const ThetaBandTable t = build_bands(5, 50'000);
  const ThetaBandTable back = ThetaBandTable::from_csv(t.to_csv(), t.meta_json());
  CHECK(back == t);
  CHECK(t.to_csv().rfind("n,band_index,x_lo,x_hi,eps_lb,eps_ub\n5,1,1,2000,", 0) == 0);
  CHECK_THROWS_AS(t.eps(60'000, Side::UB), Error);
  try {
    t.eps(1e6, Side::LB);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnvelopeGap);
  }
  CHECK(t.eps(2e9, Side::UB) == doctest::Approx(1 / (840 * std::log(2e9))));
  CHECK(t.eps(5e12, Side::UB) == 4.31e-5);
  CHECK(t.eps(2e13, Side::LB) == 3.98e-5);
  std::string meta = t.meta_json();
  meta.replace(meta.find("bands-1"), 7, "bands-0");
  CHECK_THROWS_AS(ThetaBandTable::from_csv(t.to_csv(), meta), Error);
}

TEST_CASE("breach point matches a brute-force scan") {
  const u64 X = 60'000;
  auto comp = composite_upto(X);
  for (u64 n : {3u, 4u, 10u}) {
    ThetaAP ap(n, X);
    const u64 bp = breach_point(ap, X);
    CHECK(bp == breach_point(ap, X));
    // brute force over every integer x, using theta(x) and the left limit
    const long double inv_phi = 1.0L / ap.phi();
    u64 want = 0;
    for (u64 k : ap.residues()) {
      long double th = 0;
      for (u64 x = 2; x <= X; ++x) {
        if (!comp[x] && x % n == k) th += logl(static_cast<long double>(x));
        const long double h = x / (840.0L * logl(static_cast<long double>(x)));
        if (fabsl(th - x * inv_phi) >= h) want = std::max(want, x);
      }
    }
    CHECK(bp == want);
    CHECK(bp > 0);
  }
}

TEST_CASE("compensated sum keeps small terms") {
  CompensatedSum s;
  s.add(1e20L);
  for (int i = 0; i < 1000; ++i) s.add(1.0L);
  s.add(-1e20L);
  CHECK(static_cast<double>(s.value()) == 1000.0);
}
