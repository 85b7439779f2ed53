#include <numeric>
#include <random>

#include "doctest.h"
#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"

using namespace hm;

namespace {

// Pochhammer product (x)_k over Q, computed without the recurrence.
mpq_class poch(const mpq_class& x, long k) {
  mpq_class p = 1;
  for (long j = 0; j < k; ++j) p *= x + j;
  return p;
}

mpq_class direct_coeff(long m, long n, long r, long k) {
  mpq_class nu(m, n);
  nu.canonicalize();
  mpq_class fact = poch(mpq_class(1), k);
  return poch(mpq_class(-r), k) * poch(mpq_class(-r) - nu, k) / (poch(1 - nu, k) * fact);
}

// Truncated 2F1(a,b;c;x) series with a geometric tail bound; real x, |x| < 1/2.
Real f21_series(const mpq_class& a, const mpq_class& b, const mpq_class& c, const Real& x) {
  const mpfr_prec_t bits = x.bits();
  Real sum(1L, bits), term(1L, bits);
  const Real eps = pow10(-(long)(bits / 3.33) - 5, bits);
  for (long k = 0; k < 100000; ++k) {
    mpq_class ratio = (a + k) * (b + k) / ((c + k) * (k + 1));
    term = term * Real(ratio, bits) * x;
    sum += term;
    if (abs(term) < eps && k > 10) break;
  }
  return sum;
}

std::vector<HypgIndex> admissible(long n_max, long r) {
  std::vector<HypgIndex> out;
  for (long n = 3; n <= n_max; ++n)
    for (long m = 1; 2 * m < n; ++m)
      if (std::gcd(m, n) == 1) out.push_back({m, n, r});
  return out;
}

}  // namespace

TEST_CASE("x_poly matches closed forms") {
  CHECK(x_poly({1, 3, 0}).c == std::vector<mpq_class>{1});
  for (auto idx : admissible(15, 1)) {
    RatPoly p = x_poly(idx);
    mpq_class lead(idx.n + idx.m, idx.n - idx.m);
    lead.canonicalize();
    REQUIRE(p.degree() == 1);
    CHECK(p.c[0] == 1);
    CHECK(p.c[1] == lead);
  }
  // (1,4,2): exact Pochhammer products and a 200-digit evaluation agree
  RatPoly p = x_poly({1, 4, 2});
  const mpfr_prec_t b = digits_to_bits(200);
  for (long k = 0; k <= 2; ++k) {
    CHECK(p.c[k] == direct_coeff(1, 4, 2, k));
    Real num(1L, b);
    for (long j = 0; j < k; ++j) {
      Real nu = Real(1L, b) / Real(4L, b);
      num = num * (Real(j - 2L, b)) * (Real(j - 2L, b) - nu) / ((Real(1L, b) - nu + Real(j, b)) * Real(j + 1L, b));
    }
    CHECK(abs(num - Real(p.c[k], b)) < pow10(-190, b));
  }
  CHECK(p.str() == "1 + 6z + (15/7)z^2");
  CHECK(x_poly({1, 3, 1}).str() == "1 + 2z");
}

TEST_CASE("x_poly rejects bad indices") {
  CHECK_THROWS_AS(x_poly({2, 4, 3}), Error);
  CHECK_THROWS_AS(x_poly({2, 3, 3}), Error);
  CHECK_THROWS_AS(x_poly({1, 2, 1}), Error);
  try {
    x_poly({2, 4, 3});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConstraintViolation);
  }
}

TEST_CASE("direct coefficients for a range of indices") {
  for (long r : {3L, 7L, 12L})
    for (auto idx : admissible(9, r)) {
      RatPoly p = x_poly(idx);
      for (long k = 0; k <= r; ++k) REQUIRE(p.c[k] == direct_coeff(idx.m, idx.n, r, k));
    }
}

TEST_CASE("y_poly is the reversal of x_poly") {
  CHECK(y_poly({1, 3, 0}).c == std::vector<mpq_class>{1});
  for (long r : {1L, 5L, 17L, 60L}) {
    for (auto idx : admissible(10, r)) {
      RatPoly x = x_poly(idx), y = y_poly(idx);
      std::reverse(x.c.begin(), x.c.end());
      REQUIRE(x == y);
      REQUIRE(y_poly(idx).eval(1) == x_poly(idx).eval(1));
    }
  }
}

TEST_CASE("Chu-Vandermonde value at one") {
  CHECK(x_at_one({1, 3, 0}) == 1);
  CHECK(x_at_one({1, 3, 1}) == 3);
  CHECK(x_at_one({1, 3, 2}) == mpq_class(54, 5));
  for (long n = 3; n <= 20; ++n)
    for (long m = 1; 2 * m < n; ++m) {
      if (std::gcd(m, n) != 1) continue;
      for (long r = 0; r <= 40; ++r) {
        HypgIndex idx{m, n, r};
        REQUIRE(x_poly(idx).eval(1) == x_at_one(idx));
      }
    }
}

TEST_CASE("prefactor equals the gamma quotient") {
  CHECK(pochhammer_ratio({1, 3, 0}) == mpq_class(1, 3));
  CHECK(pochhammer_ratio({1, 3, 1}) == mpq_class(2, 27));
  // Gamma(r+1+nu) Gamma(r+1) / (Gamma(nu) Gamma(2r+2)) via MPFR gamma
  const mpfr_prec_t b = digits_to_bits(60);
  for (auto idx : admissible(8, 6)) {
    Real nu(idx.nu(), b), r(idx.r, b);
    auto G = [&](const Real& x) {
      Real g(b);
      mpfr_gamma(g.get(), x.get(), MPFR_RNDN);
      return g;
    };
    Real one(1L, b), two(2L, b);
    Real v = G(r + one + nu) * G(r + one) / (G(nu) * G(two * r + two));
    CHECK(abs(v - Real(pochhammer_ratio(idx), b)) < pow10(-55, b) * v);
  }
}

TEST_CASE("remainder at z=1 is the prefactor") {
  HypgIndex idx{1, 3, 4};
  auto z = ComplexHP::from_double(1, 0, 40);
  Complex R = remainder_eval(idx, z);
  const auto b = R.bits();
  CHECK(abs(R - Complex(Real(pochhammer_ratio(idx), b))) < pow10(-60, b));
}

TEST_CASE("remainder agrees with the hypergeometric series") {
  HypgIndex idx{1, 3, 2};
  auto z = ComplexHP::from_string("0.9", "0", 50);
  QuadratureReport q = hyp2f1_remainder(idx, z);
  const mpfr_prec_t b = digits_to_bits(80);
  Real x = Real(1L, b) - Real(std::string("0.9"), b);
  Real s = f21_series(mpq_class(3) - idx.nu(), 3, 6, x);
  CHECK(abs(q.value.im) < pow10(-45, b));
  CHECK(abs(rebits(q.value.re, b) - s) < pow10(-40, b));
  Complex R = remainder_eval(idx, z);
  CHECK(abs(rebits(R.re, b) - s * Real(pochhammer_ratio(idx), b)) < pow10(-40, b));
}

TEST_CASE("remainder rejects the negative axis") {
  HypgIndex idx{1, 3, 2};
  CHECK_THROWS_AS(remainder_eval(idx, ComplexHP::from_double(-0.5, 0, 40)), Error);
  CHECK_THROWS_AS(ComplexHP::from_double(0.5, 0, 20), Error);
}

TEST_CASE("relation residual") {
  const mpfr_prec_t b = digits_to_bits(100);
  CHECK(relation_residual({1, 3, 3}, ComplexHP::from_double(1, 0, 100)).is_zero());
  Real ang = Real::pi(b) / Real(6L, b);
  Real res = relation_residual({1, 3, 5}, ComplexHP::unit(ang, 100));
  CHECK(res < pow10(-85, b));
  res = relation_residual({2, 5, 8}, ComplexHP::from_string("0.7", "0", 100));
  CHECK(res < pow10(-85, b));
  CHECK_THROWS_AS(relation_residual({1, 3, 2}, ComplexHP::from_double(0, 0.3, 100)), Error);
}

TEST_CASE("arc minimum sits at z=1") {
  ArcMinimum a = f21_min_check({1, 3, 3}, 257);
  CHECK(a.min_abs >= 1 - 1e-9);
  CHECK(a.adjacent_to_one());
  ArcMinimum b = f21_min_check({3, 7, 10}, 257);
  CHECK(b.min_abs >= 1 - 1e-9);
  CHECK(b.adjacent_to_one());
  CHECK_THROWS_AS(f21_min_check({1, 3, 3}, 7), Error);
}

TEST_CASE("Sturm root certificates") {
  CHECK(x_root_certificate({1, 3, 0}));
  for (auto idx : admissible(12, 1)) CHECK(x_root_certificate(idx));
  CHECK(x_root_certificate({1, 3, 13}));
  SturmCount sc = x_negative_root_count({1, 3, 13});
  CHECK(sc.negative_roots == 13);
  CHECK(sc.real_roots == 13);
  CHECK_THROWS_AS(x_root_certificate({1, 3, 61}), Error);
}

TEST_CASE("bounds on |X|") {
  HypgIndex one{1, 3, 7};
  BoundsCheck bc = x_bounds_check(one, ComplexHP::from_double(1, 0, 50));
  CHECK(bc.lower_ok);
  CHECK(bc.upper_applicable);
  CHECK(bc.upper_ok);
  CHECK(x_at_one(one) >= mpq_class(1 << 7));

  bc = x_bounds_check({1, 4, 3}, ComplexHP::from_double(0, 1, 50));
  CHECK(bc.lower_ok);
  CHECK(bc.y_lower_ok);
  CHECK_FALSE(bc.upper_applicable);  // |i - 1| = sqrt 2

  const mpfr_prec_t b = digits_to_bits(50);
  bc = x_bounds_check({1, 3, 6}, ComplexHP::unit(Real::pi(b) / Real(4L, b), 50));
  CHECK(bc.lower_ok);
  CHECK(bc.upper_applicable);
  CHECK(bc.upper_ok);
}

TEST_CASE("real lower bound (1+x)^r <= X(x) on [0,1]") {
  std::mt19937_64 rng(7);
  for (auto idx : admissible(9, 9)) {
    for (int s = 0; s < 50; ++s) {
      mpq_class x(static_cast<long>(rng() % 1001), 1000);
      x.canonicalize();
      REQUIRE(x_real_lower_bound(idx, x));
    }
  }
}

TEST_CASE("leading coefficient is not 1") {
  // the polynomials are not monic; nothing downstream may assume it
  for (auto idx : admissible(12, 1)) CHECK(x_poly(idx).c.back() != 1);
}
