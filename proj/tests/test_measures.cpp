#include <cmath>

#include "doctest.h"
#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"
#include "hypermeasure/measures.hpp"
#include "hypermeasure/tables.hpp"

#include <fstream>
#include <sstream>

using namespace hm;

namespace {

QuadInt Z(long x) { return QuadInt::integer(x); }

// The four closed forms for rational 0 < b < a, straight in 100-digit MPFR.
struct Closed {
  double E, Q, kappa, log_c;
};
Closed closed_form(long a, long b, long n, double ndn, double log_cn, double log_dn) {
  const mpfr_prec_t p = digits_to_bits(100);
  const Real sa = sqrt(Real(a, p)), sb = sqrt(Real(b, p));
  const Real N(ndn, p), D = exp(Real(log_dn, p)), C = exp(Real(log_cn, p));
  const Real lo = sa - sb, hi = sa + sb;
  const Real E = N / D / (lo * lo), Q = D / N * hi * hi;
  const Real kappa = log(Q) / log(E);
  const Real c = Real(3L, p) * Real(a, p) * C * pow(Real(20L, p) * C, kappa) *
                 max(Real(n, p), pow(N, kappa));
  return {E.to_double(), Q.to_double(), kappa.to_double(), log(c).to_double()};
}

}  // namespace

TEST_CASE("quadratic integers: parsing and printing") {
  CHECK(QuadInt::parse("128") == Z(128));
  CHECK(QuadInt::parse("-7") == Z(-7));
  const QuadInt u = QuadInt::parse("4+1√-3");
  CHECK(u == QuadInt::of(4, 1, 3));
  CHECK(QuadInt::parse("4 + 1*sqrt(-3)") == u);
  CHECK(QuadInt::parse("4+sqrt(-3)") == u);
  CHECK(QuadInt::parse("4-√-3") == QuadInt::of(4, -1, 3));
  CHECK(QuadInt::parse("3√-2") == QuadInt::of(0, 3, 2));
  CHECK(QuadInt::parse("-√-5") == QuadInt::of(0, -1, 5));
  CHECK(QuadInt::parse("(1+√-3)/2") == QuadInt::halves(1, 1, 3));
  CHECK(QuadInt::parse("(1+√-3)/2").norm() == 1);
  CHECK(u.str() == "4+√-3");
  CHECK(QuadInt::parse("(3-5√-7)/2").str() == "(3-5√-7)/2");
  CHECK(QuadInt::parse(QuadInt::of(-2, 17, 11).str()) == QuadInt::of(-2, 17, 11));
  CHECK(u.norm() == 19);
  for (const char* bad : {"", "4+", "√-4", "1+2√3", "(1+√-5)/2", "(2+√-3)/2", "x", "4 5"})
    CHECK_THROWS_AS(QuadInt::parse(bad), Error);
}

TEST_CASE("field arithmetic") {
  const QuadNum a = QuadInt::of(4, 1, 3).num(), b = QuadInt::of(4, -1, 3).num();
  CHECK(a * b == QuadNum(19));
  CHECK((a / b) * b == a);
  CHECK((a - b) * (a - b) == QuadNum(-12));
  CHECK(pow(a, 3) == a * a * a);
  CHECK(QuadInt::halves(1, 1, 3).num().is_integral());
  CHECK_FALSE(QuadNum(mpq_class(1, 2), mpq_class(1, 2), 5).is_integral());
  CHECK_THROWS_AS(QuadInt::of(1, 1, 2).num() * QuadInt::of(1, 1, 3).num(), Error);
}

TEST_CASE("measure input hypotheses") {
  CHECK(check_measure_input(Z(128), Z(125), 1, 3).kind == MeasureCase::Rational);
  CHECK(check_measure_input(Z(128), Z(125), 1, 3).d == 9);
  const auto u = check_measure_input(QuadInt::parse("4+√-3"), QuadInt::parse("4-√-3"), 1, 3);
  CHECK(u.kind == MeasureCase::Unit);
  CHECK(u.d == -12);  // -4 v^2 t
  // conjugate pairs u + v sqrt(-t): d = -4 v^2 t
  for (long v : {1L, 2L, 3L})
    for (long t : {1L, 2L, 7L})
      CHECK(check_measure_input(QuadInt::of(9 * v, v, t), QuadInt::of(9 * v, -v, t), 1, 3).d == -4 * v * v * t);
  CHECK_THROWS_AS(check_measure_input(Z(125), Z(128), 1, 3), Error);  // b/a > 1
  CHECK_THROWS_AS(check_measure_input(Z(5), Z(-4), 1, 3), Error);
  CHECK_THROWS_AS(check_measure_input(QuadInt::parse("1+√-3"), QuadInt::parse("1-√-3"), 1, 3), Error);  // |b/a-1| > 1
  CHECK_THROWS_AS(check_measure_input(QuadInt::parse("1+2√-1"), QuadInt::parse("2+√-1"), 1, 3), Error);  // d not rational
  CHECK_THROWS_AS(check_measure_input(Z(5), Z(4), 2, 4), Error);
}

TEST_CASE("measure for 128/125, n = 3 against the closed forms") {
  const MeasureConstants k = MeasureConstants::from_table(3);
  CHECK(k.log_dn >= 0.916);
  CHECK(std::exp(k.log_cn) >= 2e14);
  const MeasureResult r = compute_measure(Z(128), Z(125), 1, 3, k);
  REQUIRE(r.valid);
  CHECK(r.ndn == "3");
  const Closed o = closed_form(128, 125, 3, 3.0, k.log_cn, k.log_dn);
  CHECK(r.E == doctest::Approx(o.E).epsilon(1e-14));
  CHECK(r.Q == doctest::Approx(o.Q).epsilon(1e-14));
  CHECK(*r.kappa == doctest::Approx(o.kappa).epsilon(1e-14));
  CHECK(*r.log_c == doctest::Approx(o.log_c).epsilon(1e-14));
  // sound side of the roundings
  CHECK(r.E <= o.E);
  CHECK(r.Q >= o.Q);
  CHECK(*r.kappa >= o.kappa);
  CHECK(*r.log_c >= o.log_c);
  CHECK(r.E == doctest::Approx(67.45).epsilon(1e-3));
  CHECK(r.Q == doctest::Approx(421.6).epsilon(1e-3));
  CHECK(*r.kappa < 2.5);
  // kappa consistency
  CHECK(std::exp(*r.kappa * std::log(r.E)) == doctest::Approx(r.Q).epsilon(1e-12));
  // theorem constant covers the lemma constant
  CHECK(*r.log_c_lemma < *r.log_c);
  CHECK(r.log_two_l0_E == doctest::Approx(std::log(18.4 * 2e14 * 3)).epsilon(1e-12));
}

TEST_CASE("N_{d,n} = 1 regime and monotonicity in |a|") {
  // d = 4 is prime to 3
  const MeasureConstants k = MeasureConstants::inline_values(10, 1.0);
  const MeasureResult r = compute_measure(Z(50), Z(48), 1, 3, k);
  REQUIRE(r.valid);
  CHECK(r.ndn_value == 1);
  const double want = std::log(3 * 10.0 * 50 * 3) + *r.kappa * std::log(200.0);
  CHECK(*r.log_c == doctest::Approx(want).epsilon(1e-13));
  double prev = 0;
  for (long s : {1L, 2L, 4L, 5L}) {
    const MeasureResult x = compute_measure(Z(128 * s), Z(125 * s), 1, 3, MeasureConstants::from_table(3));
    if (!x.valid) break;
    CHECK(*x.log_c >= prev);
    prev = *x.log_c;
  }
}

TEST_CASE("invalid measures are returned, not thrown") {
  const MeasureResult r = compute_measure(Z(3), Z(1), 1, 3, MeasureConstants::from_table(3));
  CHECK_FALSE(r.valid);
  CHECK(r.E == doctest::Approx(0.7467).epsilon(1e-3));
  CHECK_FALSE(r.kappa.has_value());
  CHECK_FALSE(r.c.has_value());
}

TEST_CASE("unit-modulus branch") {
  const MeasureConstants k = MeasureConstants::from_table(3);
  const MeasureResult r = compute_measure(QuadInt::parse("4+1√-3"), QuadInt::parse("4-1√-3"), 1, 3, k);
  CHECK(r.kind == MeasureCase::Unit);
  CHECK(r.d == -12);
  CHECK(r.ndn == "3^(1/2)");
  REQUIRE(r.phi.has_value());
  CHECK(*r.phi == doctest::Approx(-2 * std::atan2(std::sqrt(3.0), 4.0)).epsilon(1e-14));
  CHECK(r.phi_ok);
  // |sqrt a - sqrt b|^2 = 2(|a| - Re a) for a conjugate pair
  const double lo2 = 2 * (std::sqrt(19.0) - 4);
  CHECK(r.E == doctest::Approx(std::sqrt(3.0) / std::exp(k.log_dn) / lo2).epsilon(1e-13));
  CHECK_FALSE(r.valid);
  const MeasureResult v = compute_measure(QuadInt::parse("8+√-3"), QuadInt::parse("8-√-3"), 1, 3, k);
  CHECK(v.valid);
  CHECK(v.phi_ok);
}

TEST_CASE("lemma constants") {
  const LemmaConstants a = lemma_approx_c({1.5, 2.0, 7.0, 7.0});
  CHECK(a.kappa == 1);
  CHECK(a.c == doctest::Approx(2 * 1.5 * 2 * 2.0 * 7.0));
  CHECK(a.c_no_excl == doctest::Approx(a.c * 7.0));
  const LemmaConstants b = lemma_approx_c({3.0, 0.25, 2.0, 5.0});  // 2 l0 E = 1
  CHECK(b.c == 6.0);
  CHECK_THROWS_AS(lemma_approx_c({1, 0.2, 2.0, 5.0}), Error);
  CHECK_THROWS_AS(lemma_approx_c({1, 1, 1.0, 5.0}), Error);
  CHECK_THROWS_AS(lemma_approx_c({1, 1, 3.0, 0.5}), Error);
  // k0 = 1.072 C, l0 = 9.2 C D |sqrt a - sqrt b|^2: 2 l0 E = 18.4 C N
  const double C = 7, D = std::exp(1.2), N = 3, s = std::pow(std::sqrt(9.0) - std::sqrt(8.0), 2);
  const double E = N / D / s;
  CHECK(2 * 9.2 * C * D * s * E == doctest::Approx(18.4 * C * N));
}

TEST_CASE("approximants: exact values, integrality and non-vanishing") {
  const ApproximantPair z = approximants(Z(9), Z(8), 1, 3, 0);
  CHECK(z.p == QuadNum(1));
  CHECK(z.q == QuadNum(1));
  // q_r = a^r D/N X(b/a) and p_r = b^r D/N X(a/b), evaluated independently
  for (long r = 0; r <= 25; ++r) {
    const HypgIndex idx{1, 3, r};
    const ApproximantPair x = approximants(Z(9), Z(8), 1, 3, r);
    const RatPoly X = x_poly(idx);
    mpq_class a_r = 1, b_r = 1;
    for (long i = 0; i < r; ++i) {
      a_r *= 9;
      b_r *= 8;
    }
    const mpq_class s = mpq_class(x.D) / mpq_class(x.N);
    CHECK(x.q == QuadNum(a_r * s * X.eval(mpq_class(8, 9))));
    CHECK(x.p == QuadNum(b_r * s * X.eval(mpq_class(9, 8))));
  }
  for (auto [a, b, n] : {std::tuple{9L, 8L, 3L}, {128L, 125L, 3L}, {50L, 49L, 5L}}) {
    ApproximantPair prev = approximants(Z(a), Z(b), 1, n, 0);
    for (long r = 1; r <= 40; ++r) {
      const ApproximantPair cur = approximants(Z(a), Z(b), 1, n, r);
      CHECK(nonvanishing(prev, cur));
      prev = cur;
    }
  }
  // unit case: q_r against the numeric polynomial at b/a
  const QuadInt a = QuadInt::parse("4+√-3"), b = QuadInt::parse("4-√-3");
  ApproximantPair prev = approximants(a, b, 1, 3, 0);
  for (long r = 1; r <= 20; ++r) {
    const ApproximantPair cur = approximants(a, b, 1, 3, r);
    CHECK(cur.q.is_integral());
    CHECK(nonvanishing(prev, cur));
    prev = cur;
    const mpfr_prec_t bits = digits_to_bits(60);
    const Complex ba = (b.num() / a.num()).to_complex(bits);
    Complex want = x_poly(HypgIndex{1, 3, r}).eval(ba) * pow(a.to_complex(bits), r) *
                   (Real(cur.D, bits) / Real(cur.N, bits));
    const Real err = abs(want - cur.q.to_complex(bits)) / abs(want);
    CHECK(err < pow10(-50, bits));
  }
  // half-integers of Q(sqrt(-3))
  const QuadInt h = QuadInt::parse("(7+√-3)/2"), hb = QuadInt::parse("(7-√-3)/2");
  for (long r = 0; r <= 10; ++r) CHECK(approximants(h, hb, 1, 4, r).p.is_integral());
}

TEST_CASE("q_r estimate") {
  for (auto [a, b, n] : {std::tuple{9L, 8L, 3L}, {128L, 125L, 3L}, {50L, 49L, 5L}, {9L, 8L, 5L}}) {
    const MeasureConstants k = MeasureConstants::from_table(n);
    for (long r = 0; r <= 40; ++r) {
      const QEstimate e = q_estimate(Z(a), Z(b), 1, n, r, k);
      CHECK(e.ok());
    }
  }
  const MeasureConstants k = MeasureConstants::from_table(3);
  for (long r = 0; r <= 20; ++r) CHECK(q_estimate(QuadInt::parse("4+√-3"), QuadInt::parse("4-√-3"), 1, 3, r, k).ok());
}

TEST_CASE("remainder bracket") {
  const MeasureConstants k3 = MeasureConstants::from_table(3);
  for (long r = 0; r <= 20; ++r) {
    const RemainderBracket br = remainder_bracket(Z(9), Z(8), 1, 3, r, k3);
    CHECK(br.ok());
    CHECK(br.lemma_ok);
  }
  // r = 0: the remainder is theta - 1
  const RemainderBracket b0 = remainder_bracket(Z(9), Z(8), 1, 3, 0, k3);
  CHECK(b0.log_actual == doctest::Approx(std::log(std::cbrt(9.0 / 8.0) - 1)).epsilon(1e-14));
  for (long r = 0; r <= 10; ++r) {
    const RemainderBracket br = remainder_bracket(QuadInt::parse("4+√-3"), QuadInt::parse("4-√-3"), 1, 3, r, k3);
    CHECK(br.ok());
    REQUIRE(br.phi.has_value());
    CHECK(br.phi_ok);
  }
}

TEST_CASE("partial quotient law") {
  CHECK(root_partial_quotients(mpq_class(10, 9), 1, 3, 1000, 60)[1] == 27);
  CHECK(root_partial_quotients(mpq_class(50, 49), 1, 5, 1000, 60)[1] == 246);
  for (long a : {10L, 25L, 50L})
    for (long n : {3L, 5L, 7L}) {
      const auto pq = root_partial_quotients(mpq_class(a, a - 1), 1, n, 100'000, 80);
      REQUIRE(pq.size() > 1);
      CHECK(pq[0] == 1);
      CHECK(pq[1] == n * a - (n + 3) / 2);
    }
  CHECK_THROWS_AS(root_partial_quotients(mpq_class(27, 8), 1, 3, 100, 50), Error);
  // sqrt(2) = [1; 2, 2, ...]
  const auto s2 = root_partial_quotients(mpq_class(2), 1, 2, 1'000'000, 60);
  CHECK(s2.size() > 10);
  for (size_t i = 1; i < s2.size(); ++i) CHECK(s2[i] == 2);
}

TEST_CASE("convergents of (128/125)^{1/3} up to 10^12 satisfy the measure") {
  const MeasureResult mr = compute_measure(Z(128), Z(125), 1, 3, MeasureConstants::from_table(3));
  const ConvergentReport rep = verify_against_convergents(Z(128), Z(125), 1, 3, mr, mpz_class("1000000000000"));
  CHECK(rep.all_pass);
  CHECK(rep.convergents.size() > 10);
  CHECK(rep.min_margin > 0);
  CHECK(rep.convergents.back().q <= mpz_class("1000000000000"));
  CHECK_FALSE(rep.a1_law.has_value());
  const MeasureResult m10 = compute_measure(Z(10), Z(9), 1, 3, MeasureConstants::inline_values(1, 0.5));
  REQUIRE(m10.valid);
  const ConvergentReport r10 = verify_against_convergents(Z(10), Z(9), 1, 3, m10, 1'000'000);
  CHECK(r10.a1_law == true);
  CHECK(r10.a1_expected == 27);
}

TEST_CASE("golden tables") {
  const auto& rows = paper_tables();
  CHECK(rows.front().n == 3);
  CHECK(rows.front().C1n == "2e14");
  CHECK(rows.front().log_D1n == 0.916);
  CHECK(rows.front().r1max == 19946);
  CHECK(rows.back().n == 757);
  CHECK_FALSE(rows.back().m1max.has_value());
  CHECK(table_row(4)->r_comp == 49'600'000);
  CHECK_FALSE(table_row(2).has_value());
  // byte-for-byte against the checked-in file
  std::ifstream f(HM_TABLES_PATH);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == paper_tables_csv());
  std::istringstream in(paper_tables_csv());
  std::string line;
  std::getline(in, line);
  size_t i = 0;
  while (std::getline(in, line)) CHECK(line == rows.at(i++).csv());
  CHECK(i == rows.size());
  CHECK_THROWS_AS(parse_tables_csv("n,x\n"), Error);
}
