#include "hypermeasure/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "hypermeasure/constants_pipeline.hpp"
#include "hypermeasure/denominators.hpp"
#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"
#include "hypermeasure/measures.hpp"
#include "hypermeasure/prime_tables.hpp"
#include "hypermeasure/tables.hpp"

namespace hm {

namespace {

using Body = std::function<bool(std::string&)>;

SuiteResult timed(int id, std::string name, const Body& body) {
  SuiteResult out;
  out.id = id;
  out.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    out.pass = body(out.detail);
  } catch (const Error& e) {
    out.pass = false;
    out.detail = std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<HypgIndex> indices(long n_lo, long n_hi, long r) {
  std::vector<HypgIndex> out;
  for (long n = n_lo; n <= n_hi; ++n)
    for (long m = 1; 2 * m < n; ++m)
      if (std::gcd(m, n) == 1) out.push_back({m, n, r});
  return out;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

bool c1(std::string& detail) {
  const mpz_class D = d_mnr({1, 3, 13}).value;
  mpq_class p(1);
  for (int i = 0; i < 13; ++i) p *= mpq_class(21, 10);
  const mpq_class lo = mpq_class(8, 100) * p, hi = mpq_class(1, 10) * p;
  detail = "D_{1,3,13} = " + D.get_str() + ", bracket [" + fmt("%.2f", lo.get_d()) + ", " + fmt("%.2f", hi.get_d()) + ")";
  return lo <= D && D < hi;
}

bool c2(std::string& detail) {
  const Lb2Check at = denom_lb2_check({1, 3, 13});
  long checked = 0, bad = 0;
  for (long r = 1; r <= 100; ++r)
    for (const auto& idx : indices(3, 12, r)) {
      ++checked;
      if (!denom_lb2_check(idx).ok) ++bad;
    }
  detail = "rhs(1,3,13) = " + fmt("%.7f", at.rhs) + "; " + std::to_string(checked) + " indices, " +
           std::to_string(bad) + " failures";
  return std::fabs(at.rhs - 0.00565) <= 1e-5 && at.ok && bad == 0;
}

bool c3(std::string& detail) {
  long checked = 0, bad = 0;
  for (long n = 3; n <= 8; ++n)
    for (long r = 0; r <= 200; ++r) {
      mpq_class b;
      if (!denom_lb1b_bound(n, r, b)) fail(ErrorKind::Domain, "no tabulated row for n = " + std::to_string(n));
      for (const auto& idx : indices(n, n, r)) {
        ++checked;
        if (!(mpq_class(d_mnr(idx).value) > b)) ++bad;
      }
    }
  detail = "rows n = 3..8, " + std::to_string(checked) + " (m, n, r), " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool c4(std::string& detail) {
  int rows = 0, bad = 0;
  double worst = 0;
  for (const TableRow& t : paper_tables()) {
    if (t.n > 100) continue;
    ++rows;
    const double e1 = std::fabs(chud_rate(t.n) - t.log_D_chud), e2 = std::fabs(log_n_mu_n(t.n) - t.log_n_mu_n);
    worst = std::max({worst, e1, e2});
    if (e1 > 0.001 || e2 > 0.001) ++bad;
  }
  detail = std::to_string(rows) + " rows, worst deviation " + fmt("%.5f", worst);
  return rows > 0 && bad == 0;
}

bool c5(std::string& detail, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const mpfr_prec_t bits = digits_to_bits(100);
  const Real tol = pow10(-85, bits);
  int bad = 0;
  Real worst(bits);
  for (int i = 0; i < 100; ++i) {
    const long n = std::uniform_int_distribution<long>(3, 10)(rng);
    const auto ms = indices(n, n, 0);
    const long m = ms[std::uniform_int_distribution<size_t>(0, ms.size() - 1)(rng)].m;
    const long r = std::uniform_int_distribution<long>(0, 30)(rng);
    // half on the unit arc, half inside; always |z| <= 1 and |z - 1| < 1
    std::uniform_real_distribution<double> U(-1.04, 1.04);
    double ang = U(rng), rho = 1;
    if (i % 2) {
      do {
        ang = U(rng);
        rho = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
      } while (std::hypot(rho * std::cos(ang) - 1, rho * std::sin(ang)) >= 0.999);
    }
    ComplexHP z = i % 2 == 0 ? ComplexHP::unit(Real(ang, bits), 100)
                             : ComplexHP::from_double(rho * std::cos(ang), rho * std::sin(ang), 100);
    const Real res = relation_residual({m, n, r}, z);
    if (res > worst) worst = res;
    if (!(res < tol)) ++bad;
  }
  detail = "100 instances, worst residual " + worst.str(3) + ", " + std::to_string(bad) + " above 1e-85";
  return bad == 0;
}

bool c6(std::string& detail) {
  int checked = 0, bad = 0;
  double worst = HUGE_VAL;
  for (long r : {0L, 1L, 3L, 10L, 20L})
    for (const auto& idx : indices(3, 10, r)) {
      const ArcMinimum a = f21_min_check(idx, 257);
      ++checked;
      worst = std::min(worst, a.min_abs);
      if (!(a.min_abs >= 1 - 1e-9) || !a.adjacent_to_one()) ++bad;
    }
  detail = std::to_string(checked) + " indices, smallest arc minimum " + fmt("%.12f", worst);
  return bad == 0;
}

bool c7(std::string& detail) {
  int checked = 0, bad = 0;
  for (long r = 0; r <= 30; ++r)
    for (const auto& idx : indices(3, 12, r)) {
      ++checked;
      if (!x_root_certificate(idx)) ++bad;
    }
  detail = std::to_string(checked) + " polynomials, " + std::to_string(bad) + " without a certificate";
  return bad == 0;
}

bool c8(std::string& detail) {
  int checked = 0, bad = 0;
  for (auto [a, b] : {std::pair{9L, 8L}, {128L, 125L}, {50L, 49L}})
    for (long n : {3L, 5L}) {
      const MeasureConstants k = MeasureConstants::from_table(n);
      const QuadInt A = QuadInt::integer(a), B = QuadInt::integer(b);
      for (long r = 0; r <= 20; ++r) {
        ++checked;
        const bool ok = q_estimate(A, B, 1, n, r, k).ok() && remainder_bracket(A, B, 1, n, r, k, 60).ok();
        if (!ok) ++bad;
      }
    }
  detail = std::to_string(checked) + " (a, b, n, r), " + std::to_string(bad) + " failures";
  return bad == 0;
}

bool c9(std::string& detail) {
  int bad = 0;
  std::ostringstream o;
  for (long a : {10L, 25L, 50L})
    for (long n : {3L, 5L, 7L}) {
      const auto pq = root_partial_quotients(mpq_class(a, a - 1), 1, n, mpz_class(1'000'000), 100);
      const long want = n * a - (n + 3) / 2;
      if (pq.size() < 2 || pq[1] != want) ++bad;
      o << (pq.size() > 1 ? pq[1].get_str() : "?") << ' ';
    }
  detail = "a_1 = " + o.str() + "(" + std::to_string(bad) + " mismatches)";
  return bad == 0;
}

bool c10(std::string& detail) {
  const QuadInt a = QuadInt::integer(128), b = QuadInt::integer(125);
  const MeasureResult mr = compute_measure(a, b, 1, 3, MeasureConstants::from_table(3));
  if (!mr.valid) {
    detail = "measure invalid, E = " + fmt("%.4f", mr.E);
    return false;
  }
  const ConvergentReport rep = verify_against_convergents(a, b, 1, 3, mr, mpz_class(1'000'000'000), 200);
  detail = "E = " + fmt("%.4f", mr.E) + ", kappa = " + fmt("%.6f", *mr.kappa) + ", log c = " + fmt("%.3f", *mr.log_c) +
           ", " + std::to_string(rep.convergents.size()) + " convergents, min margin " + fmt("%.3f", rep.min_margin);
  return *mr.kappa < 2.5 && rep.all_pass;
}

bool c11(std::string& detail, const SuiteOptions& opt) {
  set_sieve_limit(opt.sieve_max);
  const ConstantsCert c = run_pipeline(4, std::nullopt);
  const ReverifyReport rv = reverify(c, 200, opt.seed);
  const EscalationReport esc = escalation_check(4, 200, build_bands(4, 10'000));
  detail = "log D_4 = " + fmt("%.6f", c.log_dn) + ", log C_4 = " + fmt("%.4f", c.log_cn) + " at (m, r) = (" +
           std::to_string(c.m_max) + ", " + std::to_string(c.r_max) + "), r_comp = " + std::to_string(c.r_comp) +
           ", reverify " + std::to_string(rv.samples - rv.failures) + "/" + std::to_string(rv.samples) +
           ", escalations " + std::to_string(esc.checked) + (esc.ok() ? " ok" : " FAILED") +
           (c.analytic_ok ? "" : ", analytic check FAILED");
  return rv.failures == 0 && rv.samples == 200 && esc.ok() && c.analytic_ok;
}

bool c12(std::string& detail, const SuiteOptions& opt) {
  const u64 X = 10'000'000;
  set_sieve_limit(std::max<u64>(opt.sieve_max, X));
  auto sieve = PrimeSieve::shared(X);
  std::mt19937_64 rng(opt.seed);
  long env_checks = 0, env_bad = 0;
  for (u64 n : {3u, 4u, 5u, 8u, 12u}) {
    ThetaAP ap(n, X, sieve);
    const ThetaBandTable t = build_bands(ap, X);
    for (int i = 0; i < 10'000; ++i) {
      const u64 x = std::uniform_int_distribution<u64>(1, X)(rng);
      for (u64 k : ap.residues()) {
        const long double th = ap.theta(x, k);
        ++env_checks;
        if (!(t.envelope(x, Side::LB) < th && th < t.envelope(x, Side::UB))) ++env_bad;
      }
    }
  }
  // |theta - x/phi| < 1.818 sqrt x: theta - x/phi is piecewise linear and
  // falling, so its extremes sit at the jumps and just before them.
  long jumps = 0, jump_bad = 0;
  const auto& ps = sieve->primes();
  for (u64 n = 3; n <= 100; ++n) {
    const long double phi = static_cast<long double>(euler_phi(n));
    std::vector<CompensatedSum> th(n);
    auto bad = [&](long double x, long double v) { return fabsl(v - x / phi) >= 1.818L * sqrtl(x); };
    for (size_t i = 0; i < ps.size(); ++i) {
      const u64 p = ps[i];
      if (p > X) break;
      const u64 k = p % n;
      if (std::gcd(k, n) != 1) continue;
      const long double x = static_cast<long double>(p);
      ++jumps;
      if (bad(x, th[k].value())) ++jump_bad;  // left limit
      th[k].add(logl(x));
      if (bad(x, th[k].value())) ++jump_bad;
    }
    for (u64 k = 1; k < n; ++k)
      if (std::gcd(k, n) == 1 && bad(static_cast<long double>(X), th[k].value())) ++jump_bad;
  }
  detail = std::to_string(env_checks) + " envelope checks (" + std::to_string(env_bad) + " bad), " +
           std::to_string(jumps) + " prime jumps (" + std::to_string(jump_bad) + " bad)";
  return env_bad == 0 && jump_bad == 0;
}

const char* kNames[kAcceptanceCount] = {
    "denominator pinch at (1,3,13)", "LB2 near-attainment and range", "LB1(b) tabulated rows",
    "Chudnovsky and n mu_n columns", "relation identity residuals",  "arc minimum of 2F1",
    "Sturm root certificates",        "approximant brackets",         "partial-quotient law",
    "end-to-end measure 128/125",     "pipeline soundness n = 4",     "theta envelope soundness",
};

}  // namespace

SuiteResult run_acceptance(int id, const SuiteOptions& opt) {
  if (id < 1 || id > kAcceptanceCount) fail(ErrorKind::ConstraintViolation, "no acceptance criterion " + std::to_string(id));
  const std::string name = kNames[id - 1];
  switch (id) {
    case 1: return timed(id, name, c1);
    case 2: return timed(id, name, c2);
    case 3: return timed(id, name, c3);
    case 4: return timed(id, name, c4);
    case 5: return timed(id, name, [&](std::string& d) { return c5(d, opt.seed); });
    case 6: return timed(id, name, c6);
    case 7: return timed(id, name, c7);
    case 8: return timed(id, name, c8);
    case 9: return timed(id, name, c9);
    case 10: return timed(id, name, c10);
    case 11: return timed(id, name, [&](std::string& d) { return c11(d, opt); });
    default: return timed(id, name, [&](std::string& d) { return c12(d, opt); });
  }
}

std::vector<SuiteResult> verify_lemmas(long r_max) {
  if (r_max < 1) fail(ErrorKind::ConstraintViolation, "r_max must be positive");
  std::vector<SuiteResult> out;
  out.push_back(timed(1, "LB1 for n <= 8", [&](std::string& d) {
    long bad = 0, n = 0;
    for (long r = 0; r <= r_max; ++r)
      for (const auto& idx : indices(3, 8, r)) bad += !denom_lb1_check(idx), ++n;
    d = std::to_string(n) + " indices, " + std::to_string(bad) + " failures";
    return bad == 0;
  }));
  out.push_back(timed(2, "LB2 for n <= 12", [&](std::string& d) {
    long bad = 0, n = 0;
    for (long r = 1; r <= r_max; ++r)
      for (const auto& idx : indices(3, 12, r)) bad += !denom_lb2_check(idx).ok, ++n;
    d = std::to_string(n) + " indices, " + std::to_string(bad) + " failures";
    return bad == 0;
  }));
  out.push_back(timed(3, "negative real roots of X", [&](std::string& d) {
    long bad = 0, n = 0;
    for (long r = 0; r <= std::min(r_max, 60L); ++r)
      for (const auto& idx : indices(3, 12, r)) bad += !x_root_certificate(idx), ++n;
    d = std::to_string(n) + " polynomials, " + std::to_string(bad) + " failures";
    return bad == 0;
  }));
  out.push_back(timed(4, "escalation inequalities", [&](std::string& d) {
    long checked = 0;
    bool ok = true;
    for (u64 n = 3; n <= 8; ++n) {
      const EscalationReport e = escalation_check(n, r_max, build_bands(n, std::max<u64>(10'000, 2 * n * r_max)));
      checked += e.checked;
      ok = ok && e.ok();
    }
    d = std::to_string(checked) + " points";
    return ok;
  }));
  out.push_back(timed(5, "approximant brackets", [&](std::string& d) {
    const MeasureConstants k = MeasureConstants::from_table(3);
    const QuadInt a = QuadInt::integer(9), b = QuadInt::integer(8);
    const QuadInt u = QuadInt::parse("4+√-3"), v = QuadInt::parse("4-√-3");
    long bad = 0, n = 0;
    for (long r = 0; r <= std::min(r_max, 20L); ++r) {
      bad += !(q_estimate(a, b, 1, 3, r, k).ok() && remainder_bracket(a, b, 1, 3, r, k).ok()), ++n;
      bad += !(q_estimate(u, v, 1, 3, r, k).ok() && remainder_bracket(u, v, 1, 3, r, k).ok()), ++n;
    }
    d = std::to_string(n) + " brackets, " + std::to_string(bad) + " failures";
    return bad == 0;
  }));
  return out;
}

std::vector<SuiteResult> verify_tables() {
  std::vector<SuiteResult> out;
  out.push_back(run_acceptance(4));
  out.back().id = 1;
  out.push_back(timed(2, "large-prime rows: C_{1,n} location", [](std::string& d) {
    std::ostringstream o;
    bool ok = true;
    const char* sep = "";
    for (u64 n : {337u, 347u, 599u}) {
      const auto row = table_row(n);
      if (!row) fail(ErrorKind::Io, "missing table row " + std::to_string(n));
      SweepConfig cfg;
      cfg.m_values = {1};
      const ConstantsCert c = verify_small_r(n, row->log_D1n, std::nullopt, 500, cfg);
      const bool same = c.r_max == row->r1max && c.cn <= row->cn();
      ok = ok && same;
      o << sep << "n=" << n << " C=" << fmt("%.2f", c.cn) << " r=" << c.r_max << (same ? "" : " (table differs)");
      sep = "; ";
    }
    d = o.str();
    return ok;
  }));
  return out;
}

}  // namespace hm
