#include "hypermeasure/constants_pipeline.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"

namespace hm {

namespace {

constexpr double kOutward = 1e-9;

double outward(double v) { return v + kOutward * std::max(1.0, std::fabs(v)); }

u64 isqrt(u64 x) {
  u64 s = static_cast<u64>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

u64 iroot(u64 x, int k) {
  u64 s = static_cast<u64>(std::pow(static_cast<long double>(x), 1.0L / k));
  auto pw = [k](u64 b) {
    unsigned __int128 v = 1;
    for (int i = 0; i < k; ++i) v *= b;
    return v;
  };
  while (s > 0 && pw(s) > x) --s;
  while (pw(s + 1) <= x) ++s;
  return s;
}

std::vector<long> admissible_m(u64 n) {
  std::vector<long> out;
  for (u64 m = 1; 2 * m < n; ++m)
    if (std::gcd(m, n) == 1) out.push_back(static_cast<long>(m));
  return out;
}

std::vector<long> check_m_values(u64 n, const std::vector<long>& given) {
  if (given.empty()) return admissible_m(n);
  for (long m : given) HypgIndex{m, static_cast<long>(n), 0}.validate();
  std::vector<long> out = given;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<u64> ell_values(u64 n) {
  std::vector<u64> out;
  for (u64 l = 1; 2 * l <= n; ++l)
    if (std::gcd(l, n) == 1) out.push_back(l);
  return out;
}

// v_p(r!) per p | n, the variable part of the d-free numerator bound.
double numerator_from_parts(u64 n, long r, const std::vector<u64>& ps) {
  long double s = (r % 2 == 1) ? logl(static_cast<long double>(n)) : 0.0L;
  for (u64 p : ps) {
    const long double e = static_cast<long double>(r) / (p - 1) - static_cast<long double>(legendre_digit(p, r));
    s += e * logl(static_cast<long double>(p));
  }
  return static_cast<double>(s);
}

double numerator_estimate(std::optional<i64> d, u64 n, long r) {
  if (r == 0) return 0;
  if (d) return numerator_bound(d, n, r);
  return std::min(numerator_bound_dfree(n, r), numerator_bound(std::nullopt, n, r));
}

// Calls fn(lo, hi, k) for every interval of the large-prime criterion:
// primes p = k (mod n), p^2 > nr, lo <= p <= hi.
template <class Fn>
void for_each_dl_interval(const HypgIndex& idx, Fn&& fn) {
  const u64 n = idx.n, m = idx.m, r = idx.r;
  const u64 x = n * r;
  if (r == 0) return;
  const u64 p0 = isqrt(x) + 1;
  for (u64 l : ell_values(n)) {
    const u64 k = static_cast<u64>(mod_inverse(static_cast<i64>(l), static_cast<i64>(n))) * (n - m % n) % n;
    for (u64 A = 0;; ++A) {
      const u64 hi = (x - m) / (n * A + l);
      if (hi < p0) break;
      const u64 den = n * A + n - l;
      u64 lo = (x + m + n + den - 1) / den;
      lo = std::max(lo, p0);
      if (lo <= hi) fn(lo, hi, k);
    }
  }
}

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  void update(const std::string& s) { EVP_DigestUpdate(ctx_, s.data(), s.size()); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

int thread_count(int requested) { return requested > 0 ? requested : default_threads(); }

}  // namespace

// ---- prime powers -------------------------------------------------------

long double PrimePowerReal::log() const {
  long double s = 0;
  for (auto& [p, e] : factors) s += static_cast<long double>(e.get_d()) * logl(static_cast<long double>(p));
  return s;
}

double PrimePowerReal::value() const { return static_cast<double>(expl(log())); }

Real PrimePowerReal::value(mpfr_prec_t bits) const {
  Real acc(1L, bits);
  for (auto& [p, e] : factors) acc *= exp(Real(e, bits) * hm::log(Real(static_cast<long>(p), bits)));
  return acc;
}

std::string PrimePowerReal::str() const {
  if (factors.empty()) return "1";
  std::string s;
  for (auto& [p, e] : factors) {
    if (!s.empty()) s += "*";
    s += std::to_string(p);
    if (e != 1) s += e.get_den() == 1 ? "^" + e.get_str() : "^(" + e.get_str() + ")";
  }
  return s;
}

PrimePowerReal mu_n(u64 n) {
  if (n < 2) fail(ErrorKind::ConstraintViolation, "mu_n needs n >= 2");
  PrimePowerReal out;
  for (u64 p : prime_divisors(n)) out.factors[p] = mpq_class(1, static_cast<unsigned long>(p - 1));
  return out;
}

PrimePowerReal n_dn(i64 d, u64 n) {
  if (d == 0) fail(ErrorKind::Domain, "d must be nonzero");
  const u64 ad = static_cast<u64>(d < 0 ? -d : d);
  PrimePowerReal out;
  for (auto& [p, vn] : factorize(n)) {
    const int vd = valuation(ad, p);
    mpq_class half(vd, 2), cap = mpq_class(vn) + mpq_class(1, static_cast<unsigned long>(p - 1));
    half.canonicalize();
    cap.canonicalize();
    mpq_class e = half < cap ? half : cap;
    if (e > 0) out.factors[p] = e;
  }
  return out;
}

double log_n_mu_n(u64 n) { return static_cast<double>(logl(static_cast<long double>(n)) + mu_n(n).log()); }

double chud_rate(u64 n) {
  if (n < 3) fail(ErrorKind::ConstraintViolation, "chud_rate needs n >= 3");
  long double s = 0;
  const long double pi = acosl(-1.0L);
  for (u64 j = 1; 2 * j <= n; ++j)
    if (std::gcd(j, n) == 1) s += 1.0L / tanl(pi * j / n);
  return static_cast<double>(pi / euler_phi(n) * s);
}

// ---- numerator -----------------------------------------------------------

double numerator_bound(std::optional<i64> d, u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "numerator_bound needs r >= 1");
  if (!d) return log_n_mu_n(n) + omega(n) * std::log(static_cast<double>(r));
  auto [d1, d2] = d1_d2(*d, static_cast<i64>(n));
  long double s = (r % 2 == 1) ? 0.5L * logl(static_cast<long double>(d1)) : 0.0L;
  for (u64 p : prime_divisors(static_cast<u64>(d2))) {
    const long double e = static_cast<long double>(r) / (p - 1) - static_cast<long double>(legendre_digit(p, r));
    s += e * logl(static_cast<long double>(p));
  }
  return static_cast<double>(s);
}

double numerator_bound_dfree(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "numerator_bound needs r >= 1");
  return numerator_from_parts(n, r, prime_divisors(n));
}

double numerator_exact(const HypgIndex& idx, std::optional<i64> d, long r_cap) {
  idx.validate();
  const u64 n = idx.n;
  const long r = idx.r;
  if (d) {
    const NumeratorResult N = n_dmnr(idx, *d, r_cap);
    return static_cast<double>(r * n_dn(*d, n).log()) - log_abs(N.n_value);
  }
  // Worst case over d. N(d) only grows when d picks up further prime factors,
  // and N_{d,n} depends on v_p(d) for p | n alone, saturating at
  // v_p(d) = 2 v_p(n) + 2. The maximum is separable over p | n.
  const DenomResult D = d_mnr(idx, r_cap);
  const std::vector<mpz_class> a = shifted_coefficients(idx, D.value);
  mpz_class g0 = 0;
  for (auto& x : a) g0 = gcd(g0, x);
  long double total = -static_cast<long double>(log_abs(g0));
  for (auto& [p, vn] : factorize(n)) {
    std::vector<int> va(a.size());
    for (size_t j = 0; j < a.size(); ++j) va[j] = valuation(a[j], p);
    auto M = [&](int e) {
      long best = std::numeric_limits<long>::max();
      for (size_t j = 0; j < a.size(); ++j)
        best = std::min(best, va[j] + static_cast<long>(j / 2) * e + static_cast<long>(j % 2) * (e / 2));
      return best;
    };
    const long double lp = logl(static_cast<long double>(p));
    const long double cap = vn + 1.0L / (p - 1);
    long double best = -std::numeric_limits<long double>::infinity();
    for (int e = 0; e <= 2 * vn + 2; ++e) {
      const long double gain = r * lp * std::min(e / 2.0L, cap) - M(e) * lp;
      best = std::max(best, gain);
    }
    total += M(0) * lp + best;
  }
  return static_cast<double>(total);
}

// ---- Gamma terms ---------------------------------------------------------

double gamma_term_bound(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "gamma_term_bound needs r >= 1");
  return n / 2.0 * std::exp(0.25) * std::sqrt(static_cast<double>(r));
}

mpq_class GammaTerms::max() const {
  mpq_class best = 1;
  if (middle > best) best = middle;
  if (upper > best) best = upper;
  return best;
}

GammaTerms gamma_terms_exact(const HypgIndex& idx) {
  idx.validate();
  GammaTerms g{1, 1};
  for (long k = 1; k <= idx.r; ++k) {
    mpq_class a(k * idx.n, k * idx.n - idx.m), b(k * idx.n + idx.m, k * idx.n);
    a.canonicalize();
    b.canonicalize();
    g.middle *= a;
    g.upper *= b;
  }
  return g;
}

double gamma_terms_log(const HypgIndex& idx) {
  idx.validate();
  long double a = 0, b = 0;
  for (long k = 1; k <= idx.r; ++k) {
    a += log1pl(static_cast<long double>(idx.m) / (k * idx.n - idx.m));
    b += log1pl(static_cast<long double>(idx.m) / (k * idx.n));
  }
  return static_cast<double>(std::max({0.0L, a, b}));
}

// ---- small primes --------------------------------------------------------

mpz_class ds_bound(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "ds_bound needs r >= 1");
  const u64 x = n * static_cast<u64>(r);
  mpz_class out = 1;
  for (u64 p : primes_upto(isqrt(x))) {
    u64 pk = p;
    while (pk <= x / p) pk *= p;
    out *= mpz_class(static_cast<unsigned long>(pk));
  }
  return out;
}

double ds_bound_log(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "ds_bound needs r >= 1");
  const u64 x = n * static_cast<u64>(r);
  long double s = 0;
  for (u64 p : primes_upto(isqrt(x))) {
    int e = 1;
    for (u64 pk = p; pk <= x / p; pk *= p) ++e;
    s += e * logl(static_cast<long double>(p));
  }
  return static_cast<double>(s);
}

double ds_bound_analytic(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "ds_bound needs r >= 1");
  const double x = static_cast<double>(n) * r;
  return 2.033 * std::sqrt(x) + 1.017 * std::cbrt(x) + 4.156 * std::pow(x, 0.25);
}

double ds_exact_log(const HypgIndex& idx) {
  idx.validate();
  if (idx.r == 0) return 0;
  const u64 x = static_cast<u64>(idx.n) * static_cast<u64>(idx.r);
  long double s = 0;
  for (u64 p : primes_upto(isqrt(x))) s += d_mnr_valuation(idx, p) * logl(static_cast<long double>(p));
  return static_cast<double>(s);
}

double s_bound(u64 n, long r) {
  if (r < 1) fail(ErrorKind::ConstraintViolation, "s_bound needs r >= 1");
  return std::log(0.65) + 2 * std::log(static_cast<double>(n)) + static_cast<double>(mu_n(n).log()) +
         (omega(n) + 0.5) * std::log(static_cast<double>(r)) + ds_bound_analytic(n, r);
}

// ---- large primes --------------------------------------------------------

long dl_max_valid_n(u64 n, long r) {
  // nN + n/2 <= sqrt(nr)  <=>  (2nN + n)^2 <= 4nr
  const unsigned __int128 rhs = static_cast<unsigned __int128>(4) * n * static_cast<u64>(r);
  long N = 0;
  auto ok = [&](long k) {
    const unsigned __int128 t = static_cast<unsigned __int128>(2 * n * static_cast<u64>(k) + n);
    return t * t <= rhs;
  };
  long guess = static_cast<long>((2 * std::sqrt(static_cast<double>(n) * r) - n) / (2.0 * n));
  N = std::max(0L, guess - 2);
  while (ok(N + 1)) ++N;
  while (N > 0 && !ok(N)) --N;
  return N;
}

std::vector<double> dl_bound_all(u64 n, long r, long N_max, const ThetaBandTable& bands) {
  if (bands.n != n) fail(ErrorKind::ConstraintViolation, "band table modulus mismatch");
  std::vector<double> out(static_cast<size_t>(std::max(0L, N_max)), std::numeric_limits<double>::quiet_NaN());
  const long valid = std::min(N_max, dl_max_valid_n(n, r));
  const long double x = static_cast<long double>(n) * r;
  const std::vector<u64> ls = ell_values(n);
  auto ub = [&](long double y) { return bands.envelope(y, Side::UB); };
  auto lb = [&](long double y) { return std::max(0.0L, bands.envelope(y, Side::LB)); };
  CompensatedSum prefix;
  for (long N = 1; N <= valid; ++N) {
    const long A = N - 1;
    CompensatedSum tail;
    for (u64 l : ls) tail.add(ub(x / (n * static_cast<long double>(N) + l)));
    for (u64 l : ls) {
      prefix.add(ub(x / (n * static_cast<long double>(A) + l)));
      prefix.add(-lb(x / (n * static_cast<long double>(A) + n - l)));
    }
    out[N - 1] = static_cast<double>(prefix.value() + tail.value());
  }
  return out;
}

double dl_bound(u64 n, long r, long N, const ThetaBandTable& bands) {
  if (N < 1 || N > dl_max_valid_n(n, r))
    fail(ErrorKind::ConstraintViolation, "validity condition nr/(nN+n/2) >= sqrt(nr) fails for N=" +
                                             std::to_string(N) + " at n=" + std::to_string(n) +
                                             ", r=" + std::to_string(r));
  return dl_bound_all(n, r, N, bands)[N - 1];
}

mpz_class dl_exact(const HypgIndex& idx) {
  idx.validate();
  mpz_class out = 1;
  if (idx.r == 0) return out;
  const u64 x = static_cast<u64>(idx.n) * static_cast<u64>(idx.r);
  auto sieve = PrimeSieve::shared(x);
  const auto& ps = sieve->primes();
  for_each_dl_interval(idx, [&](u64 lo, u64 hi, u64 k) {
    for (auto it = std::lower_bound(ps.begin(), ps.end(), lo); it != ps.end() && *it <= hi; ++it)
      if (*it % idx.n == k) out *= static_cast<unsigned long>(*it);
  });
  return out;
}

double dl_exact_log(const HypgIndex& idx, const ThetaAP& ap) {
  idx.validate();
  if (ap.n() != static_cast<u64>(idx.n)) fail(ErrorKind::ConstraintViolation, "theta table modulus mismatch");
  long double s = 0;
  const bool fast = ap.has_fast_index();
  for_each_dl_interval(idx, [&](u64 lo, u64 hi, u64 k) {
    s += fast ? ap.theta_range_fast(lo, hi, k) : ap.theta_range(lo, hi, k);
  });
  return static_cast<double>(s);
}

// ---- analytic phase ------------------------------------------------------

DnChoice choose_dn(u64 n, const Grid& grid, const ThetaBandTable& bands) {
  if (grid.r_step < 1 || grid.r_max < grid.r_step || grid.N_max < 1)
    fail(ErrorKind::ConstraintViolation, "grid needs 1 <= r_step <= r_max and N_max >= 1");
  DnChoice best;
  bool found = false;
  for (long r = grid.r_step; r <= grid.r_max; r += grid.r_step) {
    const long valid = std::min(grid.N_max, dl_max_valid_n(n, r));
    if (valid < 1) continue;
    const double ls = s_bound(n, r);
    const std::vector<double> dl = dl_bound_all(n, r, valid, bands);
    for (long N = 1; N <= valid; ++N) {
      const double ratio = (ls + dl[N - 1]) / r;
      if (!found || ratio < best.min_ratio) {
        found = true;
        best.min_ratio = ratio;
        best.r_comp = r;
        best.N = N;
      }
    }
  }
  if (!found) fail(ErrorKind::ConstraintViolation, "no grid point satisfies nr/(nN+n/2) >= sqrt(nr)");
  best.log_dn = outward(best.min_ratio);
  best.below_chud_floor = n >= 3 && best.log_dn < chud_rate(n) - 0.05;
  return best;
}

// ---- exhaustive phase ----------------------------------------------------

namespace {

struct MResult {
  double best = 0;
  long r_at = 0;
  long escalations = 0;
  std::string digest;
};

// Sweep of one m. The running maximum, and so every escalation decision, is
// local to m, which keeps the result independent of the thread count.
MResult sweep_m(long m, u64 n, double log_dn, std::optional<i64> d, long r_max, long num_cap,
                const ThetaAP& ap, const std::vector<long double>& theta_small) {
  MResult res;
  Sha256 h;
  char line[96];
  long double lt2 = 0, lt3 = 0;
  auto th = [&](u64 y) { return theta_small[y]; };
  for (long r = 0; r < r_max; ++r) {
    double v = 0;
    bool esc = false;
    if (r > 0) {
      lt2 += log1pl(static_cast<long double>(m) / (r * static_cast<long double>(n) - m));
      lt3 += log1pl(static_cast<long double>(m) / (r * static_cast<long double>(n)));
      const long double lg = std::max({0.0L, lt2, lt3});
      const u64 x = n * static_cast<u64>(r);
      // sum of log p^{floor(log x / log p)} over p <= sqrt(x)
      long double ds = th(isqrt(x));
      for (int k = 2;; ++k) {
        const u64 y = k == 2 ? isqrt(x) : iroot(x, k);
        if (y < 2) break;
        ds += th(y);
      }
      const HypgIndex idx{m, static_cast<long>(n), r};
      const long double dl = dl_exact_log(idx, ap);
      const long double num = numerator_estimate(d, n, r);
      const long double base = lg + dl - static_cast<long double>(r) * log_dn;
      v = static_cast<double>(base + ds + num);
      if (v > res.best) {
        esc = true;
        ++res.escalations;
        const long double num_x = r <= num_cap ? numerator_exact(idx, d, num_cap) : num;
        const long double ds_x = ds_exact_log(idx);
        const double refined = static_cast<double>(base + ds_x + num_x);
        if (refined > v + kOutward * std::max(1.0, std::fabs(v)))
          fail(ErrorKind::Validity, "exact value exceeds its estimate at " + idx.str());
        v = std::min(v, refined);
      }
    }
    if (v > res.best) {
      res.best = v;
      res.r_at = r;
    }
    std::snprintf(line, sizeof line, "%ld %ld %.17g %d\n", m, r, v, esc ? 1 : 0);
    h.update(line);
  }
  res.digest = h.hex();
  return res;
}

}  // namespace

ConstantsCert verify_small_r(u64 n, double log_dn, std::optional<i64> d, long r_max, const SweepConfig& cfg) {
  HypgIndex{1, static_cast<long>(n), 0}.validate();
  if (r_max < 1) fail(ErrorKind::ConstraintViolation, "sweep needs r_max >= 1");
  if (cfg.numerator_cap > kDefaultDenomCap)
    fail(ErrorKind::CapExceeded, "numerator cap above the exact denominator cap");
  if (d && *d == 0) fail(ErrorKind::Domain, "d must be nonzero");
  ConstantsCert cert;
  cert.n = n;
  cert.d = d;
  cert.log_dn = log_dn;
  cert.r_comp = r_max;
  cert.numerator_cap = cfg.numerator_cap;
  cert.m_values = check_m_values(n, cfg.m_values);

  const u64 top = std::max<u64>(n * static_cast<u64>(r_max), 10'000);
  ThetaAP ap(n, top, PrimeSieve::shared(top));
  ap.build_fast_index();
  const u64 small = isqrt(top) + 2;
  std::vector<long double> theta_small(small + 1, 0.0L);
  {
    const std::vector<u64> ps = primes_upto(small);
    size_t i = 0;
    CompensatedSum acc;
    for (u64 y = 0; y <= small; ++y) {
      while (i < ps.size() && ps[i] == y) acc.add(logl(static_cast<long double>(ps[i++])));
      theta_small[y] = acc.value();
    }
  }

  std::vector<MResult> results(cert.m_values.size());
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (size_t i; (i = next++) < cert.m_values.size();) {
      try {
        results[i] = sweep_m(cert.m_values[i], n, log_dn, d, r_max, cfg.numerator_cap, ap, theta_small);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  const int nt = std::min<int>(thread_count(cfg.threads), static_cast<int>(cert.m_values.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  Sha256 h;
  double best = -1;
  for (size_t i = 0; i < results.size(); ++i) {
    const MResult& mr = results[i];
    h.update(mr.digest);
    cert.escalations += mr.escalations;
    if (mr.best > best) {
      best = mr.best;
      cert.m_max = cert.m_values[i];
      cert.r_max = mr.r_at;
    }
  }
  cert.points = static_cast<long>(results.size()) * r_max;
  cert.evidence_hash = h.hex();
  cert.log_cn = outward(best);
  cert.cn = std::exp(cert.log_cn);
  return cert;
}

ConstantsCert run_pipeline(u64 n, std::optional<i64> d, const PipelineConfig& cfg) {
  HypgIndex{1, static_cast<long>(n), 0}.validate();
  const ThetaBandTable bands = build_bands(n, std::max<u64>(n * static_cast<u64>(cfg.grid.r_max), 10'000));
  const DnChoice choice = choose_dn(n, cfg.grid, bands);
  ConstantsCert cert = verify_small_r(n, choice.log_dn, d, choice.r_comp, cfg.sweep);
  cert.n_chosen = choice.N;
  cert.grid = cfg.grid;
  // The analytic certificate, at every grid point from r_comp up to the table ceiling.
  cert.analytic_ok = true;
  for (long r = choice.r_comp; r <= cfg.grid.r_max; r += cfg.grid.r_step) {
    if (choice.N > dl_max_valid_n(n, r)) {
      cert.analytic_ok = false;
      break;
    }
    if (s_bound(n, r) + dl_bound(n, r, choice.N, bands) > r * choice.log_dn) cert.analytic_ok = false;
  }
  return cert;
}

// ---- checks ----------------------------------------------------------------

double point_value(const HypgIndex& idx, double log_dn, std::optional<i64> d, long numerator_cap) {
  idx.validate();
  if (idx.r == 0) return 0;
  const long double num = idx.r <= numerator_cap ? numerator_exact(idx, d, numerator_cap)
                                                 : numerator_estimate(d, idx.n, idx.r);
  return static_cast<double>(gamma_terms_log(idx) + static_cast<long double>(log_d_mnr(idx)) + num -
                             static_cast<long double>(idx.r) * log_dn);
}

ReverifyReport reverify(const ConstantsCert& cert, int samples, std::uint64_t seed) {
  ReverifyReport rep;
  rep.worst_gap = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  const std::vector<long> ms = cert.m_values.empty() ? admissible_m(cert.n) : cert.m_values;
  const long exact_top = std::min(cert.r_comp, cert.numerator_cap + 1);
  for (int i = 0; i < samples; ++i) {
    // half of the points where every factor is exact, half over the whole range
    const long top = (i % 2 == 0) ? exact_top : cert.r_comp;
    const long r = std::uniform_int_distribution<long>(0, top - 1)(rng);
    const long m = ms[std::uniform_int_distribution<size_t>(0, ms.size() - 1)(rng)];
    const double v = point_value(HypgIndex{m, static_cast<long>(cert.n), r}, cert.log_dn, cert.d, cert.numerator_cap);
    const double gap = v - cert.log_cn;
    ++rep.samples;
    if (!(gap < 0)) ++rep.failures;
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_m = m;
      rep.worst_r = r;
    }
  }
  return rep;
}

EscalationReport escalation_check(u64 n, long r_max, const ThetaBandTable& bands) {
  EscalationReport rep;
  const auto tol = [](double v) { return kOutward * std::max(1.0, std::fabs(v)); };
  for (long m : admissible_m(n)) {
    for (long r = 1; r <= r_max; ++r) {
      const HypgIndex idx{m, static_cast<long>(n), r};
      ++rep.checked;
      const double ne = numerator_exact(idx, std::nullopt);
      const double nb = numerator_bound_dfree(n, r);
      if (ne > nb + tol(nb) || ne > numerator_bound(std::nullopt, n, r) + tol(nb)) ++rep.numerator_fail;
      const double se = ds_exact_log(idx), sb = ds_bound_log(n, r);
      if (se > sb + tol(sb)) ++rep.small_prime_fail;
      const double le = log_abs(dl_exact(idx));
      const long valid = dl_max_valid_n(n, r);
      if (valid >= 1) {
        const std::vector<double> lb = dl_bound_all(n, r, valid, bands);
        for (double b : lb)
          if (le > b + tol(b)) {
            ++rep.large_prime_fail;
            break;
          }
      }
    }
  }
  return rep;
}

BakerConstants baker_fallback(u64 n, i64 d) {
  HypgIndex{1, static_cast<long>(n), 0}.validate();
  if (d1_d2(d, static_cast<i64>(n)).second != 1)
    fail(ErrorKind::Inapplicable, "fallback constants need d2 = gcd(d/d1, n^2) = 1");
  return {static_cast<double>(n), log_n_mu_n(n)};
}

double baker_check(u64 n, i64 d, const std::vector<long>& m_values, long r_max) {
  const BakerConstants b = baker_fallback(n, d);
  double worst = -std::numeric_limits<double>::infinity();
  for (long m : check_m_values(n, m_values))
    for (long r = 0; r <= r_max; ++r)
      worst = std::max(worst, point_value(HypgIndex{m, static_cast<long>(n), r}, b.log_dn, d, r_max) -
                                  std::log(b.cn));
  return worst;
}

}  // namespace hm
