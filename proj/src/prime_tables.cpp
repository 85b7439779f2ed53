#include "hypermeasure/prime_tables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "hypermeasure/error.hpp"
#include "json.hpp"

namespace hm {

namespace {
std::atomic<int> g_threads{1};
}

void set_default_threads(int threads) { g_threads = std::max(1, threads); }
int default_threads() { return g_threads.load(); }

void SieveConfig::validate() const {
  if (x_max < 10'000) fail(ErrorKind::ConstraintViolation, "sieve x_max must be at least 10^4");
  if (x_max >= (u64(1) << 32)) fail(ErrorKind::ConstraintViolation, "sieve x_max must be below 2^32");
  if (segment_size < (1u << 16)) fail(ErrorKind::ConstraintViolation, "segment_size must be at least 2^16");
  if (parallelism < 1) fail(ErrorKind::ConstraintViolation, "parallelism must be positive");
}

PrimeSieve::PrimeSieve(const SieveConfig& cfg) : x_max_(cfg.x_max) {
  cfg.validate();
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x_max_))) + 1;
  const std::vector<u64> base = primes_upto(root);
  const u64 seg = cfg.segment_size;
  const u64 nseg = (x_max_ + seg) / seg;  // segments cover [0, nseg*seg)
  std::vector<std::vector<std::uint32_t>> found(nseg);

  auto work = [&](u64 first) {
    std::vector<char> mark(seg);
    for (u64 s = first; s < nseg; s += static_cast<u64>(cfg.parallelism)) {
      const u64 lo = s * seg, hi = std::min(lo + seg, x_max_ + 1);
      std::fill(mark.begin(), mark.end(), 1);
      for (u64 p : base) {
        if (p * p >= hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        for (u64 j = start; j < hi; j += p) mark[j - lo] = 0;
      }
      auto& out = found[s];
      for (u64 x = std::max<u64>(lo, 2); x < hi; ++x)
        if (mark[x - lo]) out.push_back(static_cast<std::uint32_t>(x));
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < cfg.parallelism; ++t) pool.emplace_back(work, static_cast<u64>(t));
  work(0);
  for (auto& th : pool) th.join();

  size_t total = 0;
  for (auto& v : found) total += v.size();
  primes_.reserve(total);
  for (auto& v : found) primes_.insert(primes_.end(), v.begin(), v.end());
}

size_t PrimeSieve::count_upto(u64 x) const {
  if (x > x_max_) fail(ErrorKind::CeilingExceeded, "count_upto beyond sieve ceiling");
  return static_cast<size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

namespace {
std::atomic<u64> g_sieve_limit{(u64(1) << 32) - 1};
}

void set_sieve_limit(u64 x) { g_sieve_limit = std::min<u64>(std::max<u64>(x, 100'000), (u64(1) << 32) - 1); }
u64 sieve_limit() { return g_sieve_limit; }

std::shared_ptr<const PrimeSieve> PrimeSieve::shared(u64 x) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeSieve> cur;
  std::lock_guard<std::mutex> lk(mu);
  if (cur && cur->ceiling() >= x) return cur;
  if (x > sieve_limit())
    fail(ErrorKind::CeilingExceeded, "sieve needed to " + std::to_string(x) + " but the limit is " +
                                         std::to_string(sieve_limit()));
  SieveConfig cfg;
  cfg.x_max = std::min<u64>(std::max<u64>({x, cur ? 2 * cur->ceiling() : 0, 100'000}), sieve_limit());
  if (cfg.x_max >= (u64(1) << 32)) cfg.x_max = std::max<u64>(x, (u64(1) << 32) - 1);
  cfg.parallelism = default_threads();
  cur = std::make_shared<const PrimeSieve>(cfg);
  return cur;
}

ThetaAP::ThetaAP(u64 n, u64 x_max, std::shared_ptr<const PrimeSieve> sieve)
    : n_(n), phi_(n == 1 ? 1 : euler_phi(n)), x_max_(x_max) {
  if (n == 0) fail(ErrorKind::ConstraintViolation, "modulus must be positive");
  if (!sieve) sieve = PrimeSieve::shared(x_max);
  if (sieve->ceiling() < x_max) fail(ErrorKind::CeilingExceeded, "theta table above sieve ceiling");
  slot_of_.assign(n, -1);
  for (u64 k = 0; k < n; ++k)
    if (std::gcd(k, n) == 1) {
      slot_of_[k] = static_cast<int>(residues_.size());
      residues_.push_back(k);
    }
  primes_.resize(residues_.size());
  cum_.resize(residues_.size());
  std::vector<CompensatedSum> acc(residues_.size());
  for (std::uint32_t p : sieve->primes()) {
    if (p > x_max) break;
    const int s = slot_of_[p % n];
    if (s < 0) continue;
    acc[s].add(logl(static_cast<long double>(p)));
    primes_[s].push_back(p);
    cum_[s].push_back(acc[s].value());
  }
}

size_t ThetaAP::slot(u64 k) const {
  k %= n_;
  if (slot_of_[k] < 0) fail(ErrorKind::ConstraintViolation, "residue not coprime to modulus");
  return static_cast<size_t>(slot_of_[k]);
}

long double ThetaAP::theta(long double x, u64 k) const {
  if (x > static_cast<long double>(x_max_)) fail(ErrorKind::CeilingExceeded, "theta beyond table ceiling");
  const auto& ps = primes_[slot(k)];
  if (x < 2) return 0;
  const u64 xi = static_cast<u64>(floorl(x));
  size_t i = static_cast<size_t>(std::upper_bound(ps.begin(), ps.end(), xi) - ps.begin());
  return i == 0 ? 0.0L : cum_[slot(k)][i - 1];
}

long double ThetaAP::theta_range(u64 lo, u64 hi, u64 k) const {
  if (hi < lo) return 0;
  if (hi > x_max_) fail(ErrorKind::CeilingExceeded, "theta_range beyond table ceiling");
  const size_t s = slot(k);
  const auto& ps = primes_[s];
  size_t a = static_cast<size_t>(std::lower_bound(ps.begin(), ps.end(), lo) - ps.begin());
  size_t b = static_cast<size_t>(std::upper_bound(ps.begin(), ps.end(), hi) - ps.begin());
  if (b <= a) return 0;
  return cum_[s][b - 1] - (a == 0 ? 0.0L : cum_[s][a - 1]);
}

void ThetaAP::build_fast_index() {
  if (!rank_.empty()) return;
  const size_t blocks = x_max_ / 64 + 1;
  rank_.resize(residues_.size());
  for (size_t s = 0; s < residues_.size(); ++s) {
    Rank& rk = rank_[s];
    rk.bits.assign(blocks, 0);
    rk.before.assign(blocks + 1, 0);
    for (std::uint32_t p : primes_[s]) rk.bits[p / 64] |= std::uint64_t(1) << (p % 64);
    for (size_t b = 0; b < blocks; ++b)
      rk.before[b + 1] = rk.before[b] + static_cast<std::uint32_t>(__builtin_popcountll(rk.bits[b]));
  }
}

size_t ThetaAP::count_upto(size_t s, u64 x) const {
  const Rank& rk = rank_[s];
  const u64 b = x / 64, off = x % 64;
  const std::uint64_t mask = (off == 63) ? ~std::uint64_t(0) : ((std::uint64_t(1) << (off + 1)) - 1);
  return rk.before[b] + static_cast<size_t>(__builtin_popcountll(rk.bits[b] & mask));
}

long double ThetaAP::theta_fast(u64 x, u64 k) const {
  if (x > x_max_) fail(ErrorKind::CeilingExceeded, "theta beyond table ceiling");
  const size_t s = slot(k);
  const size_t c = count_upto(s, x);
  return c == 0 ? 0.0L : cum_[s][c - 1];
}

long double ThetaAP::theta_range_fast(u64 lo, u64 hi, u64 k) const {
  if (hi < lo) return 0;
  if (hi > x_max_) fail(ErrorKind::CeilingExceeded, "theta_range beyond table ceiling");
  const size_t s = slot(k);
  const size_t b = count_upto(s, hi);
  const size_t a = lo == 0 ? 0 : count_upto(s, lo - 1);
  if (b <= a) return 0;
  return cum_[s][b - 1] - (a == 0 ? 0.0L : cum_[s][a - 1]);
}

long double theta(const ThetaAP& all, long double x) {
  if (all.n() != 1) fail(ErrorKind::ConstraintViolation, "theta needs the modulus-1 table");
  return all.theta(x, 0);
}

long double psi(const ThetaAP& all, long double x) {
  long double s = 0;
  for (int j = 1;; ++j) {
    long double root = powl(x, 1.0L / j);
    // guard against powl landing just below an exact integer root
    long double rr = roundl(root);
    if (fabsl(root - rr) < 1e-9L && powl(rr, j) <= x) root = rr;
    if (root < 2) break;
    s += theta(all, root);
  }
  return s;
}

long double theta_ap(long double x, u64 n, u64 k, const PrimeSieve& sieve) {
  if (x > static_cast<long double>(sieve.ceiling())) fail(ErrorKind::CeilingExceeded, "theta_ap beyond sieve ceiling");
  if (std::gcd(k % n, n) != 1) fail(ErrorKind::ConstraintViolation, "residue not coprime to modulus");
  CompensatedSum acc;
  for (std::uint32_t p : sieve.primes()) {
    if (p > x) break;
    if (p % n == k % n) acc.add(logl(static_cast<long double>(p)));
  }
  return acc.value();
}

double BennettConstants::slope(long double x) {
  if (x >= t13) return slope13;
  if (x >= t12) return slope12;
  if (x >= analytic_from) return static_cast<double>(1.0L / (c840 * logl(x))) * (1 + 1e-12);
  return -1;
}

long ThetaBandTable::band_of(long double x) {
  if (x < 1) return 1;
  return static_cast<long>(floorl((x - 1) / kWidth)) + 1;
}

double ThetaBandTable::eps(long double x, Side side) const {
  if (x <= static_cast<long double>(x_max)) {
    const Band& b = bands.at(static_cast<size_t>(band_of(x) - 1));
    return side == Side::UB ? b.eps_ub : b.eps_lb;
  }
  const double s = BennettConstants::slope(x);
  if (s < 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "x=%.6Lg is above the band table (x_max=%llu) and below %.3g", x,
                  static_cast<unsigned long long>(x_max), BennettConstants::analytic_from);
    fail(ErrorKind::EnvelopeGap, buf);
  }
  return s;
}

long double ThetaBandTable::envelope(long double x, Side side) const {
  const long double base = x / static_cast<long double>(phi);
  const long double e = eps(x, side);
  return side == Side::UB ? base + e * x : base - e * x;
}

long double theta_envelope(const ThetaBandTable& t, long double x, Side side) { return t.envelope(x, side); }

namespace {

double outward(long double raw) {
  long double v = raw + fabsl(raw) * 1e-12L + 1e-15L;
  double d = static_cast<double>(v);
  if (static_cast<long double>(d) < v) d = std::nextafter(d, HUGE_VAL);
  return d;
}

}  // namespace

ThetaBandTable build_bands(const ThetaAP& ap, u64 x_max) {
  if (x_max > ap.ceiling()) fail(ErrorKind::CeilingExceeded, "bands requested above theta table ceiling");
  if (x_max < 2) fail(ErrorKind::ConstraintViolation, "x_max too small for bands");
  const u64 W = ThetaBandTable::kWidth;
  const long nb = ThetaBandTable::band_of(static_cast<long double>(x_max));
  const long double inv_phi = 1.0L / static_cast<long double>(ap.phi());
  const long double neg_inf = -INFINITY;
  std::vector<long double> ub(nb, neg_inf), lb(nb, neg_inf);

  for (u64 k : ap.residues()) {
    const auto& ps = ap.class_primes(k);
    const auto& cum = ap.class_cumulative(k);
    size_t j = 0;  // next prime index not yet passed
    long double th = 0;  // theta at the current position
    for (long i = 1; i <= nb; ++i) {
      const u64 lo = W * static_cast<u64>(i - 1) + 1;
      const u64 last = std::min<u64>(W * static_cast<u64>(i), x_max);
      // theta(lo): all primes <= lo
      while (j < ps.size() && ps[j] <= lo) {
        th = cum[j];
        ++j;
      }
      ub[i - 1] = std::max(ub[i - 1], th / static_cast<long double>(lo) - inv_phi);
      while (j < ps.size() && ps[j] <= last) {
        const long double p = ps[j];
        lb[i - 1] = std::max(lb[i - 1], inv_phi - th / p);  // left limit at p
        th = cum[j];
        ub[i - 1] = std::max(ub[i - 1], th / p - inv_phi);
        ++j;
      }
      // right end of the band domain: (2000 i + 1)^- or x_max itself
      if (W * static_cast<u64>(i) + 1 <= x_max) {
        lb[i - 1] = std::max(lb[i - 1], inv_phi - th / static_cast<long double>(W * i + 1));
      } else {
        lb[i - 1] = std::max(lb[i - 1], inv_phi - th / static_cast<long double>(x_max));
      }
    }
  }
  ThetaBandTable t;
  t.n = ap.n();
  t.phi = ap.phi();
  t.x_max = x_max;
  t.bands.resize(nb);
  long double su = neg_inf, sl = neg_inf;
  for (long i = nb; i >= 1; --i) {
    su = std::max(su, ub[i - 1]);
    sl = std::max(sl, lb[i - 1]);
    t.bands[i - 1] = Band{i, outward(sl), outward(su)};
  }
  return t;
}

ThetaBandTable build_bands(u64 n, u64 x_max) {
  ThetaAP ap(n, x_max);
  return build_bands(ap, x_max);
}

std::string ThetaBandTable::to_csv() const {
  std::ostringstream os;
  os << "n,band_index,x_lo,x_hi,eps_lb,eps_ub\n";
  char buf[128];
  for (const Band& b : bands) {
    const u64 lo = band_width * static_cast<u64>(b.index - 1) + 1;
    const u64 hi = band_width * static_cast<u64>(b.index);
    std::snprintf(buf, sizeof buf, "%llu,%ld,%llu,%llu,%.17g,%.17g\n", static_cast<unsigned long long>(n),
                  b.index, static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi), b.eps_lb,
                  b.eps_ub);
    os << buf;
  }
  return os.str();
}

std::string ThetaBandTable::meta_json() const {
  nlohmann::json j{{"n", n}, {"x_max", x_max}, {"build_version", kBuildVersion}};
  return j.dump();
}

ThetaBandTable ThetaBandTable::from_csv(const std::string& csv, const std::string& meta) {
  ThetaBandTable t;
  auto j = nlohmann::json::parse(meta);
  t.n = j.at("n").get<u64>();
  t.x_max = j.at("x_max").get<u64>();
  if (j.at("build_version").get<std::string>() != kBuildVersion)
    fail(ErrorKind::Io, "band table built by a different version");
  t.phi = t.n == 1 ? 1 : euler_phi(t.n);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  if (line != "n,band_index,x_lo,x_hi,eps_lb,eps_ub") fail(ErrorKind::Io, "unexpected band CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    unsigned long long nn, lo, hi;
    long idx;
    double el, eu;
    if (std::sscanf(line.c_str(), "%llu,%ld,%llu,%llu,%lg,%lg", &nn, &idx, &lo, &hi, &el, &eu) != 6)
      fail(ErrorKind::Io, "bad band CSV line: " + line);
    t.bands.push_back(Band{idx, el, eu});
  }
  return t;
}

u64 breach_point(const ThetaAP& ap, u64 x_max) {
  if (x_max > ap.ceiling()) fail(ErrorKind::CeilingExceeded, "breach_point above theta table ceiling");
  const long double inv_phi = 1.0L / static_cast<long double>(ap.phi());
  auto h = [](long double x) { return x / (840.0L * logl(x)); };
  u64 best = 0;
  for (u64 k : ap.residues()) {
    const auto& ps = ap.class_primes(k);
    const auto& cum = ap.class_cumulative(k);
    // pieces [L, R] on which theta is constant
    u64 L = 2;
    long double th = 0;
    for (size_t j = 0; j <= ps.size(); ++j) {
      u64 R = (j < ps.size()) ? static_cast<u64>(ps[j]) - 1 : x_max;
      if (R > x_max) R = x_max;
      if (R >= L) {
        const long double rr = static_cast<long double>(R);
        if (rr * inv_phi - th >= h(rr)) best = std::max(best, R);
        const long double ll = static_cast<long double>(L);
        if (th - ll * inv_phi >= h(ll)) {
          u64 a = L, b = R;  // largest x in [a, b] still breaching on the positive side
          while (a < b) {
            u64 mid = a + (b - a + 1) / 2;
            const long double xm = static_cast<long double>(mid);
            if (th - xm * inv_phi >= h(xm)) a = mid;
            else b = mid - 1;
          }
          best = std::max(best, a);
        }
      }
      if (j < ps.size()) {
        L = ps[j];
        th = cum[j];
        if (L > x_max) break;
      }
    }
  }
  return best;
}

}  // namespace hm
