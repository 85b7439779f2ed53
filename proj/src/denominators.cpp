#include "hypermeasure/denominators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>

#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"
#include "hypermeasure/prime_tables.hpp"

namespace hm {

namespace {

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

// v_p(D) for p not dividing n, by walking the valuation changes of c_j.
int valuation_walk(const HypgIndex& idx, u64 p) {
  const u64 n = static_cast<u64>(idx.n), m = static_cast<u64>(idx.m), r = static_cast<u64>(idx.r);
  if (n % p == 0 || r == 0) return 0;
  const u64 a = mulmod(m % p, static_cast<u64>(mod_inverse(static_cast<i64>(n % p), static_cast<i64>(p))), p);
  // Step j (1..r) multiplies c_{j-1} by (r-j+1)((r-j+1)n+m) / (j (jn-m)); the
  // valuation of 1/c_j changes where p divides j, r-j+1, jn-m or (r-j+1)n+m.
  struct Ev {
    u64 res;
    int kind;
  };
  std::array<Ev, 4> ev{{{0, 0}, {(r + 1) % p, 1}, {a, 2}, {(r + 1 + a) % p, 3}}};
  std::sort(ev.begin(), ev.end(), [](const Ev& x, const Ev& y) { return x.res < y.res; });
  long walk = 0, best = 0;
  for (u64 base = 0; base <= r; base += p) {
    for (size_t i = 0; i < ev.size(); ++i) {
      const u64 j = base + ev[i].res;
      if (j < 1 || j > r) continue;
      switch (ev[i].kind) {
        case 0: walk += valuation(j, p); break;
        case 1: walk -= valuation(r - j + 1, p); break;
        case 2: walk += valuation(j * n - m, p); break;
        default: walk -= valuation((r - j + 1) * n + m, p); break;
      }
      // several progressions may share j; read the walk only after all of them
      if (i + 1 < ev.size() && ev[i + 1].res == ev[i].res) continue;
      best = std::max(best, walk);
    }
  }
  return static_cast<int>(best);
}

}  // namespace

Factorization d_mnr_factorization(const HypgIndex& idx) {
  idx.validate();
  Factorization f;
  if (idx.r == 0) return f;
  const u64 top = static_cast<u64>(idx.n) * static_cast<u64>(idx.r);
  auto sieve = PrimeSieve::shared(top);
  for (std::uint32_t p : sieve->primes()) {
    if (p > top) break;
    int e = valuation_walk(idx, p);
    if (e > 0) f.emplace_back(p, e);
  }
  return f;
}

int d_mnr_valuation(const HypgIndex& idx, u64 p) {
  idx.validate();
  if (!is_prime(p)) fail(ErrorKind::Domain, std::to_string(p) + " is not prime");
  return valuation_walk(idx, p);
}

double log_d_mnr(const HypgIndex& idx) {
  CompensatedSum s;
  for (auto& [p, e] : d_mnr_factorization(idx)) s.add(e * logl(static_cast<long double>(p)));
  return static_cast<double>(s.value());
}

DenomResult d_mnr(const HypgIndex& idx, long r_cap) {
  idx.validate();
  if (idx.r > r_cap)
    fail(ErrorKind::CapExceeded, "r=" + std::to_string(idx.r) + " above exact cap " + std::to_string(r_cap));
  DenomResult res;
  if (DenomCache::global().get(idx, res.factorization)) {
    res.value = product(res.factorization);
    return res;
  }
  RatPoly X = x_poly(idx);
  mpz_class L = 1;
  for (auto& c : X.c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  res.value = L;
  res.factorization = d_mnr_factorization(idx);
  if (product(res.factorization) != L)
    fail(ErrorKind::PrecisionFailure, "internal: lcm and valuation routes disagree at " + idx.str());
  DenomCache::global().put(idx, res.factorization);
  return res;
}

std::vector<mpz_class> shifted_coefficients(const HypgIndex& idx, const mpz_class& D) {
  // X(1-u) = X(1) * 2F1(-r, -r-m/n; -2r; u)
  const mpq_class nu = idx.nu();
  const long r = idx.r;
  std::vector<mpz_class> out;
  out.reserve(r + 1);
  mpq_class t = x_at_one(idx) * D;
  for (long j = 0; j <= r; ++j) {
    if (t.get_den() != 1) fail(ErrorKind::PrecisionFailure, "internal: D X(1-u) not integral at " + idx.str());
    out.push_back(t.get_num());
    if (j == r) break;
    mpq_class num = mpq_class(j - r) * (mpq_class(j - r) - nu);
    mpq_class den = mpq_class(j - 2 * r) * mpq_class(j + 1);
    t = t * num / den;
  }
  return out;
}

std::pair<i64, i64> d1_d2(i64 d, i64 n) {
  if (d == 0) fail(ErrorKind::Domain, "d must be nonzero");
  const i64 ad = d < 0 ? -d : d;
  const i64 n2 = n * n;
  const i64 d1 = std::gcd(ad, n2);
  const i64 d2 = std::gcd(ad / d1, n2);
  return {d1, d2};
}

NumeratorResult n_dmnr(const HypgIndex& idx, i64 d, long r_cap) {
  idx.validate();
  if (d == 0) fail(ErrorKind::Domain, "d must be nonzero");
  NumeratorResult out;
  std::tie(out.d1, out.d2) = d1_d2(d, idx.n);
  const DenomResult D = d_mnr(idx, r_cap);
  const std::vector<mpz_class> a = shifted_coefficients(idx, D.value);
  const i64 c = core(d);
  const i64 s2 = d / c;  // positive perfect square
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), mpz_class(static_cast<long>(s2)).get_mpz_t());
  out.poly.d0 = c;
  out.poly.common_denominator = D.value;
  mpz_class spow = 1, cpow = 1, g = 0;
  for (size_t j = 0; j < a.size(); ++j) {
    // (sqrt d)^j = s^j c^{floor(j/2)} (sqrt c)^{j mod 2}
    mpz_class v = a[j] * spow * cpow;
    if (j % 2 == 1 && c != 1) out.poly.coeffs.emplace_back(0, v);
    else out.poly.coeffs.emplace_back(v, 0);
    g = gcd(g, v);
    spow *= s;
    if (j % 2 == 1) cpow *= static_cast<long>(c);
  }
  out.n_value = abs(g);
  return out;
}

Lb2Check denom_lb2_check(const HypgIndex& idx, long r_cap) {
  idx.validate();
  if (idx.r < 1) fail(ErrorKind::ConstraintViolation, "denom_lb2_check needs r >= 1");
  const DenomResult D = d_mnr(idx, r_cap);
  mpq_class rhs = mpq_class(D.value * D.value) * pochhammer_ratio(idx);
  Lb2Check out;
  out.rhs = rhs.get_d();
  mpq_class lb(idx.m, 60 * idx.n);
  lb.canonicalize();
  out.ok = rhs > lb;
  return out;
}

bool gamma1_check(const HypgIndex& idx) {
  idx.validate();
  if (idx.r < 1) fail(ErrorKind::ConstraintViolation, "gamma1_check needs r >= 1");
  // ratio^2 * 16^r * 8nr > m
  const mpq_class q = pochhammer_ratio(idx);
  mpz_class f;
  mpz_ui_pow_ui(f.get_mpz_t(), 16, static_cast<unsigned long>(idx.r));
  return q * q * mpq_class(f * 8 * idx.n * idx.r) > mpq_class(idx.m);
}

u64 legendre_valuation_gap(u64 p, u64 r) {
  if (!is_prime(p)) fail(ErrorKind::Domain, std::to_string(p) + " is not prime");
  const u64 a = legendre_digit(p, 2 * r) - legendre_digit(p, r);
  const u64 b = legendre_floor(p, 2 * r) - legendre_floor(p, r);
  if (a != b) fail(ErrorKind::PrecisionFailure, "internal: Legendre forms disagree");
  return a;
}

mpq_class denom_lb1a_bound(const HypgIndex& idx) {
  idx.validate();
  mpz_class num, den;
  mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(idx.n), static_cast<unsigned long>(idx.r));
  mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(idx.r));
  for (u64 p : prime_divisors(static_cast<u64>(idx.n))) {
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, legendre_valuation_gap(p, static_cast<u64>(idx.r)));
    num *= t;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

bool denom_lb1b_bound(long n, long r, mpq_class& out) {
  // c * b^r with c, b given to the stated decimals
  static const std::array<std::array<long, 4>, 6> rows{{
      {8, 100, 21, 10},      // n = 3: 0.08 * 2.1^r
      {2, 100, 377, 100},    // n = 4: 0.02 * 3.77^r
      {3, 10, 254, 100},     // n = 5
      {3, 10, 109, 10},      // n = 6
      {7, 10, 263, 100},     // n = 7
      {2, 10, 553, 100},     // n = 8
  }};
  if (n < 3 || n > 8) return false;
  const auto& row = rows[n - 3];
  mpz_class bn, bd;
  mpz_ui_pow_ui(bn.get_mpz_t(), row[2], static_cast<unsigned long>(r));
  mpz_ui_pow_ui(bd.get_mpz_t(), row[3], static_cast<unsigned long>(r));
  out = mpq_class(row[0] * bn, row[1] * bd);
  out.canonicalize();
  return true;
}

bool denom_lb1_check(const HypgIndex& idx, long r_cap) {
  const DenomResult D = d_mnr(idx, r_cap);
  const mpq_class v(D.value);
  const mpq_class a = denom_lb1a_bound(idx);
  bool ok = idx.r == 0 ? v >= a : v > a;
  mpq_class b;
  if (denom_lb1b_bound(idx.n, idx.r, b)) ok = ok && v > b;
  return ok;
}

bool DenomCache::get(const HypgIndex& idx, Factorization& out) const {
  std::shared_lock lk(mu_);
  auto it = map_.find(idx);
  if (it == map_.end()) return false;
  out = it->second;
  return true;
}

void DenomCache::put(const HypgIndex& idx, const Factorization& f) {
  std::unique_lock lk(mu_);
  map_[idx] = f;
}

size_t DenomCache::size() const {
  std::shared_lock lk(mu_);
  return map_.size();
}

void DenomCache::clear() {
  std::unique_lock lk(mu_);
  map_.clear();
}

DenomCache& DenomCache::global() {
  static DenomCache cache;
  return cache;
}

namespace {

template <class T>
void put_le(std::string& buf, T v) {
  for (size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((static_cast<u64>(v) >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const std::string& buf, size_t& pos) {
  if (pos + sizeof(T) > buf.size()) fail(ErrorKind::Io, "truncated HMD1 record");
  u64 v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<u64>(static_cast<unsigned char>(buf[pos + i])) << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

void DenomCache::save(const std::string& path) const {
  std::vector<std::pair<HypgIndex, Factorization>> items;
  {
    std::shared_lock lk(mu_);
    items.assign(map_.begin(), map_.end());
  }
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.n, x.first.m, x.first.r) < std::tie(y.first.n, y.first.m, y.first.r);
  });
  std::string buf = "HMD1";
  for (auto& [idx, f] : items) {
    std::string rec;
    put_le<i64>(rec, idx.m);
    put_le<i64>(rec, idx.n);
    put_le<i64>(rec, idx.r);
    put_le<std::uint32_t>(rec, static_cast<std::uint32_t>(f.size()));
    for (auto& [p, e] : f) {
      put_le<u64>(rec, p);
      put_le<std::uint32_t>(rec, static_cast<std::uint32_t>(e));
    }
    put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(rec.size()));
    buf += rec;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::Io, "cannot write " + path);
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void DenomCache::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::Io, "cannot read " + path);
  std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.compare(0, 4, "HMD1") != 0) fail(ErrorKind::Io, path + " is not an HMD1 file");
  size_t pos = 4;
  while (pos < buf.size()) {
    const auto len = get_le<std::uint32_t>(buf, pos);
    const size_t end = pos + len;
    HypgIndex idx;
    idx.m = get_le<i64>(buf, pos);
    idx.n = get_le<i64>(buf, pos);
    idx.r = get_le<i64>(buf, pos);
    const auto count = get_le<std::uint32_t>(buf, pos);
    Factorization f;
    for (std::uint32_t i = 0; i < count; ++i) {
      u64 p = get_le<u64>(buf, pos);
      int e = static_cast<int>(get_le<std::uint32_t>(buf, pos));
      f.emplace_back(p, e);
    }
    if (pos != end) fail(ErrorKind::Io, "HMD1 record length mismatch");
    idx.validate();
    put(idx, f);
  }
}

}  // namespace hm
