#include "hypermeasure/arith.hpp"

#include <cmath>
#include <numeric>

#include "hypermeasure/error.hpp"

namespace hm {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConstraintViolation: return "constraint-violation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::PrecisionFailure: return "precision-failure";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::CeilingExceeded: return "ceiling-exceeded";
    case ErrorKind::Validity: return "validity";
    case ErrorKind::EnvelopeGap: return "envelope-gap";
    case ErrorKind::Inapplicable: return "inapplicable";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

bool is_prime(u64 p) {
  if (p < 2) return false;
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

std::vector<u64> primes_upto(u64 x) {
  std::vector<u64> out;
  if (x < 2) return out;
  std::vector<bool> comp(x + 1, false);
  for (u64 i = 2; i <= x; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= x; j += i) comp[j] = true;
  }
  return out;
}

Factorization factorize(u64 n) {
  Factorization f;
  if (n == 0) fail(ErrorKind::Domain, "factorize(0)");
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

u64 euler_phi(u64 n) {
  u64 r = n;
  for (u64 p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

int omega(u64 n) { return static_cast<int>(prime_divisors(n).size()); }

i64 mod_inverse(i64 a, i64 n) {
  i64 r0 = n, r1 = ((a % n) + n) % n, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) fail(ErrorKind::Domain, "no inverse mod " + std::to_string(n));
  return ((s0 % n) + n) % n;
}

int valuation(u64 x, u64 p) {
  int e = 0;
  while (x % p == 0) {
    x /= p;
    ++e;
  }
  return e;
}

int valuation(const mpz_class& x, u64 p) {
  if (x == 0) fail(ErrorKind::Domain, "valuation of 0");
  mpz_class t = x, pp = static_cast<unsigned long>(p);
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

u64 digit_sum(u64 r, u64 p) {
  u64 s = 0;
  for (; r; r /= p) s += r % p;
  return s;
}

u64 legendre_digit(u64 p, u64 r) { return (r - digit_sum(r, p)) / (p - 1); }

u64 legendre_floor(u64 p, u64 r) {
  u64 s = 0;
  for (u64 q = p; q <= r; q *= p) {
    s += r / q;
    if (q > r / p) break;
  }
  return s;
}

i64 core(i64 d) {
  if (d == 0) fail(ErrorKind::Domain, "core(0) is undefined");
  i64 c = d < 0 ? -1 : 1;
  u64 a = d < 0 ? static_cast<u64>(-d) : static_cast<u64>(d);
  for (auto& [p, e] : factorize(a))
    if (e % 2) c *= static_cast<i64>(p);
  return c;
}

double log_abs(const mpz_class& x) {
  long ex = 0;
  double m = mpz_get_d_2exp(&ex, x.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(ex) * std::log(2.0);
}

double log_abs(const mpq_class& x) { return log_abs(x.get_num()) - log_abs(x.get_den()); }

mpz_class product(const Factorization& f) {
  mpz_class v = 1, t;
  for (auto& [p, e] : f) {
    mpz_ui_pow_ui(t.get_mpz_t(), p, e);
    v *= t;
  }
  return v;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace hm
