#pragma once
// Small number-theoretic helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hm {

using u64 = std::uint64_t;
using i64 = std::int64_t;

using Factorization = std::vector<std::pair<u64, int>>;  // ascending primes

bool is_prime(u64 p);
std::vector<u64> primes_upto(u64 x);  // plain Eratosthenes, for modest x
Factorization factorize(u64 n);       // trial division
std::vector<u64> prime_divisors(u64 n);

u64 euler_phi(u64 n);
int omega(u64 n);
i64 mod_inverse(i64 a, i64 n);  // throws Domain if not invertible
int valuation(u64 x, u64 p);    // x > 0
int valuation(const mpz_class& x, u64 p);  // x != 0

// v_p(r!) by Legendre's formula (digit sum) and by the floor sum.
u64 legendre_digit(u64 p, u64 r);
u64 legendre_floor(u64 p, u64 r);
u64 digit_sum(u64 r, u64 p);

// Squarefree part with sign: d / core(d) is a perfect square.
i64 core(i64 d);

double log_abs(const mpz_class& x);  // log|x|, x != 0
double log_abs(const mpq_class& x);

mpz_class product(const Factorization& f);
std::string to_string(const mpq_class& q);

}  // namespace hm
