#pragma once
// Named verification suites shared by the `verify` command and the
// acceptance binary. Each returns a verdict and a one-line summary.

#include <string>
#include <vector>

#include "hypermeasure/arith.hpp"

namespace hm {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  u64 sieve_max = 100'000'000;
  std::uint64_t seed = 20240601;
};

constexpr int kAcceptanceCount = 12;
SuiteResult run_acceptance(int id, const SuiteOptions& opt = {});

// Invariants of the lemmas at small r (LB1, LB2, Sturm, escalations, brackets).
std::vector<SuiteResult> verify_lemmas(long r_max);
// Chudnovsky and n mu_n columns and large-prime sweep rows against the golden tables.
std::vector<SuiteResult> verify_tables();

}  // namespace hm
