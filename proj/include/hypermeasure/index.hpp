#pragma once

#include <gmpxx.h>

#include <string>

namespace hm {

// (m, n, r) with gcd(m, n) = 1, 0 < m < n/2, n >= 3, r >= 0.
struct HypgIndex {
  long m = 1, n = 3, r = 0;

  void validate() const;
  mpq_class nu() const { return mpq_class(m, n); }
  std::string str() const;
  bool operator==(const HypgIndex&) const = default;
};

struct HypgIndexHash {
  size_t operator()(const HypgIndex& i) const noexcept {
    return (static_cast<size_t>(i.m) * 1000003u + static_cast<size_t>(i.n)) * 1000033u +
           static_cast<size_t>(i.r);
  }
};

}  // namespace hm
