#pragma once
// Tanh-sinh nodes on [0, 1], cached per precision. Each node keeps both x and
// 1-x so integrands with endpoint factors never suffer cancellation.

#include <deque>
#include <vector>

#include "hypermeasure/real.hpp"

namespace hm::detail {

struct TsNode {
  Real x, omx, log_x, log_omx, w, log_w;  // w excludes the step h
};

struct TsLevel {
  std::vector<TsNode> nodes;  // t > 0 only; t < 0 is the mirror x <-> 1-x
  bool has_center = false;    // level 0 carries t = 0
};

// Level 0 has h = 1; level L adds the odd multiples of 2^-L.
const TsLevel& ts_level(mpfr_prec_t bits, int level);

}  // namespace hm::detail
