#include "tanh_sinh.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hm::detail {

namespace {

struct Table {
  std::deque<TsLevel> levels;
};

std::mutex g_mu;
std::map<mpfr_prec_t, std::unique_ptr<Table>> g_tables;

// Node at t; returns false once 1-x has fallen below 2^(-2*bits).
bool make_node(const Real& t, mpfr_prec_t bits, TsNode& out) {
  Real half_pi = Real::pi(bits) / Real(2L, bits);
  Real u = half_pi * Real(0L, bits);
  mpfr_sinh(u.get(), t.get(), MPFR_RNDN);
  u = half_pi * u;
  Real e = exp(Real(-2L, bits) * u);  // e^{-2u}
  Real one(1L, bits);
  Real x = one / (one + e);
  Real omx = e / (one + e);
  Real floor_v(bits);
  mpfr_set_ui_2exp(floor_v.get(), 1, -2 * static_cast<long>(bits), MPFR_RNDN);
  if (omx < floor_v) return false;
  Real ch(bits);
  mpfr_cosh(ch.get(), t.get(), MPFR_RNDN);
  // dx/dt = (pi/2) cosh t * x (1-x) * 2
  Real w = Real(2L, bits) * half_pi * ch * x * omx;
  out = TsNode{x, omx, log(x), log(omx), w, log(w)};
  return true;
}

TsLevel build(mpfr_prec_t bits, int level) {
  TsLevel lv;
  Real h(1L, bits);
  mpfr_div_2si(h.get(), h.get(), level, MPFR_RNDN);
  long j = (level == 0) ? 0 : 1;
  const long stride = (level == 0) ? 1 : 2;
  if (level == 0) {
    lv.has_center = true;
    TsNode c{};
    make_node(Real(0L, bits), bits, c);
    lv.nodes.push_back(c);
    j = 1;
  }
  for (;; j += stride) {
    TsNode nd{};
    if (!make_node(h * Real(j, bits), bits, nd)) break;
    lv.nodes.push_back(std::move(nd));
  }
  return lv;
}

}  // namespace

const TsLevel& ts_level(mpfr_prec_t bits, int level) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto& tab = g_tables[bits];
  if (!tab) tab = std::make_unique<Table>();
  while (static_cast<int>(tab->levels.size()) <= level)
    tab->levels.push_back(build(bits, static_cast<int>(tab->levels.size())));
  return tab->levels[level];
}

}  // namespace hm::detail
