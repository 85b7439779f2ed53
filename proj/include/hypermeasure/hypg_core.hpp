#pragma once
// X_{m,n,r}, Y_{m,n,r} and the remainder R_{m,n,r}, with checks of the
// analytic facts they are supposed to satisfy.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hypermeasure/index.hpp"
#include "hypermeasure/real.hpp"

namespace hm {

struct RatPoly {
  std::vector<mpq_class> c;  // c[k] is the z^k coefficient

  int degree() const { return static_cast<int>(c.size()) - 1; }
  mpq_class eval(const mpq_class& z) const;
  Complex eval(const Complex& z) const;  // at z's precision
  std::string str() const;               // "1 + 2z + (4/3)z^2"
  bool operator==(const RatPoly&) const = default;
};

// A complex evaluation point with its working precision in decimal digits.
struct ComplexHP {
  Complex z;
  int prec = 50;

  ComplexHP(const Complex& v, int digits);
  static ComplexHP from_double(double re, double im, int digits);
  static ComplexHP from_string(const std::string& re, const std::string& im, int digits);
  static ComplexHP unit(const Real& angle, int digits);  // exp(i*angle)
};

RatPoly x_poly(const HypgIndex& idx);
RatPoly y_poly(const HypgIndex& idx);
mpq_class x_at_one(const HypgIndex& idx);

// (m/n)(1+m/n)...(r+m/n) / ((r+1)...(2r+1))
mpq_class pochhammer_ratio(const HypgIndex& idx);
// Prod_{k=1..r} k/(k - m/n) = r! Gamma(1-m/n) / Gamma(r+1-m/n)
mpq_class gamma_middle_term(const HypgIndex& idx);

struct QuadratureReport {
  Complex value;
  Real error_estimate;
  int levels = 0;
  int evaluations = 0;
};

// 2F1(r+1-m/n, r+1; 2r+2; 1-z) via the Euler integral.
QuadratureReport hyp2f1_remainder(const HypgIndex& idx, const ComplexHP& z);
Complex remainder_eval(const HypgIndex& idx, const ComplexHP& z);
Real relation_residual(const HypgIndex& idx, const ComplexHP& z);

struct ArcMinimum {
  double min_abs = 0;
  double argmin_angle = 0;  // z = exp(i*angle), angle in [-pi/2, pi/2]
  int argmin_index = 0;
  int samples = 0;
  double step = 0;  // angular spacing
  bool adjacent_to_one() const;
};
ArcMinimum f21_min_check(const HypgIndex& idx, int samples, int prec = 30);

struct SturmCount {
  long negative_roots = 0;
  long real_roots = 0;
};
SturmCount x_negative_root_count(const HypgIndex& idx);
bool x_root_certificate(const HypgIndex& idx, long r_cap = 60);

struct BoundsCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  bool upper_applicable = false;
  bool y_lower_ok = false;
  double abs_x = 0;
};
BoundsCheck x_bounds_check(const HypgIndex& idx, const ComplexHP& z);

// Exact rational test of (1+x)^r <= X(x) for real x >= 0.
bool x_real_lower_bound(const HypgIndex& idx, const mpq_class& x);

}  // namespace hm
