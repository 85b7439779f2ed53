#pragma once
// Exact Sturm sequences over Z[x].

#include <gmpxx.h>

#include <vector>

namespace hm {

using IntPoly = std::vector<mpz_class>;  // index = degree, no trailing zeros

void trim(IntPoly& p);
IntPoly derivative(const IntPoly& p);
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);
void make_primitive(IntPoly& p);  // divide by positive content

std::vector<IntPoly> sturm_sequence(const IntPoly& p);
int sign_at(const IntPoly& p, const mpq_class& x);
int sign_at_neg_infinity(const IntPoly& p);
int sign_at_pos_infinity(const IntPoly& p);

// Distinct real roots in (a, b] given the sign-variation counts at each end.
long variations_at(const std::vector<IntPoly>& seq, const mpq_class& x);
long variations_at_neg_infinity(const std::vector<IntPoly>& seq);
long variations_at_pos_infinity(const std::vector<IntPoly>& seq);

}  // namespace hm
