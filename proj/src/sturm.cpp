#include "hypermeasure/sturm.hpp"

#include "hypermeasure/error.hpp"

namespace hm {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.empty()) fail(ErrorKind::Domain, "pseudo-division by zero polynomial");
  IntPoly r = a;
  trim(r);
  const long db = static_cast<long>(b.size()) - 1;
  const long delta = static_cast<long>(r.size()) - 1 - db;
  if (delta < 0) return r;
  const mpz_class& lb = b.back();
  long steps = 0;
  while (!r.empty() && static_cast<long>(r.size()) - 1 >= db) {
    const long shift = static_cast<long>(r.size()) - 1 - db;
    mpz_class lr = r.back();
    for (auto& c : r) c *= lb;
    for (long k = 0; k <= db; ++k) r[k + shift] -= lr * b[k];
    trim(r);
    ++steps;
  }
  mpz_class f;
  mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(delta + 1 - steps));
  for (auto& c : r) c *= f;
  return r;
}

void make_primitive(IntPoly& p) {
  mpz_class g = 0;
  for (auto& c : p) g = gcd(g, c);
  if (g > 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

std::vector<IntPoly> sturm_sequence(const IntPoly& p0) {
  std::vector<IntPoly> seq;
  IntPoly p = p0;
  trim(p);
  make_primitive(p);
  seq.push_back(p);
  IntPoly d = derivative(p);
  if (d.empty()) return seq;
  make_primitive(d);
  seq.push_back(d);
  while (seq.back().size() > 1) {
    const IntPoly& a = seq[seq.size() - 2];
    const IntPoly& b = seq.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    // prem = lc(b)^(delta+1) * rem; the Sturm step wants -rem up to a positive factor.
    const long delta = static_cast<long>(a.size()) - static_cast<long>(b.size());
    const bool neg_factor = sgn(b.back()) < 0 && (delta + 1) % 2 == 1;
    if (!neg_factor)
      for (auto& c : r) c = -c;
    make_primitive(r);
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  mpq_class v = 0;
  for (size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return sgn(v);
}

int sign_at_pos_infinity(const IntPoly& p) { return p.empty() ? 0 : sgn(p.back()); }

int sign_at_neg_infinity(const IntPoly& p) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  return (p.size() - 1) % 2 ? -s : s;
}

namespace {
long count_variations(const std::vector<int>& signs) {
  long v = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

long variations_at(const std::vector<IntPoly>& seq, const mpq_class& x) {
  std::vector<int> s;
  for (auto& p : seq) s.push_back(sign_at(p, x));
  return count_variations(s);
}

long variations_at_neg_infinity(const std::vector<IntPoly>& seq) {
  std::vector<int> s;
  for (auto& p : seq) s.push_back(sign_at_neg_infinity(p));
  return count_variations(s);
}

long variations_at_pos_infinity(const std::vector<IntPoly>& seq) {
  std::vector<int> s;
  for (auto& p : seq) s.push_back(sign_at_pos_infinity(p));
  return count_variations(s);
}

}  // namespace hm
