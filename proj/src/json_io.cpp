#include "hypermeasure/json_io.hpp"

#include <cmath>

#include "hypermeasure/error.hpp"

namespace hm {

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return num(*v);
  else return *v;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

double get_num(const json& j, const char* key, double if_null) {
  const json& v = j.at(key);
  return v.is_null() ? if_null : v.get<double>();
}

}  // namespace

void to_json(json& j, const Grid& g) { j = {{"r_step", g.r_step}, {"r_max", g.r_max}, {"N_max", g.N_max}}; }

void from_json(const json& j, Grid& g) {
  j.at("r_step").get_to(g.r_step);
  j.at("r_max").get_to(g.r_max);
  j.at("N_max").get_to(g.N_max);
}

void to_json(json& j, const ConstantsCert& c) {
  j = {{"n", c.n},
       {"d", opt(c.d)},
       {"log_dn", num(c.log_dn)},
       {"log_cn", num(c.log_cn)},
       {"cn", num(c.cn)},
       {"r_comp", c.r_comp},
       {"N", c.n_chosen},
       {"m_max", c.m_max},
       {"r_max", c.r_max},
       {"evidence_hash", c.evidence_hash},
       {"grid", c.grid},
       {"analytic_ok", c.analytic_ok},
       {"points", c.points},
       {"escalations", c.escalations},
       {"numerator_cap", c.numerator_cap},
       {"m_values", c.m_values},
       {"path", c.path}};
}

void from_json(const json& j, ConstantsCert& c) {
  try {
    j.at("n").get_to(c.n);
    c.d = get_opt<i64>(j, "d");
    j.at("log_dn").get_to(c.log_dn);
    j.at("log_cn").get_to(c.log_cn);
    c.cn = get_num(j, "cn", HUGE_VAL);
    j.at("r_comp").get_to(c.r_comp);
    j.at("N").get_to(c.n_chosen);
    j.at("m_max").get_to(c.m_max);
    j.at("r_max").get_to(c.r_max);
    j.at("evidence_hash").get_to(c.evidence_hash);
    j.at("grid").get_to(c.grid);
    j.at("analytic_ok").get_to(c.analytic_ok);
    j.at("points").get_to(c.points);
    j.at("escalations").get_to(c.escalations);
    j.at("numerator_cap").get_to(c.numerator_cap);
    j.at("m_values").get_to(c.m_values);
    j.at("path").get_to(c.path);
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, std::string("bad constants certificate: ") + e.what());
  }
}

void to_json(json& j, const MeasureConstants& k) {
  j = {{"log_cn", k.log_cn}, {"log_dn", k.log_dn}, {"source", k.source}};
}

void from_json(const json& j, MeasureConstants& k) {
  j.at("log_cn").get_to(k.log_cn);
  j.at("log_dn").get_to(k.log_dn);
  j.at("source").get_to(k.source);
}

void to_json(json& j, const MeasureResult& r) {
  j = {{"a", r.a},
       {"b", r.b},
       {"m", r.m},
       {"n", r.n},
       {"case", to_string(r.kind)},
       {"d", r.d},
       {"E", num(r.E)},
       {"Q", num(r.Q)},
       {"kappa", opt(r.kappa)},
       {"c", opt(r.c)},
       {"log_c", opt(r.log_c)},
       {"valid", r.valid},
       {"prec", r.prec},
       {"diagnostics",
        {{"n_dn", r.ndn},
         {"n_dn_value", r.ndn_value},
         {"constants", r.constants},
         {"log_two_l0_E", num(r.log_two_l0_E)},
         {"log_c_lemma", opt(r.log_c_lemma)},
         {"phi", opt(r.phi)},
         {"phi_ok", r.phi_ok}}}};
}

void from_json(const json& j, MeasureResult& r) {
  try {
    j.at("a").get_to(r.a);
    j.at("b").get_to(r.b);
    j.at("m").get_to(r.m);
    j.at("n").get_to(r.n);
    const std::string kind = j.at("case").get<std::string>();
    if (kind != "rational" && kind != "unit") fail(ErrorKind::Io, "bad measure case '" + kind + "'");
    r.kind = kind == "rational" ? MeasureCase::Rational : MeasureCase::Unit;
    j.at("d").get_to(r.d);
    r.E = get_num(j, "E", HUGE_VAL);
    r.Q = get_num(j, "Q", HUGE_VAL);
    r.kappa = get_opt<double>(j, "kappa");
    r.c = get_opt<double>(j, "c");
    r.log_c = get_opt<double>(j, "log_c");
    j.at("valid").get_to(r.valid);
    j.at("prec").get_to(r.prec);
    const json& g = j.at("diagnostics");
    g.at("n_dn").get_to(r.ndn);
    g.at("n_dn_value").get_to(r.ndn_value);
    g.at("constants").get_to(r.constants);
    r.log_two_l0_E = get_num(g, "log_two_l0_E", HUGE_VAL);
    r.log_c_lemma = get_opt<double>(g, "log_c_lemma");
    r.phi = get_opt<double>(g, "phi");
    g.at("phi_ok").get_to(r.phi_ok);
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, std::string("bad measure result: ") + e.what());
  }
}

void to_json(json& j, const DnChoice& c) {
  j = {{"log_dn", num(c.log_dn)},
       {"min_ratio", num(c.min_ratio)},
       {"r_comp", c.r_comp},
       {"N", c.N},
       {"below_chud_floor", c.below_chud_floor}};
}

void to_json(json& j, const ReverifyReport& r) {
  j = {{"samples", r.samples},
       {"failures", r.failures},
       {"worst_gap", num(r.worst_gap)},
       {"worst_m", r.worst_m},
       {"worst_r", r.worst_r}};
}

void to_json(json& j, const EscalationReport& r) {
  j = {{"checked", r.checked},
       {"numerator_fail", r.numerator_fail},
       {"small_prime_fail", r.small_prime_fail},
       {"large_prime_fail", r.large_prime_fail},
       {"ok", r.ok()}};
}

void to_json(json& j, const ConvergentReport& r) {
  json pq = json::array(), cs = json::array();
  for (const auto& a : r.partial_quotients) pq.push_back(a.get_str());
  for (const auto& c : r.convergents) cs.push_back({{"p", c.p.get_str()}, {"q", c.q.get_str()}, {"margin", num(c.margin)}});
  j = {{"partial_quotients", pq},
       {"convergents", cs},
       {"count", r.convergents.size()},
       {"all_pass", r.all_pass},
       {"min_margin", num(r.min_margin)},
       {"a1_law", opt(r.a1_law)},
       {"prec", r.prec}};
  if (r.a1_law) j["a1_expected"] = r.a1_expected.get_str();
}

void to_json(json& j, const QEstimate& e) {
  j = {{"log_lower", num(e.log_lower)},
       {"log_q", num(e.log_q)},
       {"log_upper", num(e.log_upper)},
       {"lower_ok", e.lower_ok},
       {"upper_ok", e.upper_ok}};
}

void to_json(json& j, const RemainderBracket& b) {
  j = {{"log_lower", num(b.log_lower)},
       {"log_actual", num(b.log_actual)},
       {"log_upper", num(b.log_upper)},
       {"lower_ok", b.lower_ok},
       {"upper_ok", b.upper_ok},
       {"log_l0_E_r", num(b.log_l0_E_r)},
       {"lemma_ok", b.lemma_ok},
       {"phi", opt(b.phi)},
       {"phi_ok", b.phi_ok}};
}

void to_json(json& j, const TableRow& r) {
  j = {{"n", r.n},
       {"C1n", r.C1n},
       {"log_D_chud", r.log_D_chud},
       {"log_D1n", r.log_D1n},
       {"log_D2n", r.log_D2n},
       {"log_n_mu_n", r.log_n_mu_n},
       {"m1max", opt(r.m1max)},
       {"m2max", opt(r.m2max)},
       {"r1max", opt(r.r1max)},
       {"r2max", opt(r.r2max)},
       {"r_comp", r.r_comp},
       {"N", r.N}};
}

}  // namespace hm
