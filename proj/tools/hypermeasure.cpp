// hypermeasure: command-line front end.
//
// Exit codes: 0 ok (including valid=false measures), 2 usage or precondition,
// 3 computation error, 4 verification failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypermeasure/constants_pipeline.hpp"
#include "hypermeasure/denominators.hpp"
#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"
#include "hypermeasure/json_io.hpp"
#include "hypermeasure/measures.hpp"
#include "hypermeasure/prime_tables.hpp"
#include "hypermeasure/suites.hpp"
#include "hypermeasure/tables.hpp"

namespace fs = std::filesystem;
using namespace hm;

namespace {

constexpr int kOk = 0, kUsage = 2, kCompute = 3, kVerify = 4;

struct RunConfig {
  u64 sieve_max = 100'000'000;
  long exact_r_cap = kDefaultDenomCap;
  int precision_digits = 50;
  int threads = 0;
  std::string cache_dir;
  std::string format = "json";
};

RunConfig cfg;

void emit(const json& j) {
  if (cfg.format == "tsv" && j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << '\t' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
    return;
  }
  std::cout << j.dump(2) << '\n';
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void spill(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  f << text;
}

std::optional<fs::path> cache_path(const std::string& name) {
  if (cfg.cache_dir.empty()) return std::nullopt;
  fs::create_directories(cfg.cache_dir);
  return fs::path(cfg.cache_dir) / name;
}

// "x" or "x,y" -> x + iy
ComplexHP parse_point(const std::string& s, int digits) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return ComplexHP::from_string(s, "0", digits);
  return ComplexHP::from_string(s.substr(0, comma), s.substr(comma + 1), digits);
}

// ---------------------------------------------------------------- commands

struct PolyArgs {
  long m = 1, n = 3, r = 0;
  std::string at;
  bool y = false;
};

int cmd_poly(const PolyArgs& a) {
  const HypgIndex idx{a.m, a.n, a.r};
  const RatPoly p = a.y ? y_poly(idx) : x_poly(idx);
  if (a.at.empty()) {
    if (cfg.format == "text") {
      std::cout << p.str() << '\n';
      return kOk;
    }
    json coeffs = json::array();
    for (const auto& c : p.c) coeffs.push_back(to_string(c));
    emit({{"m", a.m}, {"n", a.n}, {"r", a.r}, {"poly", a.y ? "Y" : "X"}, {"str", p.str()}, {"coefficients", coeffs}});
    return kOk;
  }
  const ComplexHP z = parse_point(a.at, cfg.precision_digits);
  const Complex v = p.eval(z.z);
  emit({{"m", a.m}, {"n", a.n}, {"r", a.r}, {"poly", a.y ? "Y" : "X"}, {"at", a.at},
        {"re", v.re.str(cfg.precision_digits)}, {"im", v.im.str(cfg.precision_digits)}});
  return kOk;
}

int cmd_denom(long m, long n, long r) {
  const HypgIndex idx{m, n, r};
  const DenomResult d = d_mnr(idx, cfg.exact_r_cap);
  json f = json::array();
  for (auto& [p, e] : d.factorization) f.push_back({p, e});
  emit({{"m", m}, {"n", n}, {"r", r}, {"D", d.value.get_str()}, {"log_D", log_abs(d.value)}, {"factorization", f},
        {"lb2", denom_lb2_check(idx, cfg.exact_r_cap).ok || r == 0}});
  return kOk;
}

int cmd_numerator(long m, long n, long r, i64 d) {
  const HypgIndex idx{m, n, r};
  const NumeratorResult N = n_dmnr(idx, d, cfg.exact_r_cap);
  emit({{"m", m},
        {"n", n},
        {"r", r},
        {"d", d},
        {"N", N.n_value.get_str()},
        {"d1", N.d1},
        {"d2", N.d2},
        {"N_dn", n_dn(d, static_cast<u64>(n)).str()},
        {"log_ratio", numerator_exact(idx, d, cfg.exact_r_cap)},
        {"log_ratio_bound", numerator_bound(d, static_cast<u64>(n), r)}});
  return kOk;
}

int cmd_theta(u64 n, u64 x, std::optional<u64> k) {
  ThetaAP ap(n, std::max<u64>(x, 1));
  json vals = json::object();
  for (u64 kk : ap.residues())
    if (!k || *k == kk) vals[std::to_string(kk)] = static_cast<double>(ap.theta(x, kk));
  if (k && vals.empty()) fail(ErrorKind::ConstraintViolation, "k must be coprime to n");
  emit({{"n", n}, {"x", x}, {"phi", ap.phi()}, {"x_over_phi", static_cast<double>(x) / ap.phi()}, {"theta", vals}});
  return kOk;
}

int cmd_bands(u64 n, u64 x_max, const std::string& meta_out) {
  ThetaBandTable t;
  const std::string stem = "bands_" + std::to_string(n) + "_" + std::to_string(x_max);
  const auto csv = cache_path(stem + ".csv"), meta = cache_path(stem + ".json");
  if (csv && fs::exists(*csv) && fs::exists(*meta)) {
    t = ThetaBandTable::from_csv(slurp(csv->string()), slurp(meta->string()));
  } else {
    t = build_bands(n, x_max);
    if (csv) {
      spill(*csv, t.to_csv());
      spill(*meta, t.meta_json());
    }
  }
  std::cout << t.to_csv();
  if (!meta_out.empty()) spill(meta_out, t.meta_json());
  return kOk;
}

struct ConstantsArgs {
  u64 n = 3;
  std::optional<i64> d;
  Grid grid;
  long numerator_cap = 2000;
  bool spot_check = false, full_scale = false, no_baker = false, no_cache = false;
  int reverify = 0;
  std::string out;
};

int cmd_constants(ConstantsArgs a) {
  if (a.spot_check) {
    const auto row = table_row(a.n);
    if (!row) fail(ErrorKind::Domain, "no table row for n = " + std::to_string(a.n));
    const double chud = chud_rate(a.n), nmu = log_n_mu_n(a.n);
    const bool ok = std::fabs(chud - row->log_D_chud) <= 0.001 && std::fabs(nmu - row->log_n_mu_n) <= 0.001;
    emit({{"n", a.n},
          {"chud_rate", chud},
          {"table_log_D_chud", row->log_D_chud},
          {"log_n_mu_n", nmu},
          {"table_log_n_mu_n", row->log_n_mu_n},
          {"pass", ok}});
    return ok ? kOk : kVerify;
  }
  if (a.d && !a.no_baker && d1_d2(*a.d, static_cast<i64>(a.n)).second == 1) {
    const BakerConstants b = baker_fallback(a.n, *a.d);
    ConstantsCert c;
    c.n = a.n;
    c.d = a.d;
    c.cn = b.cn;
    c.log_cn = std::log(b.cn);
    c.log_dn = b.log_dn;
    c.path = "baker";
    std::vector<long> ms;
    for (long m = 1; 2 * m < static_cast<long>(a.n); ++m)
      if (std::gcd(m, static_cast<long>(a.n)) == 1) ms.push_back(m);
    c.m_values = ms;
    json j = c;
    const double gap = baker_check(a.n, *a.d, ms, std::min<long>(a.grid.r_max, 200));
    j["baker_check"] = {{"max_gap", gap}, {"r_max", std::min<long>(a.grid.r_max, 200)}, {"ok", gap <= 0}};
    emit(j);
    return gap <= 0 ? kOk : kVerify;
  }
  if (a.full_scale) a.grid = Grid{100'000, 50'000'000, 250};
  PipelineConfig pc;
  pc.grid = a.grid;
  pc.sweep.numerator_cap = a.numerator_cap;
  pc.sweep.threads = cfg.threads;

  std::ostringstream key;
  key << "constants_" << a.n << "_" << (a.d ? std::to_string(*a.d) : "any") << "_" << a.grid.r_step << "_"
      << a.grid.r_max << "_" << a.grid.N_max << "_" << a.numerator_cap << ".json";
  const auto cached = a.no_cache ? std::nullopt : cache_path(key.str());
  ConstantsCert c;
  if (cached && fs::exists(*cached)) {
    c = json::parse(slurp(cached->string())).get<ConstantsCert>();
  } else {
    c = run_pipeline(a.n, a.d, pc);
    if (cached) spill(*cached, json(c).dump(2));
  }
  json j = c;
  int rc = c.analytic_ok ? kOk : kVerify;
  if (a.reverify > 0) {
    const ReverifyReport rv = reverify(c, a.reverify, 1);
    j["reverify"] = rv;
    if (rv.failures) rc = kVerify;
  }
  if (!a.out.empty()) spill(a.out, json(c).dump(2));
  emit(j);
  return rc;
}

struct MeasureArgs {
  std::string a, b;
  long m = 1, n = 3;
  std::string verify;
  std::string constants = "table";
  std::optional<double> cn, log_dn;
};

int cmd_measure(const MeasureArgs& x) {
  const QuadInt a = QuadInt::parse(x.a), b = QuadInt::parse(x.b);
  MeasureConstants k;
  if (x.cn || x.log_dn) {
    if (!x.cn || !x.log_dn) fail(ErrorKind::ConstraintViolation, "--cn and --log-dn go together");
    k = MeasureConstants::inline_values(*x.cn, *x.log_dn);
  } else if (x.constants == "table") {
    k = MeasureConstants::from_table(static_cast<u64>(x.n));
  } else {
    const ConstantsCert c = json::parse(slurp(x.constants)).get<ConstantsCert>();
    if (c.n != static_cast<u64>(x.n)) fail(ErrorKind::ConstraintViolation, "certificate is for another n");
    k = MeasureConstants::from_cert(c);
  }
  const MeasureResult r = compute_measure(a, b, x.m, x.n, k, cfg.precision_digits);
  json j = r;
  int rc = kOk;
  if (!x.verify.empty()) {
    const mpz_class H(static_cast<unsigned long>(std::stod(x.verify)));
    if (!r.valid) {
      j["verification"] = {{"skipped", "measure is not valid (E <= 1)"}};
    } else if (r.kind != MeasureCase::Rational) {
      j["verification"] = {{"skipped", "convergent check needs b/a rational"}};
    } else {
      const ConvergentReport rep =
          verify_against_convergents(a, b, x.m, x.n, r, H, std::max(cfg.precision_digits, 200));
      j["verification"] = rep;
      j["verification"]["height"] = H.get_str();
      if (!rep.all_pass || (rep.a1_law && !*rep.a1_law)) rc = kVerify;
    }
  }
  emit(j);
  return rc;
}

int report(const std::vector<SuiteResult>& rs) {
  json arr = json::array();
  bool ok = true;
  for (const auto& r : rs) {
    arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    ok = ok && r.pass;
  }
  if (cfg.format == "text") {
    for (const auto& r : rs) std::printf("%s %2d  %s  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
  } else {
    std::cout << json{{"pass", ok}, {"suites", arr}}.dump(2) << '\n';
  }
  return ok ? kOk : kVerify;
}

int cmd_verify(const std::string& suite, long r_max, const std::vector<int>& only) {
  if (suite == "lemmas") return report(verify_lemmas(r_max));
  if (suite == "tables") return report(verify_tables());
  if (suite == "acceptance") {
    std::vector<SuiteResult> rs;
    SuiteOptions opt;
    opt.sieve_max = cfg.sieve_max;
    if (only.empty())
      for (int i = 1; i <= kAcceptanceCount; ++i) rs.push_back(run_acceptance(i, opt));
    else
      for (int i : only) rs.push_back(run_acceptance(i, opt));
    return report(rs);
  }
  fail(ErrorKind::ConstraintViolation, "unknown suite '" + suite + "' (lemmas, tables, acceptance)");
}

int cmd_tables(std::optional<u64> n) {
  if (!n) {
    std::cout << paper_tables_csv();
    return kOk;
  }
  const auto row = table_row(*n);
  if (!row) fail(ErrorKind::Domain, "no table row for n = " + std::to_string(*n));
  json j = *row;
  j["recomputed"] = {{"log_D_chud", chud_rate(*n)}, {"log_n_mu_n", log_n_mu_n(*n)}};
  emit(j);
  return kOk;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConstraintViolation:
    case ErrorKind::Domain: return kUsage;
    default: return kCompute;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective irrationality measures by the hypergeometric method"};
  app.require_subcommand(1);
  app.fallthrough();
  if (const char* env = std::getenv("HYPERMEASURE_CACHE_DIR")) cfg.cache_dir = env;
  app.add_option("--sieve-max", cfg.sieve_max, "Largest x the prime sieve may reach")->check(CLI::PositiveNumber);
  app.add_option("--exact-r-cap", cfg.exact_r_cap, "Largest r for exact polynomial work")->check(CLI::PositiveNumber);
  app.add_option("--prec", cfg.precision_digits, "Working precision in digits")->check(CLI::Range(30, 100000));
  app.add_option("--threads", cfg.threads, "Thread cap (0: hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $HYPERMEASURE_CACHE_DIR)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));

  PolyArgs pa;
  auto* poly = app.add_subcommand("poly", "Coefficients or values of X_{m,n,r} (or Y with --y)");
  poly->add_option("m", pa.m)->required();
  poly->add_option("n", pa.n)->required();
  poly->add_option("r", pa.r)->required();
  poly->add_option("--at", pa.at, "Evaluate at z = \"x\" or \"x,y\"");
  poly->add_flag("--y", pa.y, "Use Y_{m,n,r}(z) = z^r X(1/z)");

  long dm = 1, dn = 3, dr = 0;
  auto* denom = app.add_subcommand("denom", "Exact D_{m,n,r} and its factorisation");
  denom->add_option("m", dm)->required();
  denom->add_option("n", dn)->required();
  denom->add_option("r", dr)->required();

  long nm = 1, nn = 3, nr = 0;
  i64 nd = 1;
  auto* numer = app.add_subcommand("numerator", "N_{d,m,n,r} and the numerator ratio");
  numer->add_option("m", nm)->required();
  numer->add_option("n", nn)->required();
  numer->add_option("r", nr)->required();
  numer->add_option("--d", nd, "d = (a-b)^2")->required();

  u64 tn = 3, tx = 1;
  std::optional<u64> tk;
  auto* theta = app.add_subcommand("theta", "theta(x; n, k) for every k coprime to n");
  theta->add_option("n", tn)->required();
  theta->add_option("x", tx)->required();
  theta->add_option("--k", tk);

  u64 bn = 3, bx = 1'000'000;
  std::string bmeta;
  auto* bands = app.add_subcommand("bands", "Epsilon bands of theta(x; n, k) as CSV");
  bands->add_option("n", bn)->required();
  bands->add_option("--x-max", bx)->check(CLI::Range(u64(2000), u64(4'000'000'000)));
  bands->add_option("--meta", bmeta, "Write the metadata JSON here");

  ConstantsArgs ca;
  i64 cd = 0;
  auto* cons = app.add_subcommand("constants", "C_n and D_n by the analytic choice and exhaustive sweep");
  cons->add_option("n", ca.n)->required()->check(CLI::Range(u64(3), u64(1'000'000)));
  auto* copt_d = cons->add_option("--d", cd, "Fix d = (a-b)^2");
  auto* copt_step = cons->add_option("--r-step", ca.grid.r_step)->check(CLI::PositiveNumber);
  cons->add_option("--r-max", ca.grid.r_max)->check(CLI::PositiveNumber);
  cons->add_option("--n-max", ca.grid.N_max)->check(CLI::PositiveNumber);
  cons->add_option("--numerator-cap", ca.numerator_cap)->check(CLI::NonNegativeNumber);
  cons->add_option("--reverify", ca.reverify, "Re-verify this many random points")->check(CLI::NonNegativeNumber);
  cons->add_option("--out", ca.out, "Also write the certificate here");
  cons->add_flag("--spot-check", ca.spot_check, "Compare the Chudnovsky and n mu_n columns with the tables");
  cons->add_flag("--full-scale", ca.full_scale, "Grid to r = 5e7 (long)");
  cons->add_flag("--no-baker", ca.no_baker, "Run the pipeline even when d2 = 1");
  cons->add_flag("--no-cache", ca.no_cache);

  MeasureArgs ma;
  auto* meas = app.add_subcommand("measure", "Measure constants (E, Q, kappa, c) for (a/b)^{m/n}");
  meas->add_option("a", ma.a)->required();
  meas->add_option("b", ma.b)->required();
  meas->add_option("m", ma.m)->required();
  meas->add_option("n", ma.n)->required();
  meas->add_option("--verify", ma.verify, "Check every convergent with q <= H");
  meas->add_option("--constants", ma.constants, "\"table\" or a certificate JSON file");
  meas->add_option("--cn", ma.cn);
  meas->add_option("--log-dn", ma.log_dn);

  std::string suite;
  long vr = 30;
  std::vector<int> only;
  auto* ver = app.add_subcommand("verify", "Run a verification suite: lemmas, tables, acceptance");
  ver->add_option("suite", suite)->required();
  ver->add_option("--r-max", vr)->check(CLI::PositiveNumber);
  ver->add_option("--only", only, "Acceptance criteria to run");

  std::optional<u64> tabn;
  auto* tab = app.add_subcommand("tables", "Golden table rows");
  tab->add_option("--n", tabn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  set_sieve_limit(cfg.sieve_max);
  if (cfg.threads > 0) set_default_threads(cfg.threads);
  std::optional<fs::path> denom_cache;
  size_t cache_before = 0;
  try {
    denom_cache = cache_path("denominators.hmd");
    if (denom_cache && fs::exists(*denom_cache)) DenomCache::global().load(denom_cache->string());
    cache_before = DenomCache::global().size();
  } catch (const std::exception& e) {
    std::cerr << "warning: denominator cache ignored: " << e.what() << '\n';
  }

  int rc = kOk;
  try {
    if (*poly) rc = cmd_poly(pa);
    else if (*denom) rc = cmd_denom(dm, dn, dr);
    else if (*numer) rc = cmd_numerator(nm, nn, nr, nd);
    else if (*theta) rc = cmd_theta(tn, tx, tk);
    else if (*bands) rc = cmd_bands(bn, bx, bmeta);
    else if (*cons) {
      if (*copt_d) ca.d = cd;
      // an explicit --r-max below the default step keeps about 100 grid points
      if (!*copt_step && ca.grid.r_step > ca.grid.r_max) ca.grid.r_step = std::max(1L, ca.grid.r_max / 100);
      rc = cmd_constants(ca);
    } else if (*meas) rc = cmd_measure(ma);
    else if (*ver) rc = cmd_verify(suite, vr, only);
    else if (*tab) rc = cmd_tables(tabn);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCompute;
  }

  if (denom_cache && DenomCache::global().size() > cache_before) {
    try {
      DenomCache::global().save(denom_cache->string());
    } catch (const std::exception& e) {
      std::cerr << "warning: denominator cache not saved: " << e.what() << '\n';
    }
  }
  return rc;
}
