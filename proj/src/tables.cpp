#include "hypermeasure/tables.hpp"

#include <cstdio>
#include <sstream>

#include "hypermeasure/error.hpp"

namespace hm {

extern const char* const kPaperTablesCsv;  // generated

namespace {

const char* kHeader = "n,C1n,log_D_chud,log_D1n,log_D2n,log_n_mu_n,m1max,m2max,r1max,r2max,r_comp,N";

std::optional<long> opt_long(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stol(s);
}

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string opt_str(const std::optional<long>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

std::string TableRow::csv() const {
  std::ostringstream o;
  o << n << ',' << C1n << ',' << fmt3(log_D_chud) << ',' << fmt3(log_D1n) << ',' << fmt3(log_D2n) << ','
    << fmt3(log_n_mu_n) << ',' << opt_str(m1max) << ',' << opt_str(m2max) << ',' << opt_str(r1max) << ','
    << opt_str(r2max) << ',' << r_comp << ',' << N;
  return o.str();
}

const std::string& paper_tables_csv() {
  static const std::string s(kPaperTablesCsv);
  return s;
}

std::vector<TableRow> parse_tables_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) fail(ErrorKind::Io, "tables: unexpected header");
  std::vector<TableRow> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> c;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) c.push_back(f);
    if (!line.empty() && line.back() == ',') c.emplace_back();
    if (c.size() != 12) fail(ErrorKind::Io, "tables: bad row '" + line + "'");
    try {
      TableRow r;
      r.n = std::stoull(c[0]);
      r.C1n = c[1];
      r.log_D_chud = std::stod(c[2]);
      r.log_D1n = std::stod(c[3]);
      r.log_D2n = std::stod(c[4]);
      r.log_n_mu_n = std::stod(c[5]);
      r.m1max = opt_long(c[6]);
      r.m2max = opt_long(c[7]);
      r.r1max = opt_long(c[8]);
      r.r2max = opt_long(c[9]);
      r.r_comp = std::stol(c[10]);
      r.N = std::stol(c[11]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      fail(ErrorKind::Io, "tables: bad field in '" + line + "'");
    }
  }
  return out;
}

const std::vector<TableRow>& paper_tables() {
  static const std::vector<TableRow> rows = parse_tables_csv(paper_tables_csv());
  return rows;
}

std::optional<TableRow> table_row(u64 n) {
  for (const auto& r : paper_tables())
    if (r.n == n) return r;
  return std::nullopt;
}

}  // namespace hm
