#pragma once
// Golden rows of the published tables, embedded from tables/paper_tables.csv.

#include <optional>
#include <string>
#include <vector>

#include "hypermeasure/arith.hpp"

namespace hm {

struct TableRow {
  u64 n = 0;
  std::string C1n;  // as printed, e.g. "2e14"
  double log_D_chud = 0, log_D1n = 0, log_D2n = 0, log_n_mu_n = 0;
  std::optional<long> m1max, m2max, r1max, r2max;
  long r_comp = 0, N = 0;

  double cn() const { return std::stod(C1n); }
  std::string csv() const;  // the row exactly as it appears in the file
  bool operator==(const TableRow&) const = default;
};

const std::string& paper_tables_csv();
std::vector<TableRow> parse_tables_csv(const std::string& text);
const std::vector<TableRow>& paper_tables();
std::optional<TableRow> table_row(u64 n);

}  // namespace hm
