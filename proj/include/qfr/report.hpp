#pragma once
// Deterministic CSV / JSON report emission. CSV: fixed header row, '.'
// decimal separator regardless of locale. JSON: one top-level object with a
// "rows" array of objects keyed by column name.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qfr {

using Cell = std::variant<std::string, double, long long, bool>;

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);  // throws contract_violation on width mismatch
};

// Shortest-round-trip decimal formatting, locale independent.
std::string format_number(double v);

void write_csv(const ReportTable& t, std::ostream& os);
void write_json(const ReportTable& t, std::ostream& os);

// Writes to `path` in the requested format ("csv" | "json"); "-" means
// standard output. Relative paths are resolved against the directory named by
// the QFR_OUTPUT_DIR environment variable when it is set. Throws io_failure
// when the destination cannot be written.
void write_report(const ReportTable& t, const std::string& path, const std::string& format);

}  // namespace qfr
