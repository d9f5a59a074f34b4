#include "qfr/report.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

#include <json.hpp>

#include "qfr/errors.hpp"

namespace qfr {

void ReportTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw contract_violation("report: row width does not match column count");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return csv_escape(*s);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<bool>(c) ? "true" : "false";
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<bool>(c);
}

}  // namespace

void write_csv(const ReportTable& t, std::ostream& os) {
  for (size_t j = 0; j < t.columns.size(); ++j) {
    if (j) os << ',';
    os << csv_escape(t.columns[j]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j) os << ',';
      os << cell_text(row[j]);
    }
    os << '\n';
  }
}

void write_json(const ReportTable& t, std::ostream& os) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = cell_json(row[j]);
    rows.push_back(std::move(obj));
  }
  nlohmann::json top;
  top["rows"] = std::move(rows);
  os << top.dump(2) << '\n';
}

void write_report(const ReportTable& t, const std::string& path, const std::string& format) {
  if (format != "csv" && format != "json")
    throw contract_violation("report: format must be csv or json");
  const auto emit = [&](std::ostream& os) {
    format == "csv" ? write_csv(t, os) : write_json(t, os);
  };
  if (path == "-") {
    emit(std::cout);
    std::cout.flush();
    return;
  }
  std::filesystem::path dest(path);
  if (dest.is_relative()) {
    if (const char* base = std::getenv("QFR_OUTPUT_DIR")) dest = std::filesystem::path(base) / dest;
  }
  std::ofstream os(dest);
  if (!os) throw io_failure("report: cannot open '" + dest.string() + "' for writing");
  emit(os);
  os.flush();
  if (!os) throw io_failure("report: write to '" + dest.string() + "' failed");
}

}  // namespace qfr
