#pragma once
// Command implementations behind the `qfr` binary: verify / measure / scan.
// Kept in the library so tests can drive them without spawning processes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfr/params.hpp"
#include "qfr/report.hpp"

namespace qfr {

struct RunConfig {
  int resolution = 4096;          // >= 256
  double halfwidth_mult = 8.0;    // grid half-width in units of the state scale
  double margin_tol = 1e-9;       // pass threshold for relation margins
  double defect_tol = 1e-8;       // hermiticity-defect threshold for applicability
  std::uint64_t seed = 20250819;  // RNG seed for randomized ensembles
  std::string format = "csv";     // csv | json
  std::string output;             // report path; "-" = stdout; "" = command default
  PhysicalParams params;

  void validate() const;  // throws contract_violation on bad values
};

// Exit codes shared by all commands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_io = 2;
inline constexpr int exit_domain = 3;

struct VerifyOptions {
  std::optional<std::string> state;     // state description; empty = full catalog
  std::optional<std::string> relation;  // csf | rsur
  std::optional<std::string> ops;       // comma pair, e.g. "x,p"
};

struct MeasureOptions {
  double x0 = 0.0;
  double sigma = 1.0;
  double k = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  bool oscillator = false;  // oscillator-ground-state scenario instead of packet
};

struct ScanOptions {
  std::vector<double> gammas;
  std::vector<double> lambdas;
  MeasureOptions packet;  // fixed packet parameters (gamma/lambda ignored)
};

// Each returns the process exit code and fills `table` (also written to the
// configured output). `summary` receives one human-readable line per command.
int cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, ReportTable& table,
               std::string& summary);
int cmd_measure(const RunConfig& cfg, const MeasureOptions& opt, ReportTable& table,
                std::string& summary);
int cmd_scan(const RunConfig& cfg, const ScanOptions& opt, ReportTable& table,
             std::string& summary);

// "0:1:0.25" (inclusive range with step) or "0,0.5,1" (explicit list).
std::vector<double> parse_range(const std::string& text);

}  // namespace qfr
