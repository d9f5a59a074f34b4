#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "qfr/cli.hpp"
#include "qfr/errors.hpp"

namespace {

void add_config_options(CLI::App* cmd, qfr::RunConfig& cfg) {
  cmd->add_option("--resolution", cfg.resolution, "grid nodes per axis (>= 256)")
      ->capture_default_str();
  cmd->add_option("--halfwidth", cfg.halfwidth_mult,
                  "domain half-width in units of the state scale")
      ->capture_default_str();
  cmd->add_option("--margin-tol", cfg.margin_tol, "pass threshold for relation margins")
      ->capture_default_str();
  cmd->add_option("--defect-tol", cfg.defect_tol,
                  "hermiticity-defect threshold for applicability")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "seed for randomized ensembles")->capture_default_str();
  cmd->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", cfg.output, "report path ('-' = stdout, default)");
  cmd->add_option("--hbar", cfg.params.hbar, "reduced Planck constant")->capture_default_str();
  cmd->add_option("--mass", cfg.params.mass, "particle mass")->capture_default_str();
  cmd->add_option("--omega", cfg.params.omega, "oscillator frequency")->capture_default_str();
  cmd->add_option("--kb", cfg.params.k_boltzmann, "Boltzmann constant")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spread-product relations on sampled quantum states, with a "
               "kernel model of measurement channels"};
  app.require_subcommand(1);

  qfr::RunConfig cfg;
  qfr::VerifyOptions vopt;
  qfr::MeasureOptions mopt;
  qfr::ScanOptions sopt;
  std::string gamma_range, lambda_range;

  CLI::App* verify = app.add_subcommand(
      "verify", "run the catalog of spread-product relation checks");
  add_config_options(verify, cfg);
  verify->add_option("--state", vopt.state,
                     "single state description, e.g. qo:n=3 or packet:x0=0,sigma=1,k=2");
  verify->add_option("--relation", vopt.relation, "restrict to one relation: csf | rsur");
  verify->add_option("--ops", vopt.ops, "observable pair for --state, e.g. x,p");

  CLI::App* measure = app.add_subcommand(
      "measure", "push one scenario through the measurement channel and compare "
                 "against the closed forms");
  add_config_options(measure, cfg);
  measure->add_option("--x0", mopt.x0, "packet center")->capture_default_str();
  measure->add_option("--sigma", mopt.sigma, "packet width")->capture_default_str();
  measure->add_option("--k", mopt.k, "packet carrier wave number")->capture_default_str();
  measure->add_option("--gamma", mopt.gamma, "density kernel width")->capture_default_str();
  measure->add_option("--lambda", mopt.lambda, "current kernel width")->capture_default_str();
  measure->add_flag("--oscillator", mopt.oscillator,
                    "use the oscillator ground state scenario (ignores --x0/--sigma/--k)");

  CLI::App* scan = app.add_subcommand(
      "scan", "sweep channel widths for a fixed packet and tabulate error indicators");
  add_config_options(scan, cfg);
  scan->add_option("--gamma-range", gamma_range, "density widths: lo:hi:step or v1,v2,...")
      ->required();
  scan->add_option("--lambda-range", lambda_range, "current widths: lo:hi:step or v1,v2,...")
      ->required();
  scan->add_option("--x0", sopt.packet.x0, "packet center")->capture_default_str();
  scan->add_option("--sigma", sopt.packet.sigma, "packet width")->capture_default_str();
  scan->add_option("--k", sopt.packet.k, "packet carrier wave number")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? qfr::exit_ok : qfr::exit_usage;
  }

  try {
    qfr::ReportTable table;
    std::string summary;
    int code = qfr::exit_usage;
    if (verify->parsed()) {
      code = qfr::cmd_verify(cfg, vopt, table, summary);
    } else if (measure->parsed()) {
      code = qfr::cmd_measure(cfg, mopt, table, summary);
    } else if (scan->parsed()) {
      sopt.gammas = qfr::parse_range(gamma_range);
      sopt.lambdas = qfr::parse_range(lambda_range);
      code = qfr::cmd_scan(cfg, sopt, table, summary);
    }
    if (!summary.empty()) std::cerr << summary << "\n";
    return code;
  } catch (const qfr::io_failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return qfr::exit_io;
  } catch (const qfr::domain_violation& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return qfr::exit_domain;
  } catch (const qfr::contract_violation& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return qfr::exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qfr::exit_usage;
  }
}
