#include "qfr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qfr/closed_forms.hpp"
#include "qfr/errors.hpp"
#include "qfr/matrixqm.hpp"
#include "qfr/measurement.hpp"
#include "qfr/relations.hpp"
#include "qfr/states.hpp"

namespace qfr {

void RunConfig::validate() const {
  if (resolution < 256) throw contract_violation("config: resolution must be >= 256");
  if (!(halfwidth_mult > 0.0))
    throw contract_violation("config: half-width multiplier must be > 0");
  if (!(margin_tol > 0.0) || !(defect_tol > 0.0))
    throw contract_violation("config: tolerances must be > 0");
  if (format != "csv" && format != "json")
    throw contract_violation("config: format must be csv or json");
  if (!(params.hbar > 0.0) || !(params.mass > 0.0) || !(params.omega > 0.0) ||
      !(params.k_boltzmann > 0.0))
    throw contract_violation("config: physical constants must be > 0");
}

namespace {

std::pair<std::string, std::string> split_ops(const std::string& ops) {
  const auto comma = ops.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == ops.size())
    throw contract_violation("operator pair must be written 'a,b', got: " + ops);
  return {ops.substr(0, comma), ops.substr(comma + 1)};
}

// Accumulates {name, lhs, rhs, margin, applicable, pass} rows and the overall
// verdict.
struct VerdictRows {
  ReportTable& table;
  bool all_pass = true;

  void add(const std::string& name, double lhs, double rhs, double margin, bool applicable,
           bool pass) {
    table.add_row({name, lhs, rhs, margin, applicable, pass});
    all_pass = all_pass && pass;
  }
};

void relation_rows(VerdictRows& rows, const RunConfig& cfg, const std::string& state_name,
                   const WaveFunction& wf, const std::string& pair,
                   const std::optional<std::string>& relation_filter) {
  const auto [name_a, name_b] = split_ops(pair);
  const OperatorSpec a = observable_by_name(name_a, wf.params);
  const OperatorSpec b = observable_by_name(name_b, wf.params);
  if (!relation_filter || *relation_filter == "csf") {
    const RelationVerdict v = correlation_bound(wf, a, b);
    rows.add(state_name + " " + pair + " CSF", v.lhs, v.rhs, v.margin, v.applicable,
             v.margin >= -cfg.margin_tol);
  }
  if (!relation_filter || *relation_filter == "rsur") {
    const RelationVerdict v = commutator_bound(wf, a, b, cfg.defect_tol);
    // An inapplicable commutator bound carries no claim, so the row passes;
    // lhs/rhs/margin still document the (possibly violated) inequality.
    rows.add(state_name + " " + pair + " RSUR", v.lhs, v.rhs, v.margin, v.applicable,
             v.applicable ? v.margin >= -cfg.margin_tol : true);
  }
}

void gram_rows(VerdictRows& rows, const RunConfig& cfg,
               const std::vector<CatalogEntry>& catalog) {
  for (const CatalogEntry& e : catalog) {
    if (e.name.rfind("qo:n=", 0) != 0) continue;
    const int n = std::stoi(e.name.substr(5));
    if (n > 3) continue;
    const std::vector<OperatorSpec> ops = {observable_by_name("p", e.wf.params),
                                           observable_by_name("x", e.wf.params),
                                           observable_by_name("H", e.wf.params)};
    const GramResult g = deviation_gram(e.wf, ops);
    const double scale = g.matrix.real().trace() / 3.0;
    const double herm = (g.matrix - g.matrix.adjoint()).cwiseAbs().maxCoeff();
    const bool hermitian_ok = herm <= 1e-10 * std::max(1.0, scale);
    const double floor = -cfg.margin_tol * scale * scale * scale;
    rows.add(e.name + " (p,x,H) GRAM", g.determinant, floor, g.determinant - floor,
             hermitian_ok, hermitian_ok && g.determinant >= floor);
  }
}

void two_time_rows(VerdictRows& rows, const RunConfig& cfg) {
  const PhysicalParams& p = cfg.params;
  for (double k : {0.0, 2.0}) {
    const Grid g = free_packet_grid(0.0, 1.0, k, {0.0, 1.0}, p, cfg.resolution,
                                    cfg.halfwidth_mult);
    const WaveFunction w1 = free_packet_at(0.0, 1.0, k, 0.0, p, g);
    const WaveFunction w2 = free_packet_at(0.0, 1.0, k, 1.0, p, g);
    const OperatorSpec x = observable_by_name("x", p);
    const RelationVerdict v = two_state_correlation_bound(w1, w2, x, x);
    std::ostringstream name;
    name << "free:k=" << format_number(k) << " x(t=0),x(t=1) CSF";
    rows.add(name.str(), v.lhs, v.rhs, v.margin, true, v.margin >= -cfg.margin_tol);
  }
}

void matrix_rows(VerdictRows& rows, const RunConfig& cfg) {
  const PhysicalParams& p = cfg.params;
  // spin commutator identity [Mx, My] = i gamma hbar Mz, exact for any size
  for (int n_spins = 2; n_spins <= 4; ++n_spins) {
    const double gamma_g = 1.0;
    const Matrix mx = magnetization(n_spins, 0, gamma_g, p);
    const Matrix my = magnetization(n_spins, 1, gamma_g, p);
    const Matrix mz = magnetization(n_spins, 2, gamma_g, p);
    const double dev =
        (commutator(mx, my) - cplx{0.0, gamma_g * p.hbar} * mz).cwiseAbs().maxCoeff();
    rows.add("matrix:spin_commutator N=" + std::to_string(n_spins), dev, 1e-12, 1e-12 - dev,
             true, dev <= 1e-12);
  }

  // randomized ensemble: both bounds on 400 (rho, A, B) triples
  std::mt19937_64 rng(cfg.seed);
  const int dims[] = {2, 3, 4, 6, 8};
  double min_corr_margin = 1e300, min_comm_margin = 1e300;
  MatrixRelation worst_corr, worst_comm;
  const int triples = 400;
  for (int t = 0; t < triples; ++t) {
    const int dim = dims[t % 5];
    const Matrix rho = random_density(dim, rng);
    const Matrix a = random_hermitian(dim, rng);
    const Matrix b = random_hermitian(dim, rng);
    const MatrixRelation rel = matrix_relation(rho, a, b);
    if (rel.correlation_margin < min_corr_margin) {
      min_corr_margin = rel.correlation_margin;
      worst_corr = rel;
    }
    if (rel.commutator_margin < min_comm_margin) {
      min_comm_margin = rel.commutator_margin;
      worst_comm = rel;
    }
  }
  rows.add("matrix:ensemble(400) CSF", worst_corr.lhs, worst_corr.correlation_rhs,
           min_corr_margin, true, min_corr_margin >= -cfg.margin_tol);
  rows.add("matrix:ensemble(400) RSUR", worst_comm.lhs, worst_comm.commutator_rhs,
           min_comm_margin, true, min_comm_margin >= -cfg.margin_tol);

  // commuting observables with a strictly positive correlation bound: the
  // commutator bound is silent here while the correlation bound still bites
  Matrix a = Matrix::Zero(4, 4), b = Matrix::Zero(4, 4), rho = Matrix::Zero(4, 4);
  a.diagonal() << 1, 2, 3, 4;
  b.diagonal() << 2, 1, 1, 3;
  rho.diagonal() << 0.4, 0.1, 0.1, 0.4;
  const MatrixRelation rel = matrix_relation(rho, a, b);
  rows.add("matrix:commuting_pair CSF", rel.lhs, rel.correlation_rhs, rel.correlation_margin,
           true,
           rel.correlation_margin >= -cfg.margin_tol && rel.commuting_with_positive_correlation);
  rows.add("matrix:commuting_pair RSUR", rel.lhs, rel.commutator_rhs, rel.commutator_margin,
           true, rel.commutator_margin >= -cfg.margin_tol);
}

std::string default_pair_for(const WaveFunction& wf) {
  if (wf.dim() == 2) return "px,py";
  switch (wf.rep) {
    case Representation::angle:
      return "N,phi";
    case Representation::time:
      return "E,t";
    default:
      return "x,p";
  }
}

// relative where the reference is away from zero, absolute otherwise
double deviation_vs(double value, double reference) {
  const double d = std::abs(value - reference);
  return std::abs(reference) > 1e-9 ? d / std::abs(reference) : d;
}

std::string adjudicate_branch(double eps, const PacketPredictions& pred, double rel_tol) {
  const bool printed = deviation_vs(eps, pred.spread_error_p_printed) < rel_tol;
  const bool variant = deviation_vs(eps, pred.spread_error_p_variant) < rel_tol;
  if (printed && variant) return "both";
  if (printed) return "printed";
  if (variant) return "variant";
  return "none";
}

}  // namespace

int cmd_verify(const RunConfig& cfg, const VerifyOptions& opt, ReportTable& table,
               std::string& summary) {
  cfg.validate();
  if (opt.relation && *opt.relation != "csf" && *opt.relation != "rsur")
    throw contract_violation("unknown relation (expected csf or rsur): " + *opt.relation);
  table = ReportTable{{"name", "lhs", "rhs", "margin", "applicable", "pass"}, {}};
  VerdictRows rows{table};

  if (opt.state) {
    const WaveFunction wf = state_from_description(*opt.state, cfg.params, cfg.resolution);
    const std::string pair = opt.ops ? *opt.ops : default_pair_for(wf);
    relation_rows(rows, cfg, *opt.state, wf, pair, opt.relation);
  } else {
    if (opt.ops)
      throw contract_violation("--ops requires --state (catalog pairs are predefined)");
    const std::vector<CatalogEntry> catalog =
        default_catalog(cfg.params, cfg.resolution, std::min(cfg.resolution, 384));
    for (const CatalogEntry& e : catalog)
      for (const std::string& pair : e.pairs)
        relation_rows(rows, cfg, e.name, e.wf, pair, opt.relation);
    if (!opt.relation) {
      gram_rows(rows, cfg, catalog);
      two_time_rows(rows, cfg);
      matrix_rows(rows, cfg);
    }
  }

  write_report(table, cfg.output.empty() ? "-" : cfg.output, cfg.format);
  const size_t total = table.rows.size();
  size_t passed = 0;
  for (const auto& row : table.rows)
    if (std::get<bool>(row.back())) ++passed;
  std::ostringstream s;
  s << "verify: " << passed << "/" << total << " checks passed";
  summary = s.str();
  return rows.all_pass ? exit_ok : exit_usage;
}

int cmd_measure(const RunConfig& cfg, const MeasureOptions& opt, ReportTable& table,
                std::string& summary) {
  cfg.validate();
  table = ReportTable{
      {"quantity", "in_value", "out_value", "error_indicator", "reference", "rel_dev",
       "branch"},
      {}};
  double worst = 0.0;
  const auto add = [&](const std::string& q, double in, double out, double eps, double ref,
                       const std::string& branch) {
    const double dev = deviation_vs(out, ref);
    worst = std::max(worst, dev);
    table.add_row({q, in, out, eps, ref, dev, branch});
  };

  std::string note;
  if (opt.oscillator) {
    ChannelScenario s;
    s.sigma = std::sqrt(cfg.params.hbar / (2.0 * cfg.params.mass * cfg.params.omega));
    s.gamma = opt.gamma;
    s.params = cfg.params;
    const OscillatorPredictions pred = oscillator_predictions(s);
    const OscillatorChannelResult r =
        run_oscillator_pipeline(opt.gamma, cfg.params, cfg.resolution, cfg.halfwidth_mult);
    add("mean_H", pred.mean_h_in, r.mean_h, std::abs(r.mean_h - pred.mean_h_in),
        pred.mean_h_out, "");
    add("spread_H", pred.std_h_in, r.std_h, std::abs(r.std_h - pred.std_h_in), pred.std_h_out,
        "");
  } else {
    ChannelScenario s{opt.x0, opt.sigma, opt.k, opt.gamma, opt.lambda, cfg.params};
    const PacketPredictions pred = packet_predictions(s);  // throws outside the domain
    const PipelineResult r = run_packet_pipeline(s, cfg.resolution, cfg.halfwidth_mult);
    const double hbar = cfg.params.hbar;
    add("mean_x", r.in_xp.a.mean.real(), r.out_xp.a.mean.real(), r.mean_error_x, s.x0, "");
    add("mean_p", r.in_xp.b.mean.real(), r.out_xp.b.mean.real(), r.mean_error_p,
        hbar * s.k, "");
    add("spread_x", r.in_xp.a.std_dev, r.out_xp.a.std_dev, r.spread_error_x,
        pred.out_spread_x, "");
    add("spread_p", r.in_xp.b.std_dev, r.out_xp.b.std_dev, r.spread_error_p,
        pred.out_spread_p, adjudicate_branch(r.spread_error_p, pred, 1e-3));
    add("correlation_xp", std::abs(r.in_xp.correlation), std::abs(r.out_xp.correlation),
        r.correlation_error, 0.5 * hbar, "");
    add("density_std", r.in_xp.a.std_dev, r.out_density_std,
        std::abs(r.out_density_std - r.in_xp.a.std_dev), pred.out_density_std, "");
    if (s.k != 0.0)
      add("current_std", r.in_xp.a.std_dev, r.out_current_std,
          std::abs(r.out_current_std - r.in_xp.a.std_dev), pred.out_current_std, "");
    if (!r.spread_p_reliable)
      note = "; momentum spread unreliable (density floor truncates the current^2/density "
             "integral)";
  }

  write_report(table, cfg.output.empty() ? "-" : cfg.output, cfg.format);
  std::ostringstream s;
  s << "measure: " << table.rows.size() << " quantities, max deviation from reference "
    << format_number(worst) << note;
  summary = s.str();
  return exit_ok;
}

int cmd_scan(const RunConfig& cfg, const ScanOptions& opt, ReportTable& table,
             std::string& summary) {
  cfg.validate();
  if (opt.gammas.empty() || opt.lambdas.empty()) {
    summary = "scan: empty gamma/lambda range";
    return exit_usage;
  }
  std::vector<double> gammas = opt.gammas, lambdas = opt.lambdas;
  std::sort(gammas.begin(), gammas.end());
  std::sort(lambdas.begin(), lambdas.end());
  table = ReportTable{{"gamma", "lambda", "eps_mean_x", "eps_mean_p", "eps_spread_x",
                       "eps_spread_p", "eps_corr", "out_density_std", "momentum_in_domain",
                       "spread_p_reliable"},
                      {}};
  // One shared grid for the whole sweep keeps the kernel cache hot: the
  // window must fit the widest scenario, so take the maximum requirement.
  double window = 0.0;
  for (double g : gammas)
    for (double l : lambdas) {
      ChannelScenario s{opt.packet.x0, opt.packet.sigma, opt.packet.k, g, l, cfg.params};
      window = std::max(window, packet_window_halfwidth(s, cfg.halfwidth_mult));
    }
  for (double g : gammas) {
    for (double l : lambdas) {
      ChannelScenario s{opt.packet.x0, opt.packet.sigma, opt.packet.k, g, l, cfg.params};
      const PipelineResult r = run_packet_pipeline(s, cfg.resolution, cfg.halfwidth_mult, window);
      table.add_row({g, l, r.mean_error_x, r.mean_error_p, r.spread_error_x,
                     r.spread_error_p, r.correlation_error, r.out_density_std,
                     packet_momentum_in_domain(s), r.spread_p_reliable});
    }
  }
  write_report(table, cfg.output.empty() ? "-" : cfg.output, cfg.format);
  std::ostringstream s;
  s << "scan: " << table.rows.size() << " points (" << gammas.size() << " gamma x "
    << lambdas.size() << " lambda)";
  summary = s.str();
  return exit_ok;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  const auto to_double = [](const std::string& tok) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw contract_violation("range: not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw contract_violation("range: trailing junk in '" + tok + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(to_double(tok));
    if (parts.size() != 3)
      throw contract_violation("range: expected lo:hi:step, got '" + text + "'");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(step > 0.0)) throw contract_violation("range: step must be > 0");
    if (hi < lo) throw contract_violation("range: hi must be >= lo");
    // snap the endpoint: accumulated steps land within roundoff of hi
    for (double v = lo; v <= hi + 1e-9 * step; v += step)
      out.push_back(std::abs(v - hi) <= 1e-9 * step ? hi : v);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(to_double(tok));
  return out;
}

}  // namespace qfr
