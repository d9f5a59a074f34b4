#include "qfr/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "qfr/errors.hpp"

namespace qfr {

namespace {
constexpr double pi = std::numbers::pi;
int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }
}  // namespace

// ---------------------------------------------------------------------------
// Classical channel
// ---------------------------------------------------------------------------

ClassicalDistribution make_distribution(Grid g, std::vector<double> density) {
  if (static_cast<int>(density.size()) != g.n)
    throw contract_violation("distribution: sample count does not match grid");
  for (double v : density)
    if (v < -1e-12) throw contract_violation("distribution: negative density");
  ClassicalDistribution d{g, std::move(density)};
  const double total = integrate(d.grid, d.density);
  if (std::abs(total - 1.0) > 1e-10)
    throw contract_violation("distribution: not normalized (integral = " +
                             std::to_string(total) + ")");
  return d;
}

ClassicalDistribution classical_transform(const ClassicalDistribution& w_in,
                                          const TransferKernel& g) {
  if (!(w_in.grid == g.source))
    throw contract_violation("classical transform: kernel grid does not match distribution");
  ClassicalDistribution out{g.target, apply_kernel(g, w_in.density)};
  return out;
}

ClassicalMoments classical_estimate(const ClassicalDistribution& w) {
  const std::vector<double> wts = quadrature_weights(w.grid);
  double mean = 0.0;
  for (int i = 0; i < w.grid.n; ++i) mean += wts[i] * w.grid.node(i) * w.density[i];
  ClassicalMoments m;
  m.mean = mean;
  m.central.assign(5, 0.0);  // orders 2..6
  for (int i = 0; i < w.grid.n; ++i) {
    const double d = w.grid.node(i) - mean;
    const double wd = wts[i] * w.density[i];
    double power = d * d;
    for (int ord = 2; ord <= 6; ++ord) {
      m.central[ord - 2] += wd * power;
      power *= d;
    }
  }
  m.std_dev = std::sqrt(std::max(0.0, m.central[0]));
  return m;
}

ErrorReport error_indicators_classical(const ClassicalDistribution& in,
                                       const ClassicalDistribution& out, int max_order) {
  if (max_order < 2) throw contract_violation("error indicators: max_order must be >= 2");
  if (max_order > 6) throw contract_violation("error indicators: central moments stop at 6");
  const ClassicalMoments mi = classical_estimate(in);
  const ClassicalMoments mo = classical_estimate(out);
  ErrorReport r;
  r.mean_errors = {std::abs(mo.mean - mi.mean)};
  r.spread_errors = {std::abs(mo.std_dev - mi.std_dev)};
  for (int ord = 3; ord <= max_order; ++ord)
    r.higher_order.push_back(std::abs(mo.central[ord - 2] - mi.central[ord - 2]));
  return r;
}

// ---------------------------------------------------------------------------
// Quantum channel
// ---------------------------------------------------------------------------

namespace {

// Kernels are expensive to build and large in memory; parameter sweeps reuse
// them. Small LRU keyed by grid geometry and width, sharing ownership with
// any channels still holding an evicted kernel.
using KernelKey = std::tuple<double, double, int, double>;
using KernelPtr = std::shared_ptr<const TransferKernel>;
std::vector<std::pair<KernelKey, KernelPtr>>& kernel_cache() {
  static std::vector<std::pair<KernelKey, KernelPtr>> cache;  // front = most recent
  return cache;
}

KernelPtr cached_kernel(const Grid& g, double width) {
  if (width == 0.0)  // implicit identity, free to build
    return std::make_shared<const TransferKernel>(gaussian_kernel(g, 0.0));
  auto& cache = kernel_cache();
  const KernelKey key{g.lower, g.upper, g.n, width};
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if (it->first == key) {
      std::rotate(cache.begin(), it, it + 1);
      return cache.front().second;
    }
  }
  cache.emplace(cache.begin(), key,
                std::make_shared<const TransferKernel>(gaussian_kernel(g, width)));
  if (cache.size() > 5) cache.pop_back();
  return cache.front().second;
}

}  // namespace

void clear_channel_cache() { kernel_cache().clear(); }

MeasurementChannel gaussian_channel(const Grid& g, double gamma, double lambda) {
  return MeasurementChannel{cached_kernel(g, gamma), {cached_kernel(g, lambda)}};
}

DensityCurrent qms_apply(const MeasurementChannel& channel, const DensityCurrent& in) {
  if (in.axes.size() != 1)
    throw contract_violation("measurement channel: only 1D signals are supported");
  const Grid& g = in.axes[0];
  if (!channel.density_kernel || !(channel.density_kernel->source == g))
    throw contract_violation("measurement channel: density kernel grid mismatch");
  if (channel.current_kernels.size() != in.current.size())
    throw contract_violation("measurement channel: need one current kernel per component");
  DensityCurrent out;
  out.axes = in.axes;
  out.density = apply_kernel(*channel.density_kernel, in.density);
  out.current.reserve(in.current.size());
  for (size_t c = 0; c < in.current.size(); ++c) {
    if (!channel.current_kernels[c] || !(channel.current_kernels[c]->source == g))
      throw contract_violation("measurement channel: current kernel grid mismatch");
    out.current.push_back(apply_kernel(*channel.current_kernels[c], in.current[c]));
  }
  // balanced kernel marginals conserve both integrals; verify
  const double rho_out = integrate(g, out.density);
  if (std::abs(rho_out - 1.0) > 1e-10)
    throw contract_violation("measurement channel: output density lost normalization");
  for (size_t c = 0; c < in.current.size(); ++c) {
    const double j_in = integrate(g, in.current[c]);
    const double j_out = integrate(g, out.current[c]);
    if (std::abs(j_out - j_in) > 1e-9)
      throw contract_violation("measurement channel: output current not conserved");
  }
  return out;
}

namespace {

// Polar-decomposition fields of a (density, current) pair; see the header.
struct SignalFields {
  std::vector<double> r;       // sqrt(density)
  std::vector<double> dr;      // r'
  std::vector<double> d2r;     // r''
  std::vector<double> rphip;   // r * phi' = m J / (hbar r), 0 under the floor
  std::vector<double> phip;    // phi' = m J / (hbar density), 0 under the floor
  std::vector<double> dphip;   // (phi')'
  std::vector<double> dj;      // J'
  double div_residual = 0.0;   // |∫ J'|
};

SignalFields signal_fields(const DensityCurrent& dc, const PhysicalParams& p,
                           double density_floor) {
  const Grid& g = dc.axes[0];
  const int n = g.n;
  SignalFields f;
  f.r.resize(n);
  for (int i = 0; i < n; ++i) f.r[i] = std::sqrt(std::max(0.0, dc.density[i]));
  f.dr = differentiate(g, f.r, 1);
  f.d2r = differentiate(g, f.r, 2);
  const std::vector<double>& j = dc.current[0];
  f.rphip.assign(n, 0.0);
  f.phip.assign(n, 0.0);
  const double mh = p.mass / p.hbar;
  for (int i = 0; i < n; ++i) {
    if (dc.density[i] >= density_floor) {
      f.rphip[i] = mh * j[i] / f.r[i];
      f.phip[i] = mh * j[i] / dc.density[i];
    }
  }
  f.dphip = differentiate(g, f.phip, 1);
  f.dj = differentiate(g, j, 1);
  f.div_residual = std::abs(integrate(g, f.dj));
  return f;
}

struct OutEstimateContext {
  const DensityCurrent& dc;
  const SignalFields& fields;
  const OperatorSpec::PolynomialForm& form;
  const PhysicalParams& p;
};

// G_A[i] = (A psi)_i * exp(-i phi_i): the operator applied to the state,
// written in the gauge where the output phase is removed. Every supported
// observable needs only F0..F2.
std::vector<cplx> gauged_apply(const OutEstimateContext& c) {
  const Grid& g = c.dc.axes[0];
  const int n = g.n;
  const SignalFields& f = c.fields;
  std::vector<cplx> out(n);
  const cplx a0 = c.form.constant;
  const cplx a1 = c.form.first_order;
  const cplx a2 = c.form.second_order;
  for (int i = 0; i < n; ++i) {
    const double x = g.node(i);
    cplx v = (a0 + c.form.potential_at(x)) * f.r[i];
    if (a1 != cplx{0.0, 0.0}) v += a1 * cplx{f.dr[i], f.rphip[i]};
    if (a2 != cplx{0.0, 0.0})
      v += a2 * cplx{f.d2r[i] - f.rphip[i] * f.phip[i],
                     2.0 * f.dr[i] * f.phip[i] + f.r[i] * f.dphip[i]};
    out[i] = v;
  }
  return out;
}

// Mean (psi, A psi) from (density, current) alone. The first-derivative term
// uses only the current (the density-gradient half integrates to zero for
// decaying signals and is dropped analytically); the second-derivative term
// keeps its divergence-of-current piece as a stationarity consistency check.
cplx direct_mean(const OutEstimateContext& c, double divergence_tol) {
  const Grid& g = c.dc.axes[0];
  const std::vector<double> w = quadrature_weights(g);
  const SignalFields& f = c.fields;
  const double mh = c.p.mass / c.p.hbar;
  cplx mean = c.form.constant;  // density is normalized
  double v_part = 0.0, j_part = 0.0, kin_part = 0.0, jsq_part = 0.0, divj = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    if (!c.form.potentials.empty()) v_part += w[i] * c.form.potential_at(x) * c.dc.density[i];
    j_part += w[i] * c.dc.current[0][i];
    kin_part += w[i] * f.r[i] * f.d2r[i];
    jsq_part += w[i] * f.rphip[i] * f.rphip[i];
    divj += w[i] * f.dj[i];
  }
  mean += v_part;
  if (c.form.first_order != cplx{0.0, 0.0})
    mean += c.form.first_order * cplx{0.0, mh * j_part};
  if (c.form.second_order != cplx{0.0, 0.0}) {
    if (f.div_residual > divergence_tol)
      throw domain_violation(
          "output estimator: current is not divergence-free (stationarity check |∫J'| = " +
          std::to_string(f.div_residual) + ")");
    mean += c.form.second_order * (cplx{kin_part - jsq_part, 0.0} + cplx{0.0, mh * divj});
  }
  return mean;
}

EstimatorReport estimate_from_fields(const OutEstimateContext& c, double divergence_tol) {
  EstimatorReport r;
  r.mean = direct_mean(c, divergence_tol);
  r.deviation = gauged_apply(c);
  const Grid& g = c.dc.axes[0];
  for (int i = 0; i < g.n; ++i) r.deviation[i] -= r.mean * c.fields.r[i];
  const std::vector<double> w = quadrature_weights(g);
  double var = 0.0;
  for (int i = 0; i < g.n; ++i) var += w[i] * std::norm(r.deviation[i]);
  r.std_dev = std::sqrt(std::max(0.0, var));
  return r;
}

void require_1d_signal(const DensityCurrent& dc) {
  if (dc.axes.size() != 1 || dc.current.size() != 1)
    throw contract_violation("output estimator: need a 1D (density, current) signal");
  if (dc.density.size() != static_cast<size_t>(dc.axes[0].n))
    throw contract_violation("output estimator: density size mismatch");
}

}  // namespace

EstimatorReport out_estimate(const DensityCurrent& out, const OperatorSpec& op,
                             const PhysicalParams& p, double density_floor,
                             double divergence_tol) {
  require_1d_signal(out);
  const OperatorSpec::PolynomialForm form = op.polynomial_form();
  const SignalFields fields = signal_fields(out, p, density_floor);
  const OutEstimateContext c{out, fields, form, p};
  return estimate_from_fields(c, divergence_tol);
}

PairReport out_estimate_pair(const DensityCurrent& out, const OperatorSpec& a,
                             const OperatorSpec& b, const PhysicalParams& p,
                             double density_floor, double divergence_tol) {
  require_1d_signal(out);
  const SignalFields fields = signal_fields(out, p, density_floor);
  const OperatorSpec::PolynomialForm fa = a.polynomial_form();
  const OperatorSpec::PolynomialForm fb = b.polynomial_form();
  PairReport r;
  r.a = estimate_from_fields({out, fields, fa, p}, divergence_tol);
  r.b = estimate_from_fields({out, fields, fb, p}, divergence_tol);
  const std::vector<double> w = quadrature_weights(out.axes[0]);
  cplx corr{0.0, 0.0};
  for (size_t i = 0; i < r.a.deviation.size(); ++i)
    corr += w[i] * std::conj(r.a.deviation[i]) * r.b.deviation[i];
  r.correlation = corr;
  return r;
}

double out_central_moment(const DensityCurrent& out, const OperatorSpec& op,
                          const PhysicalParams& p, int order) {
  require_1d_signal(out);
  if (order < 2) throw contract_violation("output moment: order must be >= 2");
  const OperatorSpec::PolynomialForm form = op.polynomial_form();
  if (!form.multiplicative())
    throw contract_violation(
        "output moment: higher moments are only determined by the density for "
        "multiplicative observables");
  (void)p;
  const Grid& g = out.axes[0];
  const std::vector<double> w = quadrature_weights(g);
  double mean = 0.0;
  for (int i = 0; i < g.n; ++i)
    mean += w[i] * (form.constant.real() + form.potential_at(g.node(i))) * out.density[i];
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double d = form.constant.real() + form.potential_at(g.node(i)) - mean;
    acc += w[i] * std::pow(d, order) * out.density[i];
  }
  return acc;
}

ErrorReport error_indicators_quantum(const std::vector<EstimatorReport>& in,
                                     const std::vector<EstimatorReport>& out,
                                     std::optional<cplx> corr_in, std::optional<cplx> corr_out) {
  if (in.size() != out.size())
    throw contract_violation("error indicators: observable lists differ in length");
  if (corr_in.has_value() != corr_out.has_value())
    throw contract_violation("error indicators: correlation must be given for both sides");
  ErrorReport r;
  for (size_t i = 0; i < in.size(); ++i) {
    r.mean_errors.push_back(std::abs(out[i].mean - in[i].mean));
    r.spread_errors.push_back(std::abs(out[i].std_dev - in[i].std_dev));
  }
  if (corr_in) r.correlation_errors.push_back(std::abs(*corr_out - *corr_in));
  return r;
}

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

namespace {

WaveFunction packet_on_grid(const Grid& g, double x0, double sigma, double k,
                            const PhysicalParams& p) {
  WaveFunction wf;
  wf.axes = {g};
  wf.params = p;
  wf.samples.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double dx = g.node(i) - x0;
    wf.samples[i] = std::exp(cplx{-dx * dx / (4.0 * sigma * sigma), k * dx});
  }
  return normalized(std::move(wf));
}

// Half-width of the region where a Gaussian density of spread s stays above
// the floor.
double floor_radius(double s, double density_floor) {
  const double arg = -2.0 * std::log(density_floor * std::sqrt(2.0 * pi) * s);
  return s * std::sqrt(std::max(0.0, arg));
}

}  // namespace

double packet_window_halfwidth(const ChannelScenario& s, double halfwidth_mult) {
  const double density_floor = 1e-14;
  const double s_out = std::sqrt(s.sigma * s.sigma + s.gamma * s.gamma);
  const double u_out = std::sqrt(s.sigma * s.sigma + s.lambda * s.lambda);
  // The grid must reach the density floor of the widest signal, since that
  // floor is what truncates the current^2/density integrand.
  const double base = halfwidth_mult * std::max({s.sigma, s_out, u_out});
  return std::max(base, 1.05 * floor_radius(s_out, density_floor));
}

PipelineResult run_packet_pipeline(const ChannelScenario& s, int resolution,
                                   double halfwidth_mult, double window_halfwidth) {
  if (!(s.sigma > 0.0)) throw contract_violation("pipeline: sigma must be > 0");
  if (s.gamma < 0.0 || s.lambda < 0.0)
    throw contract_violation("pipeline: channel widths must be >= 0");
  const PhysicalParams& p = s.params;
  const double density_floor = 1e-14;
  const double s_out = std::sqrt(s.sigma * s.sigma + s.gamma * s.gamma);
  const double u_out = std::sqrt(s.sigma * s.sigma + s.lambda * s.lambda);
  const double auto_w = packet_window_halfwidth(s, halfwidth_mult);
  if (window_halfwidth != 0.0 && window_halfwidth < auto_w)
    throw contract_violation("pipeline: fixed window is narrower than the scenario needs");
  const double w = window_halfwidth != 0.0 ? window_halfwidth : auto_w;
  const Grid grid = Grid::line(s.x0 - w, s.x0 + w, make_odd(resolution));

  const WaveFunction wf = packet_on_grid(grid, s.x0, s.sigma, s.k, p);
  const OperatorSpec x = position_op(0);
  const OperatorSpec pm = momentum_op(p, 0);

  PipelineResult r;
  r.in_xp = estimate_pair(wf, x, pm);

  const DensityCurrent dc = density_current(wf);
  const MeasurementChannel channel = gaussian_channel(grid, s.gamma, s.lambda);
  const DensityCurrent out = qms_apply(channel, dc);

  r.out_xp = out_estimate_pair(out, x, pm, p, density_floor);

  r.out_density_std = classical_estimate({grid, out.density}).std_dev;
  const double j_total = integrate(grid, out.current[0]);
  if (std::abs(j_total) > 1e-12) {
    std::vector<double> jn(out.current[0]);
    for (double& v : jn) v /= j_total;
    r.out_current_std = classical_estimate({grid, jn}).std_dev;
  }

  r.mean_error_x = std::abs(r.out_xp.a.mean - r.in_xp.a.mean);
  r.mean_error_p = std::abs(r.out_xp.b.mean - r.in_xp.b.mean);
  r.correlation_error = std::abs(r.out_xp.correlation - r.in_xp.correlation);
  r.spread_error_x = std::abs(r.out_xp.a.std_dev - r.in_xp.a.std_dev);
  r.spread_error_p = std::abs(r.out_xp.b.std_dev - r.in_xp.b.std_dev);

  // The momentum spread integrates current^2/density, whose integrand decays
  // like exp(-c x^2) with the rate below; when the density floor truncates a
  // non-negligible part of that integral the value is flagged unreliable.
  if (s.k != 0.0) {
    const double c_rate = 1.0 / (u_out * u_out) - 0.5 / (s_out * s_out);
    const double cutoff = floor_radius(s_out, density_floor);
    r.spread_p_reliable = c_rate > 0.0 && std::sqrt(c_rate) * cutoff >= 3.5;
  }
  return r;
}

OscillatorChannelResult run_oscillator_pipeline(double gamma, const PhysicalParams& p,
                                                int resolution, double halfwidth_mult) {
  if (gamma < 0.0) throw contract_violation("pipeline: channel width must be >= 0");
  const double sigma = std::sqrt(p.hbar / (2.0 * p.mass * p.omega));
  const double s_out = std::sqrt(sigma * sigma + gamma * gamma);
  const double w = halfwidth_mult * std::max(sigma, s_out);
  const Grid grid = Grid::line(-w, w, make_odd(resolution));
  const WaveFunction wf = packet_on_grid(grid, 0.0, sigma, 0.0, p);
  const DensityCurrent dc = density_current(wf);
  const MeasurementChannel channel = gaussian_channel(grid, gamma, 0.0);
  const DensityCurrent out = qms_apply(channel, dc);
  const EstimatorReport h = out_estimate(out, oscillator_hamiltonian(p), p);
  return OscillatorChannelResult{h.mean.real(), h.std_dev};
}

// ---------------------------------------------------------------------------
// Linear-response and thermodynamic dispersion checks
// ---------------------------------------------------------------------------

double fdt_dispersion(const SusceptibilitySpectrum& spec, double temperature,
                      const PhysicalParams& p, double tail_tol) {
  if (!(temperature > 0.0)) throw contract_violation("fdt: temperature must be > 0");
  const size_t n = spec.omega.size();
  if (n < 3 || spec.chi_im.size() != n)
    throw contract_violation("fdt: need matching omega / chi'' samples (>= 3)");
  if (!(spec.omega.front() > 0.0))
    throw contract_violation("fdt: frequencies must be strictly positive");
  for (size_t i = 1; i < n; ++i)
    if (!(spec.omega[i] > spec.omega[i - 1]))
      throw contract_violation("fdt: frequencies must be ascending");
  for (double v : spec.chi_im)
    if (!std::isfinite(v)) throw contract_violation("fdt: non-finite spectrum sample");
  if (std::abs(spec.chi_im.back()) > tail_tol)
    throw domain_violation("fdt: spectrum has not decayed at the grid edge (tail " +
                           std::to_string(std::abs(spec.chi_im.back())) + ")");

  const double alpha = p.hbar / (2.0 * p.k_boltzmann * temperature);
  auto integrand = [&](size_t i) {
    const double w = spec.omega[i];
    return 1.0 / std::tanh(alpha * w) * spec.chi_im[i];
  };

  // positive-axis quadrature: Simpson when the grid is uniform with an odd
  // point count, trapezoid otherwise
  double body = 0.0;
  const double h0 = spec.omega[1] - spec.omega[0];
  bool uniform = true;
  for (size_t i = 1; i + 1 < n && uniform; ++i)
    uniform = std::abs((spec.omega[i + 1] - spec.omega[i]) - h0) < 1e-9 * h0;
  if (uniform && n % 2 == 1) {
    body = integrand(0) + integrand(n - 1);
    for (size_t i = 1; i + 1 < n; ++i) body += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i);
    body *= h0 / 3.0;
  } else {
    for (size_t i = 0; i + 1 < n; ++i)
      body += 0.5 * (spec.omega[i + 1] - spec.omega[i]) * (integrand(i) + integrand(i + 1));
  }
  // gap [-w_0, w_0]: coth * chi'' tends to a finite constant at 0, equal to
  // the first sample's integrand value up to O(w_0^2)
  const double gap = 2.0 * spec.omega[0] * integrand(0);
  return (p.hbar / (2.0 * pi)) * (2.0 * body + gap);
}

double thermo_dispersion(const ThermoModel& model) {
  const auto n = model.hessian.rows();
  if (model.hessian.cols() != n || model.gradient.size() != n)
    throw contract_violation("thermo model: gradient / Hessian dimensions disagree");
  if (!model.hessian.isApprox(model.hessian.transpose(), 1e-12))
    throw contract_violation("thermo model: Hessian must be symmetric");
  const Eigen::MatrixXd neg = -model.hessian;
  Eigen::LLT<Eigen::MatrixXd> llt(neg);
  if (llt.info() != Eigen::Success)
    throw contract_violation("thermo model: entropy Hessian must be negative definite");
  const Eigen::VectorXd solved = llt.solve(model.gradient);
  return model.k_boltzmann * model.gradient.dot(solved);
}

}  // namespace qfr
