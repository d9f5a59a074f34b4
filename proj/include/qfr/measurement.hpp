#pragma once
// The information-transmission model of measurement.
//
// Classical layer: a distribution is pushed through a stochastic transfer
// kernel; moment errors of the output relative to the input quantify what the
// channel loses.
//
// Quantum layer: a pure state enters as the pair (density, current). The
// channel smears the density with one kernel (width gamma) and each current
// component with another (width lambda). Crucially, no output wave function
// is ever rebuilt: all output moments are computed directly from
// (density, current) via the polar-decomposition fields
//   F0 = R,  F1 = R' + i R Phi',  F2 = R'' - R Phi'^2 + i (2 R' Phi' + R Phi''),
// where R = sqrt(density) and Phi' = m J / (hbar density). Any observable that
// is a polynomial in {1, f(x), d/dx, d2/dx2} can then be estimated with means
// (psi, A psi) and spreads ||(A - <A>) psi|| assembled from these fields.

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qfr/estimate.hpp"
#include "qfr/numerics.hpp"
#include "qfr/operators.hpp"
#include "qfr/params.hpp"
#include "qfr/wavefunction.hpp"

namespace qfr {

// ---------------------------------------------------------------------------
// Classical channel
// ---------------------------------------------------------------------------

struct ClassicalDistribution {
  Grid grid;
  std::vector<double> density;  // nonnegative, integrates to 1
};

// Validates shape, nonnegativity and normalization (within 1e-10).
ClassicalDistribution make_distribution(Grid g, std::vector<double> density);

// w_out(a) = integral G(a,a') w_in(a') da'. Grids must match.
ClassicalDistribution classical_transform(const ClassicalDistribution& w_in,
                                          const TransferKernel& g);

struct ClassicalMoments {
  double mean = 0.0;
  double std_dev = 0.0;
  std::vector<double> central;  // central moments of order 2..6
};

ClassicalMoments classical_estimate(const ClassicalDistribution& w);

// Transmission-error indicators: absolute differences of like moments.
struct ErrorReport {
  std::vector<double> mean_errors;         // |<A>_out - <A>_in| per observable
  std::vector<double> spread_errors;       // |dA_out - dA_in| per observable
  std::vector<double> correlation_errors;  // |C_out - C_in| per listed pair
  std::vector<double> higher_order;        // |m_n,out - m_n,in| for n = 3..max_order
};

ErrorReport error_indicators_classical(const ClassicalDistribution& in,
                                       const ClassicalDistribution& out, int max_order = 2);

// ---------------------------------------------------------------------------
// Quantum channel
// ---------------------------------------------------------------------------

struct MeasurementChannel {
  std::shared_ptr<const TransferKernel> density_kernel;  // width gamma
  std::vector<std::shared_ptr<const TransferKernel>> current_kernels;  // width lambda, per axis
};

// Gaussian channel on a 1D grid. Kernels are shared out of a small LRU cache
// keyed by (grid, width), because parameter sweeps reuse them heavily and a
// dense kernel is large; the cache can be dropped explicitly.
MeasurementChannel gaussian_channel(const Grid& g, double gamma, double lambda);
void clear_channel_cache();

// rho_out = Gamma rho_in, J_out = Lambda J_in (componentwise). Verifies that
// the output density stays normalized (1e-10) and the current integral is
// conserved (1e-9), which the balanced kernel marginals guarantee.
DensityCurrent qms_apply(const MeasurementChannel& channel, const DensityCurrent& in);

// Moment estimate from (density, current) alone, for an observable in
// polynomial form (see OperatorSpec::polynomial_form); anything else throws
// contract_violation. Nodes where density < density_floor are excluded from
// the current/density ratio. The stationarity consistency check |∫ J'| must
// stay below divergence_tol whenever a second-order operator is evaluated;
// a violation throws domain_violation.
EstimatorReport out_estimate(const DensityCurrent& out, const OperatorSpec& op,
                             const PhysicalParams& p, double density_floor = 1e-14,
                             double divergence_tol = 1e-8);
PairReport out_estimate_pair(const DensityCurrent& out, const OperatorSpec& a,
                             const OperatorSpec& b, const PhysicalParams& p,
                             double density_floor = 1e-14, double divergence_tol = 1e-8);

// Higher central moment <(A - <A>)^n> of a multiplicative observable, the only
// family whose higher output moments are determined by the density alone.
double out_central_moment(const DensityCurrent& out, const OperatorSpec& op,
                          const PhysicalParams& p, int order);

// Absolute differences per observable; lists must have equal length.
ErrorReport error_indicators_quantum(const std::vector<EstimatorReport>& in,
                                     const std::vector<EstimatorReport>& out,
                                     std::optional<cplx> corr_in = std::nullopt,
                                     std::optional<cplx> corr_out = std::nullopt);

// ---------------------------------------------------------------------------
// Gaussian-packet pipeline (input packet -> channel -> all standard outputs)
// ---------------------------------------------------------------------------

struct ChannelScenario {
  double x0 = 0.0;
  double sigma = 1.0;
  double k = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  PhysicalParams params;
};

struct PipelineResult {
  PairReport in_xp;    // direct wave-function estimates of the input (x, p)
  PairReport out_xp;   // output moments from (density, current) only
  double out_density_std = 0.0;
  double out_current_std = 0.0;  // spread of the normalized current; 0 when J == 0
  double mean_error_x = 0.0;
  double mean_error_p = 0.0;
  double correlation_error = 0.0;
  double spread_error_x = 0.0;	// |dx_out - dx_in|
  double spread_error_p = 0.0;	// |dp_out - dp_in|
  bool spread_p_reliable = true;  // false when the density floor truncates the
                                  // current^2/density tail noticeably
};

// Window half-width the pipeline picks for a scenario: halfwidth_mult output
// spreads, widened if needed so the grid reaches the density floor (which is
// what truncates the current^2/density integrand).
double packet_window_halfwidth(const ChannelScenario& s, double halfwidth_mult = 8.0);

// window_halfwidth = 0 sizes the window automatically per scenario. Passing
// the maximum of packet_window_halfwidth over a family of scenarios instead
// puts them all on one grid, so sweeps reuse cached transfer kernels; a fixed
// window narrower than the scenario's own requirement is rejected.
PipelineResult run_packet_pipeline(const ChannelScenario& s, int resolution = 2048,
                                   double halfwidth_mult = 8.0,
                                   double window_halfwidth = 0.0);

// Oscillator ground state through a density-only channel (lambda irrelevant,
// J = 0): output <H> and dH computed from the smeared density.
struct OscillatorChannelResult {
  double mean_h = 0.0;
  double std_h = 0.0;
};

OscillatorChannelResult run_oscillator_pipeline(double gamma, const PhysicalParams& p,
                                                int resolution = 4096,
                                                double halfwidth_mult = 8.0);

// ---------------------------------------------------------------------------
// Linear-response and thermodynamic dispersion checks
// ---------------------------------------------------------------------------

// Absorptive part of a susceptibility, sampled on an ascending grid of
// strictly positive frequencies; the odd extension to negative frequencies is
// implied. The samples must have decayed below the tail tolerance at the last
// grid point, otherwise the spectrum is rejected as non-integrable.
struct SusceptibilitySpectrum {
  std::vector<double> omega;
  std::vector<double> chi_im;
};

// Equilibrium dispersion (squared spread) of the responding observable:
//   (hbar / 2 pi) * integral over the full frequency axis of
//       coth(hbar w / 2 kT) chi''(w),
// evaluated as twice the positive-axis integral plus a small-frequency gap
// term using chi''(w) ~ w near 0 (coth * chi'' tends to a finite constant).
double fdt_dispersion(const SusceptibilitySpectrum& spec, double temperature,
                      const PhysicalParams& p, double tail_tol = 1e-8);

// Gaussian equilibrium fluctuation model: gradient of the observable with
// respect to the slow variables, and the (negative definite) entropy Hessian.
struct ThermoModel {
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  double k_boltzmann = 1.0;
};

// Dispersion k_B * g^T (-Hessian)^-1 g >= 0; throws contract_violation when
// the Hessian is not symmetric negative definite.
double thermo_dispersion(const ThermoModel& model);

}  // namespace qfr
