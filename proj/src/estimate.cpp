#include "qfr/estimate.hpp"

#include <cmath>

#include "qfr/errors.hpp"

namespace qfr {

namespace {
void require_normalized(const WaveFunction& wf, double tol) {
  const double n2 = norm_squared(wf);
  if (std::abs(n2 - 1.0) > tol)
    throw contract_violation("estimate: state is not normalized (|norm^2 - 1| = " +
                             std::to_string(std::abs(n2 - 1.0)) + ")");
}
}  // namespace

EstimatorReport estimate(const WaveFunction& wf, const OperatorSpec& a, double norm_tol) {
  require_normalized(wf, norm_tol);
  EstimatorReport r;
  std::vector<cplx> av = a.apply(wf);
  r.mean = inner_product(wf.axes, wf.samples, av);
  r.deviation = std::move(av);
  for (size_t i = 0; i < r.deviation.size(); ++i) r.deviation[i] -= r.mean * wf.samples[i];
  const double var = inner_product(wf.axes, r.deviation, r.deviation).real();
  r.std_dev = std::sqrt(std::max(0.0, var));
  return r;
}

PairReport estimate_pair(const WaveFunction& wf, const OperatorSpec& a, const OperatorSpec& b,
                         double norm_tol) {
  PairReport r;
  r.a = estimate(wf, a, norm_tol);
  r.b = estimate(wf, b, norm_tol);
  r.correlation = inner_product(wf.axes, r.a.deviation, r.b.deviation);
  return r;
}

cplx central_moment(const WaveFunction& wf, const OperatorSpec& a, const OperatorSpec& b,
                    int r, int s) {
  if (r < 0 || s < 0 || r + s < 1)
    throw contract_violation("central_moment: orders must be nonnegative, r+s >= 1");
  require_normalized(wf, 1e-8);
  const cplx mean_a = inner_product(wf.axes, wf.samples, a.apply(wf));
  const cplx mean_b = inner_product(wf.axes, wf.samples, b.apply(wf));
  // (psi, (dA)^r (dB)^s psi) evaluated right to left with the seam flag
  // threaded through every application.
  OperatorSpec::Applied acc{wf.samples, true};
  const OperatorSpec da = a + OperatorSpec::scalar(-mean_a);
  const OperatorSpec db = b + OperatorSpec::scalar(-mean_b);
  for (int i = 0; i < s; ++i) acc = db.apply_tracked(wf.axes, acc.values, acc.seam_ok);
  for (int i = 0; i < r; ++i) acc = da.apply_tracked(wf.axes, acc.values, acc.seam_ok);
  return inner_product(wf.axes, wf.samples, acc.values);
}

}  // namespace qfr
