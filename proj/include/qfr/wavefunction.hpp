#pragma once
// Sampled wave functions on 1D or 2D tensor grids, plus derived densities.

#include <complex>
#include <string>
#include <vector>

#include "qfr/grid.hpp"
#include "qfr/numerics.hpp"
#include "qfr/params.hpp"

namespace qfr {

// Which coordinate the samples are a function of. Purely informational; the
// operator algebra does not depend on it.
enum class Representation { coordinate, angle, time };

struct WaveFunction {
  std::vector<Grid> axes;    // 1 or 2 axes; 2D data is row-major (axis 0 outer)
  std::vector<cplx> samples;
  PhysicalParams params;
  Representation rep = Representation::coordinate;

  int dim() const { return static_cast<int>(axes.size()); }
  size_t size() const;
  void validate() const;  // throws contract_violation on shape mismatch
};

double norm_squared(const WaveFunction& wf);
WaveFunction normalized(WaveFunction wf);

// Probability density and probability current, sampled on the same grid(s).
// current[a] is the component along axis a: (hbar/m) Im(conj(psi) d_a psi).
struct DensityCurrent {
  std::vector<Grid> axes;
  std::vector<double> density;
  std::vector<std::vector<double>> current;
};

DensityCurrent density_current(const WaveFunction& wf);

// Tensor-product quadrature weights matching wf.samples' layout.
std::vector<double> sample_weights(const std::vector<Grid>& axes);

// Weighted inner product  sum_i w_i conj(u_i) v_i  over a shared grid layout.
cplx inner_product(const std::vector<Grid>& axes, const std::vector<cplx>& u,
                   const std::vector<cplx>& v);

}  // namespace qfr
