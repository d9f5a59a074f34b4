#pragma once
// Quadrature, finite-difference differentiation, and dense transfer kernels.
//
// Quadrature rule selection: composite Simpson on line grids with an odd node
// count, trapezoid on line grids with an even node count, rectangle rule on
// periodic grids (which is spectrally accurate for smooth periodic data).
//
// Differentiation: 4th-order central stencils in the interior; on line grids
// the four outermost nodes use one-sided / narrow 2nd-order stencils. On
// periodic grids the stencils wrap around by default; `interval` mode instead
// treats the samples as a function on the open interval (no identification of
// the seam) and applies the line-boundary treatment at both ends. That mode
// matters for operators that break periodicity, e.g. multiplication by the
// angle coordinate itself.

#include <complex>
#include <vector>

#include "qfr/grid.hpp"

namespace qfr {

using cplx = std::complex<double>;

enum class StencilMode { grid_default, interval };

std::vector<double> quadrature_weights(const Grid& g);
double integrate(const Grid& g, const std::vector<double>& f);
cplx integrate(const Grid& g, const std::vector<cplx>& f);

std::vector<double> differentiate(const Grid& g, const std::vector<double>& f, int order,
                                  StencilMode mode = StencilMode::grid_default);
std::vector<cplx> differentiate(const Grid& g, const std::vector<cplx>& f, int order,
                                StencilMode mode = StencilMode::grid_default);

// Weights used for kernel marginals and kernel application: trapezoid on line
// grids, rectangle on periodic grids. (Distinct from quadrature_weights: the
// kernel's reflecting-wall images make the integrand's even extension smooth,
// which is exactly the regime where the trapezoid rule is the right choice.)
std::vector<double> kernel_weights(const Grid& g);

// Dense discretized integral kernel mapping samples on `source` to samples on
// `target`: (K f)(x_i) = sum_j K(i,j) f(x_j) w_j with w = kernel_weights.
// A kernel of width 0 is the identity (delta rows 1/w_i on the diagonal); it
// is stored implicitly with an empty matrix so that identity channels cost no
// memory, and apply_kernel / at() honor that representation.
struct TransferKernel {
  Grid source;
  Grid target;
  double width = 0.0;
  std::vector<double> k;  // row-major, target.n x source.n; empty == identity

  double at(int i, int j) const {
    if (k.empty()) {
      if (i != j) return 0.0;
      const double h = source.spacing();
      const bool edge = source.kind == GridKind::line && (i == 0 || i == source.n - 1);
      return edge ? 2.0 / h : 1.0 / h;
    }
    return k[static_cast<size_t>(i) * source.n + j];
  }
};

// Gaussian smoothing kernel of the given width on one grid. Probability lost
// past a line grid's ends is reflected back (image terms), and on a periodic
// grid it wraps around, so both weighted marginals are 1 by construction: the
// kernel conserves total probability and maps the flat density to itself. A
// final row/column rescaling pass polishes the marginals to <= 1e-10.
// Requires width <= (upper - lower) / 8 so single-bounce images suffice.
TransferKernel gaussian_kernel(const Grid& g, double width);

std::vector<double> apply_kernel(const TransferKernel& k, const std::vector<double>& f);

}  // namespace qfr
