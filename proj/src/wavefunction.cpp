#include "qfr/wavefunction.hpp"

#include <cmath>

#include "qfr/errors.hpp"
#include "qfr/numerics.hpp"

namespace qfr {

size_t WaveFunction::size() const {
  size_t s = 1;
  for (const Grid& g : axes) s *= static_cast<size_t>(g.n);
  return s;
}

void WaveFunction::validate() const {
  if (axes.empty() || axes.size() > 2)
    throw contract_violation("wave function: need 1 or 2 axes");
  if (samples.size() != size())
    throw contract_violation("wave function: sample count does not match grid");
}

std::vector<double> sample_weights(const std::vector<Grid>& axes) {
  std::vector<double> w = quadrature_weights(axes[0]);
  if (axes.size() == 1) return w;
  const std::vector<double> wy = quadrature_weights(axes[1]);
  std::vector<double> out(w.size() * wy.size());
  size_t idx = 0;
  for (double wx : w)
    for (double wyj : wy) out[idx++] = wx * wyj;
  return out;
}

cplx inner_product(const std::vector<Grid>& axes, const std::vector<cplx>& u,
                   const std::vector<cplx>& v) {
  if (u.size() != v.size()) throw contract_violation("inner product: size mismatch");
  const std::vector<double> w = sample_weights(axes);
  if (w.size() != u.size()) throw contract_violation("inner product: grid mismatch");
  cplx acc{0.0, 0.0};
  for (size_t i = 0; i < u.size(); ++i) acc += w[i] * std::conj(u[i]) * v[i];
  return acc;
}

double norm_squared(const WaveFunction& wf) {
  wf.validate();
  return inner_product(wf.axes, wf.samples, wf.samples).real();
}

WaveFunction normalized(WaveFunction wf) {
  const double n2 = norm_squared(wf);
  if (!(n2 > 0.0)) throw contract_violation("normalize: zero-norm state");
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& c : wf.samples) c *= inv;
  return wf;
}

DensityCurrent density_current(const WaveFunction& wf) {
  wf.validate();
  DensityCurrent out;
  out.axes = wf.axes;
  out.density.resize(wf.samples.size());
  for (size_t i = 0; i < wf.samples.size(); ++i) out.density[i] = std::norm(wf.samples[i]);
  const double scale = wf.params.hbar / wf.params.mass;
  const int dim = wf.dim();
  out.current.resize(dim);
  for (int a = 0; a < dim; ++a) {
    std::vector<cplx> d;
    if (dim == 1) {
      d = differentiate(wf.axes[0], wf.samples, 1);
    } else {
      // differentiate along one axis of the row-major 2D layout
      const int nx = wf.axes[0].n, ny = wf.axes[1].n;
      d.resize(wf.samples.size());
      if (a == 0) {
        std::vector<cplx> col(nx);
        for (int j = 0; j < ny; ++j) {
          for (int i = 0; i < nx; ++i) col[i] = wf.samples[static_cast<size_t>(i) * ny + j];
          std::vector<cplx> dc = differentiate(wf.axes[0], col, 1);
          for (int i = 0; i < nx; ++i) d[static_cast<size_t>(i) * ny + j] = dc[i];
        }
      } else {
        std::vector<cplx> row(ny);
        for (int i = 0; i < nx; ++i) {
          for (int j = 0; j < ny; ++j) row[j] = wf.samples[static_cast<size_t>(i) * ny + j];
          std::vector<cplx> dr = differentiate(wf.axes[1], row, 1);
          for (int j = 0; j < ny; ++j) d[static_cast<size_t>(i) * ny + j] = dr[j];
        }
      }
    }
    std::vector<double>& j = out.current[a];
    j.resize(wf.samples.size());
    for (size_t i = 0; i < wf.samples.size(); ++i)
      j[i] = scale * std::imag(std::conj(wf.samples[i]) * d[i]);
  }
  return out;
}

}  // namespace qfr
