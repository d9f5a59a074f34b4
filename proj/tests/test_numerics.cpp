// Quadrature, differentiation, and transfer-kernel behavior on both grid
// kinds. Expected values are analytic.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qfr/errors.hpp"
#include "qfr/numerics.hpp"

using namespace qfr;

namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> sampled(const Grid& g, double (*f)(double)) {
  std::vector<double> out(g.n);
  for (int i = 0; i < g.n; ++i) out[i] = f(g.node(i));
  return out;
}
}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("simpson integrates sin over a half period to near machine accuracy") {
  const Grid g = Grid::line(0.0, pi, 2001);  // odd count -> Simpson
  const double v = integrate(g, sampled(g, [](double x) { return std::sin(x); }));
  CHECK(std::abs(v - 2.0) < 1e-12);
}

TEST_CASE("even node counts fall back to the trapezoid rule") {
  const Grid g = Grid::line(0.0, pi, 2000);
  const double v = integrate(g, sampled(g, [](double x) { return std::sin(x); }));
  CHECK(std::abs(v - 2.0) < 1e-5);   // second-order rule
  CHECK(std::abs(v - 2.0) > 1e-10);  // ... and visibly not Simpson
}

TEST_CASE("gaussian integral over a wide window") {
  const Grid g = Grid::line(-10.0, 10.0, 4097);
  const double v = integrate(g, sampled(g, [](double x) { return std::exp(-x * x); }));
  CHECK(std::abs(v - std::sqrt(pi)) < 1e-13);
}

TEST_CASE("rectangle rule is spectrally accurate for smooth periodic data") {
  const Grid g = Grid::periodic(-pi, pi, 128);
  const double v =
      integrate(g, sampled(g, [](double x) { return (1.0 + std::cos(x)) / (2.0 * pi); }));
  CHECK(std::abs(v - 1.0) < 1e-14);
}

TEST_CASE("quadrature weights sum to the span") {
  for (const Grid& g : {Grid::line(-3.0, 5.0, 257), Grid::line(-3.0, 5.0, 256),
                        Grid::periodic(0.0, 2.0 * pi, 100)}) {
    const std::vector<double> w = quadrature_weights(g);
    double total = 0.0;
    for (double v : w) total += v;
    CHECK(std::abs(total - (g.upper - g.lower)) < 1e-12);
  }
}

TEST_CASE("first and second derivatives of sin on a line grid") {
  const Grid g = Grid::line(0.0, 2.0 * pi, 1001);
  const std::vector<double> f = sampled(g, [](double x) { return std::sin(x); });
  const std::vector<double> d1 = differentiate(g, f, 1);
  const std::vector<double> d2 = differentiate(g, f, 2);
  double in1 = 0.0, in2 = 0.0, all1 = 0.0, all2 = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double e1 = std::abs(d1[i] - std::cos(g.node(i)));
    const double e2 = std::abs(d2[i] + std::sin(g.node(i)));
    all1 = std::max(all1, e1);
    all2 = std::max(all2, e2);
    if (i >= 2 && i < g.n - 2) {
      in1 = std::max(in1, e1);
      in2 = std::max(in2, e2);
    }
  }
  // interior stencils are fourth order; the one-sided boundary stencils are
  // second order and set the global max
  CHECK(in1 < 1e-9);
  CHECK(in2 < 1e-6);
  CHECK(all1 < 5e-5);
  CHECK(all2 < 1e-3);
}

TEST_CASE("periodic derivatives wrap around the seam") {
  const Grid g = Grid::periodic(-pi, pi, 512);
  const std::vector<double> f = sampled(g, [](double x) { return std::sin(x); });
  const std::vector<double> d1 = differentiate(g, f, 1);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i)
    worst = std::max(worst, std::abs(d1[i] - std::cos(g.node(i))));
  CHECK(worst < 1e-8);  // 4th-order stencil everywhere, including node 0
}

TEST_CASE("interval mode ignores the seam identification") {
  // The sawtooth x on a ring is smooth as an interval function but jumps at
  // the seam; wrapping stencils would see the jump, interval stencils do not.
  const Grid g = Grid::periodic(-pi, pi, 512);
  const std::vector<double> f = sampled(g, [](double x) { return x; });
  const std::vector<double> wrap = differentiate(g, f, 1);
  const std::vector<double> open = differentiate(g, f, 1, StencilMode::interval);
  double worst_open = 0.0;
  for (int i = 0; i < g.n; ++i) worst_open = std::max(worst_open, std::abs(open[i] - 1.0));
  CHECK(worst_open < 1e-9);
  CHECK(std::abs(wrap[0] - 1.0) > 10.0);  // seam jump dominates the wrapped stencil
}

TEST_CASE("complex differentiation acts componentwise") {
  const Grid g = Grid::line(-1.0, 1.0, 401);
  std::vector<cplx> f(g.n);
  std::vector<double> re(g.n), im(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    re[i] = std::exp(x);
    im[i] = std::sin(x);
    f[i] = cplx{re[i], im[i]};
  }
  const std::vector<cplx> d = differentiate(g, f, 1);
  const std::vector<double> dre = differentiate(g, re, 1);
  const std::vector<double> dim = differentiate(g, im, 1);
  for (int i : {0, 57, 200, 400}) {
    CHECK(std::abs(d[i].real() - dre[i]) < 1e-13);
    CHECK(std::abs(d[i].imag() - dim[i]) < 1e-13);
  }
}

TEST_CASE("kernel marginals are exactly balanced on a line grid") {
  const Grid g = Grid::line(-8.0, 8.0, 401);
  const TransferKernel k = gaussian_kernel(g, 1.0);
  const std::vector<double> w = kernel_weights(g);
  double worst_row = 0.0, worst_col = 0.0;
  for (int i = 0; i < g.n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < g.n; ++j) {
      row += k.at(i, j) * w[j];
      col += k.at(j, i) * w[j];
    }
    worst_row = std::max(worst_row, std::abs(row - 1.0));
    worst_col = std::max(worst_col, std::abs(col - 1.0));
  }
  CHECK(worst_row < 1e-10);
  CHECK(worst_col < 1e-10);
}

TEST_CASE("kernel marginals are balanced on a periodic grid") {
  const Grid g = Grid::periodic(-pi, pi, 256);
  const TransferKernel k = gaussian_kernel(g, 0.4);
  const std::vector<double> w = kernel_weights(g);
  for (int i : {0, 1, 128, 255}) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < g.n; ++j) {
      row += k.at(i, j) * w[j];
      col += k.at(j, i) * w[j];
    }
    CHECK(std::abs(row - 1.0) < 1e-10);
    CHECK(std::abs(col - 1.0) < 1e-10);
  }
}

TEST_CASE("smearing a gaussian density adds the kernel width in quadrature") {
  const Grid g = Grid::line(-12.0, 12.0, 1201);
  const double sigma = 1.0, width = 0.7;
  std::vector<double> rho(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.node(i);
    rho[i] = std::exp(-x * x / (2.0 * sigma * sigma)) / std::sqrt(2.0 * pi * sigma * sigma);
  }
  const std::vector<double> out = apply_kernel(gaussian_kernel(g, width), rho);
  const std::vector<double> w = quadrature_weights(g);
  double mass = 0.0, var = 0.0;
  for (int i = 0; i < g.n; ++i) {
    mass += w[i] * out[i];
    var += w[i] * g.node(i) * g.node(i) * out[i];
  }
  CHECK(std::abs(mass - 1.0) < 1e-12);
  CHECK(std::abs(var - (sigma * sigma + width * width)) < 1e-10);
}

TEST_CASE("kernels preserve the flat density and total integral") {
  const Grid g = Grid::line(0.0, 10.0, 501);
  const TransferKernel k = gaussian_kernel(g, 0.9);
  const std::vector<double> flat(g.n, 0.1);
  const std::vector<double> out = apply_kernel(k, flat);
  double worst = 0.0;
  for (double v : out) worst = std::max(worst, std::abs(v - 0.1));
  CHECK(worst < 1e-10);

  // a generic (signed) profile keeps its weighted sum — the kernel's balanced
  // column marginals conserve exactly the kernel_weights functional
  std::vector<double> f(g.n);
  for (int i = 0; i < g.n; ++i) f[i] = std::sin(g.node(i)) * std::exp(-0.2 * g.node(i));
  const std::vector<double> out2 = apply_kernel(k, f);
  const std::vector<double> kw = kernel_weights(g);
  double before = 0.0, after = 0.0;
  for (int i = 0; i < g.n; ++i) {
    before += kw[i] * f[i];
    after += kw[i] * out2[i];
  }
  CHECK(std::abs(after - before) < 1e-9);
}

TEST_CASE("width zero is an implicit identity") {
  const Grid g = Grid::line(-2.0, 2.0, 101);
  const TransferKernel k = gaussian_kernel(g, 0.0);
  CHECK(k.k.empty());
  std::vector<double> f(g.n);
  for (int i = 0; i < g.n; ++i) f[i] = std::cos(g.node(i));
  const std::vector<double> out = apply_kernel(k, f);
  for (int i = 0; i < g.n; ++i) CHECK(out[i] == f[i]);
  // the implicit diagonal reproduces identity under the kernel weights
  const std::vector<double> w = kernel_weights(g);
  CHECK(std::abs(k.at(0, 0) * w[0] - 1.0) < 1e-14);
  CHECK(std::abs(k.at(50, 50) * w[50] - 1.0) < 1e-14);
  CHECK(k.at(3, 4) == 0.0);
}

TEST_CASE("kernel contracts") {
  const Grid g = Grid::line(0.0, 8.0, 101);
  CHECK_THROWS_AS((void)gaussian_kernel(g, -0.1), contract_violation);
  CHECK_THROWS_AS((void)gaussian_kernel(g, 2.0), contract_violation);  // > span/8
  const TransferKernel k = gaussian_kernel(g, 0.5);
  CHECK_THROWS_AS((void)apply_kernel(k, std::vector<double>(55, 0.0)), contract_violation);
}

}  // TEST_SUITE
