#include "qfr/grid.hpp"

namespace qfr {

namespace {
void check(double lower, double upper, int n) {
  if (!(upper > lower)) throw contract_violation("grid: upper must exceed lower");
  if (n < 8) throw contract_violation("grid: need at least 8 nodes");
}
}  // namespace

Grid Grid::line(double lower, double upper, int n) {
  check(lower, upper, n);
  return Grid{GridKind::line, lower, upper, n};
}

Grid Grid::periodic(double lower, double upper, int n) {
  check(lower, upper, n);
  return Grid{GridKind::periodic, lower, upper, n};
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n);
  const double h = spacing();
  for (int i = 0; i < n; ++i) x[i] = lower + i * h;
  return x;
}

}  // namespace qfr
