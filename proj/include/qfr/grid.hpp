#pragma once
// Uniform 1D sample grids. Two kinds:
//   line     — closed interval [lower, upper], nodes at both ends.
//   periodic — half-open interval [lower, upper), upper identified with lower.

#include <vector>

#include "qfr/errors.hpp"

namespace qfr {

enum class GridKind { line, periodic };

struct Grid {
  GridKind kind = GridKind::line;
  double lower = 0.0;
  double upper = 1.0;
  int n = 2;  // number of stored nodes

  static Grid line(double lower, double upper, int n);
  static Grid periodic(double lower, double upper, int n);

  double spacing() const {
    return kind == GridKind::line ? (upper - lower) / (n - 1) : (upper - lower) / n;
  }
  double node(int i) const { return lower + i * spacing(); }
  std::vector<double> nodes() const;

  bool operator==(const Grid& o) const {
    return kind == o.kind && lower == o.lower && upper == o.upper && n == o.n;
  }
};

}  // namespace qfr
