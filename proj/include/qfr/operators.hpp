#pragma once
// Symbolic linear operators acting on sampled wave functions.
//
// An OperatorSpec is a small expression tree built from:
//   multiply    — pointwise multiplication by a real function of the coordinates
//   derivative  — complex multiple of d^order/dx_axis^order (order 1 or 2)
//   scalar      — complex multiple of the identity
//   sum         — node-wise sum
//   compose     — operator product (right factor applied first)
//
// Application tracks whether the intermediate data is still seam-compatible on
// periodic axes. Multiplying by a generic coordinate function on a periodic
// grid produces samples that no longer match across the seam, so subsequent
// derivatives there must fall back to one-sided interval stencils instead of
// wrapping around. This is exactly what makes products like (number x angle)
// on a ring differ from (angle x number), which is the effect the hermiticity
// diagnostics measure.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qfr/numerics.hpp"
#include "qfr/params.hpp"
#include "qfr/wavefunction.hpp"

namespace qfr {

class OperatorSpec {
 public:
  using CoordFn = std::function<double(const std::vector<double>&)>;

  static OperatorSpec multiply(CoordFn fn, std::string label = "f(x)");
  static OperatorSpec derivative(int axis, int order, cplx scale);
  static OperatorSpec scalar(cplx value);
  static OperatorSpec sum(std::vector<OperatorSpec> terms);
  static OperatorSpec compose(OperatorSpec after, OperatorSpec first);

  OperatorSpec scaled(cplx factor) const;
  friend OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b);
  friend OperatorSpec operator*(const OperatorSpec& a, const OperatorSpec& b);  // composition

  // Apply to samples living on `axes`. `seam_ok` tells whether the input still
  // matches across periodic seams (true for a raw wave function).
  struct Applied {
    std::vector<cplx> values;
    bool seam_ok = true;
  };
  Applied apply_tracked(const std::vector<Grid>& axes, const std::vector<cplx>& in,
                        bool seam_ok) const;
  std::vector<cplx> apply(const WaveFunction& wf) const;

  std::string describe() const;

  struct Node;  // expression-tree node, defined in the implementation file

  // Structural inspection used by the measurement pipeline, which accepts only
  // operators of the form  scalar + multiply + scale1 * d/dx + scale2 * d2/dx2
  // on a single axis. Throws contract_violation for anything else (e.g.
  // compositions of non-scalar factors), since those would require data the
  // pipeline does not have.
  struct PolynomialForm {
    cplx constant{0.0, 0.0};
    std::vector<std::pair<cplx, CoordFn>> potentials;  // sum of coeff * f(x)
    cplx first_order{0.0, 0.0};
    cplx second_order{0.0, 0.0};

    bool multiplicative() const {
      return first_order == cplx{0.0, 0.0} && second_order == cplx{0.0, 0.0};
    }
    double potential_at(double x) const {
      double v = 0.0;  // real part; supported potentials have real coefficients
      for (const auto& [c, fn] : potentials) v += (c * fn({x})).real();
      return v;
    }
  };
  PolynomialForm polynomial_form() const;

 private:
  std::shared_ptr<const Node> node_;
  explicit OperatorSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

// Standard observables. Factories bake physical constants in at build time.
OperatorSpec position_op(int axis = 0);
OperatorSpec momentum_op(const PhysicalParams& p, int axis = 0);
OperatorSpec kinetic_op(const PhysicalParams& p);  // -hbar^2/2m d2/dx2, axis 0
OperatorSpec oscillator_hamiltonian(const PhysicalParams& p);
// Ring observables: occupation number i d/dphi and the angle coordinate.
OperatorSpec number_op();
OperatorSpec angle_op();
// Clock-coordinate observables: i hbar d/dtau and the time coordinate.
OperatorSpec energy_op(const PhysicalParams& p);
OperatorSpec time_op();

}  // namespace qfr
