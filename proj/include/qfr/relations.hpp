#pragma once
// The two product-of-spreads inequalities and the diagnostics that separate
// them:
//
//   correlation bound (always valid):   dA.dB >= |(dA psi, dB psi)|
//   commutator bound (conditional):     dA.dB >= |(psi, [A,B] psi)| / 2
//
// The commutator bound additionally requires both operators to act
// symmetrically on the state, which the two hermiticity defects measure:
//   defect1 = (A psi, B psi) - (psi, A B psi)
//   defect2 = (B psi, A psi) - (psi, B A psi)
// The commutator bound is only certified ("applicable") when both defects
// vanish within tolerance.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qfr/estimate.hpp"
#include "qfr/operators.hpp"
#include "qfr/wavefunction.hpp"

namespace qfr {

struct RelationVerdict {
  double lhs = 0.0;     // dA * dB
  double rhs = 0.0;     // bound being tested
  double margin = 0.0;  // lhs - rhs
  bool applicable = true;
  cplx defect1{0.0, 0.0};
  cplx defect2{0.0, 0.0};
  cplx correlation{0.0, 0.0};  // (dA psi, dB psi)
  cplx commutator_mean{0.0, 0.0};
};

std::pair<cplx, cplx> hermiticity_defects(const WaveFunction& wf, const OperatorSpec& a,
                                          const OperatorSpec& b);

RelationVerdict correlation_bound(const WaveFunction& wf, const OperatorSpec& a,
                                  const OperatorSpec& b);

RelationVerdict commutator_bound(const WaveFunction& wf, const OperatorSpec& a,
                                 const OperatorSpec& b, double defect_tol = 1e-8);

// Two-state variant of the correlation bound: spreads evaluated on each state
// separately, right-hand side |(dA psi1, dB psi2)| with each deviation taken
// about its own state's mean. Both states must share one grid.
RelationVerdict two_state_correlation_bound(const WaveFunction& wf1, const WaveFunction& wf2,
                                            const OperatorSpec& a, const OperatorSpec& b);

// Gram matrix G_jk = (dA_j psi, dA_k psi) of deviation vectors; positive
// semidefinite by construction, so det >= 0 up to roundoff.
struct GramResult {
  Eigen::MatrixXcd matrix;
  double determinant = 0.0;
  Eigen::VectorXd eigenvalues;
};

GramResult deviation_gram(const WaveFunction& wf, const std::vector<OperatorSpec>& ops);

}  // namespace qfr
