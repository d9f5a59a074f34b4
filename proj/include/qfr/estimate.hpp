#pragma once
// Moment estimators for observables on sampled wave functions.

#include <complex>
#include <optional>
#include <vector>

#include "qfr/operators.hpp"
#include "qfr/wavefunction.hpp"

namespace qfr {

struct EstimatorReport {
  cplx mean{0.0, 0.0};      // (psi, A psi); imaginary part is a numerics check
  double std_dev = 0.0;     // sqrt((dA psi, dA psi)), dA = A - mean
  std::vector<cplx> deviation;  // dA psi samples, for reuse by callers
};

// Throws contract_violation unless |norm^2 - 1| < norm_tol.
EstimatorReport estimate(const WaveFunction& wf, const OperatorSpec& a,
                         double norm_tol = 1e-8);

struct PairReport {
  EstimatorReport a;
  EstimatorReport b;
  cplx correlation{0.0, 0.0};  // (dA psi, dB psi)
};

PairReport estimate_pair(const WaveFunction& wf, const OperatorSpec& a, const OperatorSpec& b,
                         double norm_tol = 1e-8);

// Central moment (psi, (dA)^r (dB)^s psi) with dX = X - (psi, X psi).
cplx central_moment(const WaveFunction& wf, const OperatorSpec& a, const OperatorSpec& b,
                    int r, int s);

}  // namespace qfr
