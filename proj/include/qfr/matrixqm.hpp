#pragma once
// Finite-dimensional (matrix) counterpart of the sampled-wave-function
// machinery: operators are dense complex matrices, states are density
// matrices, and the same two spread inequalities are evaluated with traces.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qfr/params.hpp"

namespace qfr {

using Matrix = Eigen::MatrixXcd;

// Truncated lowering operator a on a d-dimensional Fock space:
// a|n> = sqrt(n)|n-1>. Note [a, a^dag] = I everywhere except the last
// diagonal entry, which is 1 - d: truncation breaks the canonical pair.
Matrix lowering_op(int dim);
Matrix fock_position(int dim, const PhysicalParams& p);
Matrix fock_momentum(int dim, const PhysicalParams& p);
Matrix fock_hamiltonian(int dim, const PhysicalParams& p);

// Collective magnetization component (alpha: 0=x, 1=y, 2=z) of n_spins
// spin-1/2 sites with gyromagnetic ratio gamma_g:
// M_alpha = sum_i gamma_g (hbar/2) sigma_alpha^(i).
Matrix magnetization(int n_spins, int alpha, double gamma_g, const PhysicalParams& p);

Matrix commutator(const Matrix& a, const Matrix& b);

// exp(-H/kT)/Z by spectral decomposition. Requires Hermitian H.
Matrix thermal_state(const Matrix& hamiltonian, double temperature, const PhysicalParams& p);

// Random density matrix (Ginibre construction) and random Hermitian matrix,
// both fully determined by the RNG state.
Matrix random_density(int dim, std::mt19937_64& rng);
Matrix random_hermitian(int dim, std::mt19937_64& rng);

struct MatrixEstimate {
  std::complex<double> mean;   // tr(rho A)
  double std_dev = 0.0;        // sqrt(tr(rho dA^2)) for Hermitian A
};

MatrixEstimate matrix_estimate(const Matrix& rho, const Matrix& a);

struct MatrixRelation {
  double lhs = 0.0;
  double correlation_rhs = 0.0;  // |tr(rho dA dB)|
  double commutator_rhs = 0.0;   // |tr(rho [A,B])| / 2
  double correlation_margin = 0.0;
  double commutator_margin = 0.0;
  bool commuting_with_positive_correlation = false;  // [A,B]=0 yet rhs > 0
};

MatrixRelation matrix_relation(const Matrix& rho, const Matrix& a, const Matrix& b,
                               double commute_tol = 1e-12, double positive_tol = 1e-10);

}  // namespace qfr
