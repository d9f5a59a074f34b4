// Finite-dimensional counterpart: Fock-space truncations, spin sums, thermal
// and random density matrices, and the trace-based spread inequalities.
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qfr/errors.hpp"
#include "qfr/matrixqm.hpp"

using namespace qfr;

namespace {
const PhysicalParams unit_params{};
using cd = std::complex<double>;
}  // namespace

TEST_SUITE("matrixqm") {

TEST_CASE("lowering operator and its truncation artifact") {
  const Matrix a = lowering_op(4);
  CHECK(std::abs(a(0, 1) - 1.0) < 1e-15);              // a|1> = |0>
  CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);   // a|3> = sqrt(3)|2>
  const Matrix c = commutator(a, a.adjoint());
  for (int i = 0; i + 1 < 4; ++i) CHECK(std::abs(c(i, i) - 1.0) < 1e-14);
  CHECK(std::abs(c(3, 3) - (1.0 - 4.0)) < 1e-14);  // last level breaks the pair
}

TEST_CASE("truncated x,p keep the canonical commutator away from the edge") {
  const int dim = 30;
  const Matrix x = fock_position(dim, unit_params);
  const Matrix p = fock_momentum(dim, unit_params);
  const Matrix c = commutator(x, p);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const cd expect = i == j ? cd{0.0, 1.0} : cd{0.0, 0.0};
      CHECK(std::abs(c(i, j) - expect) < 1e-12);
    }
}

TEST_CASE("fock hamiltonian carries the ladder spectrum") {
  const Matrix h = fock_hamiltonian(5, unit_params);
  for (int n = 0; n < 5; ++n) CHECK(std::abs(h(n, n) - (n + 0.5)) < 1e-13);
}

TEST_CASE("magnetization components close the rotation algebra exactly") {
  const double gyro = 2.5;
  for (int n_spins = 2; n_spins <= 4; ++n_spins) {
    const Matrix mx = magnetization(n_spins, 0, gyro, unit_params);
    const Matrix my = magnetization(n_spins, 1, gyro, unit_params);
    const Matrix mz = magnetization(n_spins, 2, gyro, unit_params);
    const Matrix dev = commutator(mx, my) - cd{0.0, gyro * unit_params.hbar} * mz;
    CHECK(dev.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("thermal state of a two-level splitting") {
  Matrix h(2, 2);
  h << 0.5, 0.0, 0.0, -0.5;  // (hbar w / 2) sigma_z with hbar = w = 1
  const Matrix rho = thermal_state(h, 1.0, unit_params);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  Matrix sz(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  const MatrixEstimate e = matrix_estimate(rho, sz);
  CHECK(std::abs(e.mean.real() + std::tanh(0.5)) < 1e-13);  // <s_z> = -tanh(hw/2kT)
  // spread of a +-1 observable: sqrt(1 - <s_z>^2)
  CHECK(std::abs(e.std_dev - std::sqrt(1.0 - std::pow(std::tanh(0.5), 2))) < 1e-13);
}

TEST_CASE("thermal state approaches the maximally mixed limit") {
  Matrix h(3, 3);
  h << 1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0;
  const Matrix rho = thermal_state(h, 1e6, unit_params);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(rho(i, i) - 1.0 / 3.0) < 1e-5);
  Matrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS((void)thermal_state(bad, 1.0, unit_params), contract_violation);
}

TEST_CASE("random density matrices are valid states and reproducible") {
  std::mt19937_64 rng1(42), rng2(42);
  const Matrix r1 = random_density(5, rng1);
  const Matrix r2 = random_density(5, rng2);
  CHECK((r1 - r2).cwiseAbs().maxCoeff() == 0.0);  // bitwise deterministic
  CHECK(std::abs(r1.trace() - 1.0) < 1e-14);
  CHECK((r1 - r1.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(r1);
  CHECK(es.eigenvalues().minCoeff() > -1e-14);
  // drawing again from the same stream moves on
  const Matrix r3 = random_density(5, rng1);
  CHECK((r1 - r3).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("commuting diagonal pair with correlated state: the counterexample") {
  Matrix a = Matrix::Zero(4, 4), b = Matrix::Zero(4, 4), rho = Matrix::Zero(4, 4);
  a.diagonal() << 1.0, 2.0, 3.0, 4.0;
  b.diagonal() << 2.0, 1.0, 1.0, 3.0;
  rho.diagonal() << 0.4, 0.1, 0.1, 0.4;
  const MatrixRelation r = matrix_relation(rho, a, b);
  CHECK(std::abs(r.lhs - 1.0178408519999578) < 1e-12);
  CHECK(std::abs(r.correlation_rhs - 0.6) < 1e-12);   // covariance survives
  CHECK(r.commutator_rhs < 1e-15);                    // commutator says nothing
  CHECK(r.commuting_with_positive_correlation);
  CHECK(r.correlation_margin >= -1e-12);
  CHECK(r.commutator_margin > 1.0);  // trivially satisfied, vacuously weak
}

TEST_CASE("both margins hold across a random ensemble") {
  std::mt19937_64 rng(20250819);
  const int dims[] = {2, 3, 4, 6, 8};
  for (int trial = 0; trial < 60; ++trial) {
    const int d = dims[trial % 5];
    const Matrix rho = random_density(d, rng);
    const Matrix a = random_hermitian(d, rng);
    const Matrix b = random_hermitian(d, rng);
    const MatrixRelation r = matrix_relation(rho, a, b);
    CHECK(r.correlation_margin >= -1e-10);
    CHECK(r.commutator_margin >= -1e-10);
    CHECK(r.lhs >= r.correlation_rhs - 1e-10);
    CHECK(r.correlation_rhs >= r.commutator_rhs - 1e-10);  // nested bounds
  }
}

TEST_CASE("matrix estimate of the fock ground state") {
  const int dim = 40;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  const MatrixEstimate ex = matrix_estimate(rho, fock_position(dim, unit_params));
  CHECK(std::abs(ex.mean) < 1e-15);
  CHECK(std::abs(ex.std_dev - std::sqrt(0.5)) < 1e-13);
  PhysicalParams p;
  p.hbar = 2.0;
  p.mass = 0.5;
  p.omega = 4.0;
  const MatrixEstimate ex2 = matrix_estimate(rho, fock_position(dim, p));
  CHECK(std::abs(ex2.std_dev - std::sqrt(p.hbar / (2.0 * p.mass * p.omega))) < 1e-13);
}

TEST_CASE("relation contracts") {
  std::mt19937_64 rng(7);
  const Matrix rho = random_density(3, rng);
  const Matrix a = random_hermitian(4, rng);  // wrong dimension
  CHECK_THROWS_AS((void)matrix_relation(rho, a, a), contract_violation);
}

}  // TEST_SUITE
