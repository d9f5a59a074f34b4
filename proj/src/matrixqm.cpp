#include "qfr/matrixqm.hpp"

#include <cmath>
#include <numbers>

#include "qfr/errors.hpp"

namespace qfr {

namespace {

// Deterministic standard normal: Box-Muller over the raw 64-bit stream, so
// results are identical across standard-library implementations.
double normal_draw(std::mt19937_64& rng) {
  auto unit = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;  // (0,1)
  };
  const double u1 = unit(), u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

const Matrix kPauli[3] = {
    (Matrix(2, 2) << 0, 1, 1, 0).finished(),
    (Matrix(2, 2) << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0).finished(),
    (Matrix(2, 2) << 1, 0, 0, -1).finished(),
};

}  // namespace

Matrix lowering_op(int dim) {
  if (dim < 2) throw contract_violation("lowering operator: dimension must be >= 2");
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix fock_position(int dim, const PhysicalParams& p) {
  const Matrix a = lowering_op(dim);
  return std::sqrt(p.hbar / (2.0 * p.mass * p.omega)) * (a + a.adjoint()).eval();
}

Matrix fock_momentum(int dim, const PhysicalParams& p) {
  const Matrix a = lowering_op(dim);
  return std::complex<double>(0.0, 1.0) * std::sqrt(p.hbar * p.mass * p.omega / 2.0) *
         (a.adjoint() - a).eval();
}

Matrix fock_hamiltonian(int dim, const PhysicalParams& p) {
  const Matrix a = lowering_op(dim);
  Matrix h = p.hbar * p.omega * (a.adjoint() * a + 0.5 * Matrix::Identity(dim, dim));
  return h;
}

Matrix magnetization(int n_spins, int alpha, double gamma_g, const PhysicalParams& p) {
  if (n_spins < 1 || n_spins > 10)
    throw contract_violation("magnetization: spin count out of range");
  if (alpha < 0 || alpha > 2) throw contract_violation("magnetization: component must be 0..2");
  const int dim = 1 << n_spins;
  Matrix m = Matrix::Zero(dim, dim);
  const double coef = gamma_g * p.hbar / 2.0;
  for (int site = 0; site < n_spins; ++site) {
    Matrix term = Matrix::Identity(1, 1);
    for (int s = 0; s < n_spins; ++s) {
      const Matrix f = s == site ? kPauli[alpha] : Matrix(Matrix::Identity(2, 2));
      Matrix next(term.rows() * 2, term.cols() * 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          next.block(i * term.rows(), j * term.cols(), term.rows(), term.cols()) =
              f(i, j) * term;
      term = std::move(next);
    }
    m += coef * term;
  }
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw contract_violation("commutator: dimension mismatch");
  return a * b - b * a;
}

Matrix thermal_state(const Matrix& hamiltonian, double temperature, const PhysicalParams& p) {
  if (!(temperature > 0.0)) throw contract_violation("thermal state: T must be > 0");
  if (!hamiltonian.isApprox(hamiltonian.adjoint(), 1e-12))
    throw contract_violation("thermal state: Hamiltonian must be Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double e0 = ev.minCoeff();
  Eigen::VectorXd w(ev.size());
  for (int i = 0; i < ev.size(); ++i)
    w(i) = std::exp(-(ev(i) - e0) / (p.k_boltzmann * temperature));
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_density(int dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(normal_draw(rng), normal_draw(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = std::complex<double>(normal_draw(rng), normal_draw(rng));
  return 0.5 * (g + g.adjoint()).eval();
}

MatrixEstimate matrix_estimate(const Matrix& rho, const Matrix& a) {
  if (rho.rows() != a.rows() || rho.cols() != a.cols())
    throw contract_violation("matrix estimate: dimension mismatch");
  MatrixEstimate e;
  e.mean = (rho * a).trace();
  const Matrix da = a - e.mean * Matrix::Identity(a.rows(), a.cols());
  e.std_dev = std::sqrt(std::max(0.0, (rho * da * da).trace().real()));
  return e;
}

MatrixRelation matrix_relation(const Matrix& rho, const Matrix& a, const Matrix& b,
                               double commute_tol, double positive_tol) {
  if (rho.rows() != a.rows() || a.rows() != b.rows())
    throw contract_violation("matrix relation: dimension mismatch");
  const MatrixEstimate ea = matrix_estimate(rho, a);
  const MatrixEstimate eb = matrix_estimate(rho, b);
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix da = a - ea.mean * id;
  const Matrix db = b - eb.mean * id;
  MatrixRelation r;
  r.lhs = ea.std_dev * eb.std_dev;
  r.correlation_rhs = std::abs((rho * da * db).trace());
  r.commutator_rhs = 0.5 * std::abs((rho * commutator(a, b)).trace());
  r.correlation_margin = r.lhs - r.correlation_rhs;
  r.commutator_margin = r.lhs - r.commutator_rhs;
  const double comm_norm = commutator(a, b).cwiseAbs().maxCoeff();
  r.commuting_with_positive_correlation =
      comm_norm < commute_tol && r.correlation_rhs > positive_tol;
  return r;
}

}  // namespace qfr
