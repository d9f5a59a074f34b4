#include "qfr/relations.hpp"

#include <cmath>

#include "qfr/errors.hpp"

namespace qfr {

std::pair<cplx, cplx> hermiticity_defects(const WaveFunction& wf, const OperatorSpec& a,
                                          const OperatorSpec& b) {
  wf.validate();
  const std::vector<cplx> av = a.apply(wf);
  const std::vector<cplx> bv = b.apply(wf);
  const std::vector<cplx> abv = (a * b).apply(wf);
  const std::vector<cplx> bav = (b * a).apply(wf);
  const cplx d1 = inner_product(wf.axes, av, bv) - inner_product(wf.axes, wf.samples, abv);
  const cplx d2 = inner_product(wf.axes, bv, av) - inner_product(wf.axes, wf.samples, bav);
  return {d1, d2};
}

RelationVerdict correlation_bound(const WaveFunction& wf, const OperatorSpec& a,
                                  const OperatorSpec& b) {
  const PairReport pr = estimate_pair(wf, a, b);
  RelationVerdict v;
  v.correlation = pr.correlation;
  v.lhs = pr.a.std_dev * pr.b.std_dev;
  v.rhs = std::abs(pr.correlation);
  v.margin = v.lhs - v.rhs;
  v.applicable = true;  // Cauchy-Schwarz needs no side condition
  return v;
}

RelationVerdict commutator_bound(const WaveFunction& wf, const OperatorSpec& a,
                                 const OperatorSpec& b, double defect_tol) {
  const PairReport pr = estimate_pair(wf, a, b);
  RelationVerdict v;
  v.correlation = pr.correlation;
  v.lhs = pr.a.std_dev * pr.b.std_dev;
  const std::vector<cplx> abv = (a * b).apply(wf);
  const std::vector<cplx> bav = (b * a).apply(wf);
  std::vector<cplx> comm(abv.size());
  for (size_t i = 0; i < comm.size(); ++i) comm[i] = abv[i] - bav[i];
  v.commutator_mean = inner_product(wf.axes, wf.samples, comm);
  v.rhs = 0.5 * std::abs(v.commutator_mean);
  v.margin = v.lhs - v.rhs;
  auto [d1, d2] = hermiticity_defects(wf, a, b);
  v.defect1 = d1;
  v.defect2 = d2;
  v.applicable = std::abs(d1) < defect_tol && std::abs(d2) < defect_tol;
  return v;
}

RelationVerdict two_state_correlation_bound(const WaveFunction& wf1, const WaveFunction& wf2,
                                            const OperatorSpec& a, const OperatorSpec& b) {
  if (wf1.axes != wf2.axes)
    throw contract_violation("two-state bound: states must share one grid");
  const EstimatorReport ra = estimate(wf1, a);
  const EstimatorReport rb = estimate(wf2, b);
  RelationVerdict v;
  v.lhs = ra.std_dev * rb.std_dev;
  v.correlation = inner_product(wf1.axes, ra.deviation, rb.deviation);
  v.rhs = std::abs(v.correlation);
  v.margin = v.lhs - v.rhs;
  v.applicable = true;
  return v;
}

GramResult deviation_gram(const WaveFunction& wf, const std::vector<OperatorSpec>& ops) {
  if (ops.size() < 2) throw contract_violation("gram: need at least two operators");
  std::vector<std::vector<cplx>> dev;
  dev.reserve(ops.size());
  for (const OperatorSpec& op : ops) dev.push_back(estimate(wf, op).deviation);
  const int m = static_cast<int>(ops.size());
  GramResult g;
  g.matrix = Eigen::MatrixXcd(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.matrix(i, j) = inner_product(wf.axes, dev[i], dev[j]);
  g.determinant = g.matrix.determinant().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      cplx{0.5, 0.0} * (g.matrix + g.matrix.adjoint()));
  g.eigenvalues = es.eigenvalues();
  return g;
}

}  // namespace qfr
