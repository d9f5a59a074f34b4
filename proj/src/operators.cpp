#include "qfr/operators.hpp"

#include <cmath>
#include <utility>

#include "qfr/errors.hpp"

namespace qfr {

struct OperatorSpec::Node {
  enum class Kind { multiply, derivative, scalar, sum, compose } kind;
  // multiply
  CoordFn fn;
  std::string label;
  // derivative / scalar
  int axis = 0;
  int order = 1;
  cplx scale{1.0, 0.0};
  // sum / compose (compose: children[0] applied after children[1])
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using Node = OperatorSpec::Node;
using NodePtr = std::shared_ptr<const Node>;

// Differentiate row-major samples along one axis of a 1D/2D layout.
std::vector<cplx> axis_differentiate(const std::vector<Grid>& axes, const std::vector<cplx>& f,
                                     int axis, int order, StencilMode mode) {
  if (axis < 0 || axis >= static_cast<int>(axes.size()))
    throw contract_violation("derivative: axis out of range");
  if (axes.size() == 1) return differentiate(axes[0], f, order, mode);
  const int nx = axes[0].n, ny = axes[1].n;
  std::vector<cplx> out(f.size());
  if (axis == 0) {
    std::vector<cplx> col(nx);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) col[i] = f[static_cast<size_t>(i) * ny + j];
      std::vector<cplx> d = differentiate(axes[0], col, order, mode);
      for (int i = 0; i < nx; ++i) out[static_cast<size_t>(i) * ny + j] = d[i];
    }
  } else {
    std::vector<cplx> row(ny);
    for (int i = 0; i < nx; ++i) {
      const size_t base = static_cast<size_t>(i) * ny;
      for (int j = 0; j < ny; ++j) row[j] = f[base + j];
      std::vector<cplx> d = differentiate(axes[1], row, order, mode);
      for (int j = 0; j < ny; ++j) out[base + j] = d[j];
    }
  }
  return out;
}

bool any_periodic(const std::vector<Grid>& axes) {
  for (const Grid& g : axes)
    if (g.kind == GridKind::periodic) return true;
  return false;
}

}  // namespace

OperatorSpec OperatorSpec::multiply(CoordFn fn, std::string label) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::multiply;
  n->fn = std::move(fn);
  n->label = std::move(label);
  return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::derivative(int axis, int order, cplx scale) {
  if (order != 1 && order != 2)
    throw contract_violation("operator: derivative order must be 1 or 2");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::derivative;
  n->axis = axis;
  n->order = order;
  n->scale = scale;
  return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::scalar(cplx value) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::scalar;
  n->scale = value;
  return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::sum(std::vector<OperatorSpec> terms) {
  if (terms.empty()) throw contract_violation("operator: empty sum");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::sum;
  for (OperatorSpec& t : terms) n->children.push_back(std::move(t.node_));
  return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::compose(OperatorSpec after, OperatorSpec first) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::compose;
  n->children = {std::move(after.node_), std::move(first.node_)};
  return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::scaled(cplx factor) const {
  return compose(scalar(factor), *this);
}

OperatorSpec operator+(const OperatorSpec& a, const OperatorSpec& b) {
  return OperatorSpec::sum({a, b});
}

OperatorSpec operator*(const OperatorSpec& a, const OperatorSpec& b) {
  return OperatorSpec::compose(a, b);
}

OperatorSpec::Applied OperatorSpec::apply_tracked(const std::vector<Grid>& axes,
                                                  const std::vector<cplx>& in,
                                                  bool seam_ok) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Node::Kind::scalar: {
      Applied out{in, seam_ok};
      for (cplx& v : out.values) v *= n.scale;
      return out;
    }
    case Node::Kind::multiply: {
      Applied out{std::vector<cplx>(in.size()), seam_ok && !any_periodic(axes)};
      if (axes.size() == 1) {
        const Grid& g = axes[0];
        for (int i = 0; i < g.n; ++i) out.values[i] = n.fn({g.node(i)}) * in[i];
      } else {
        const int ny = axes[1].n;
        size_t idx = 0;
        for (int i = 0; i < axes[0].n; ++i) {
          const double x = axes[0].node(i);
          for (int j = 0; j < ny; ++j, ++idx) out.values[idx] = n.fn({x, axes[1].node(j)}) * in[idx];
        }
      }
      return out;
    }
    case Node::Kind::derivative: {
      const StencilMode mode = seam_ok ? StencilMode::grid_default : StencilMode::interval;
      Applied out{axis_differentiate(axes, in, n.axis, n.order, mode), seam_ok};
      if (n.scale != cplx{1.0, 0.0})
        for (cplx& v : out.values) v *= n.scale;
      return out;
    }
    case Node::Kind::sum: {
      Applied acc{std::vector<cplx>(in.size(), cplx{0.0, 0.0}), true};
      for (const NodePtr& c : n.children) {
        Applied part = OperatorSpec(c).apply_tracked(axes, in, seam_ok);
        for (size_t i = 0; i < in.size(); ++i) acc.values[i] += part.values[i];
        acc.seam_ok = acc.seam_ok && part.seam_ok;
      }
      return acc;
    }
    case Node::Kind::compose: {
      Applied inner = OperatorSpec(n.children[1]).apply_tracked(axes, in, seam_ok);
      return OperatorSpec(n.children[0]).apply_tracked(axes, inner.values, inner.seam_ok);
    }
  }
  throw contract_violation("operator: unknown node kind");
}

std::vector<cplx> OperatorSpec::apply(const WaveFunction& wf) const {
  wf.validate();
  return apply_tracked(wf.axes, wf.samples, true).values;
}

std::string OperatorSpec::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Node::Kind::scalar:
      return "scalar";
    case Node::Kind::multiply:
      return n.label;
    case Node::Kind::derivative:
      return "d" + std::to_string(n.order) + "/dx" + std::to_string(n.axis);
    case Node::Kind::sum: {
      std::string s = "(";
      for (size_t i = 0; i < n.children.size(); ++i)
        s += (i ? " + " : "") + OperatorSpec(n.children[i]).describe();
      return s + ")";
    }
    case Node::Kind::compose:
      return OperatorSpec(n.children[0]).describe() + "*" +
             OperatorSpec(n.children[1]).describe();
  }
  return "?";
}

namespace {

void collect_polynomial(const NodePtr& node, cplx factor,
                        OperatorSpec::PolynomialForm& form) {
  switch (node->kind) {
    case Node::Kind::scalar:
      form.constant += factor * node->scale;
      return;
    case Node::Kind::multiply:
      form.potentials.emplace_back(factor, node->fn);
      return;
    case Node::Kind::derivative:
      if (node->axis != 0)
        throw contract_violation("output estimator: only single-axis operators supported");
      if (node->order == 1)
        form.first_order += factor * node->scale;
      else
        form.second_order += factor * node->scale;
      return;
    case Node::Kind::sum:
      for (const NodePtr& c : node->children) collect_polynomial(c, factor, form);
      return;
    case Node::Kind::compose: {
      const NodePtr& a = node->children[0];
      const NodePtr& b = node->children[1];
      if (a->kind == Node::Kind::scalar) {
        collect_polynomial(b, factor * a->scale, form);
        return;
      }
      if (b->kind == Node::Kind::scalar) {
        collect_polynomial(a, factor * b->scale, form);
        return;
      }
      throw contract_violation(
          "output estimator: operator products are outside the supported family "
          "(polynomials in position with derivatives up to second order)");
    }
  }
}

}  // namespace

OperatorSpec::PolynomialForm OperatorSpec::polynomial_form() const {
  PolynomialForm form;
  collect_polynomial(node_, cplx{1.0, 0.0}, form);
  return form;
}

// ---------------------------------------------------------------------------
// factories
// ---------------------------------------------------------------------------

OperatorSpec position_op(int axis) {
  return OperatorSpec::multiply(
      [axis](const std::vector<double>& x) { return x[static_cast<size_t>(axis)]; },
      axis == 0 ? "x" : "y");
}

OperatorSpec momentum_op(const PhysicalParams& p, int axis) {
  return OperatorSpec::derivative(axis, 1, cplx{0.0, -p.hbar});
}

OperatorSpec kinetic_op(const PhysicalParams& p) {
  const double c = -p.hbar * p.hbar / (2.0 * p.mass);
  return OperatorSpec::derivative(0, 2, cplx{c, 0.0});
}

OperatorSpec oscillator_hamiltonian(const PhysicalParams& p) {
  const double vcoef = 0.5 * p.mass * p.omega * p.omega;
  return kinetic_op(p) + OperatorSpec::multiply(
                             [vcoef](const std::vector<double>& x) { return vcoef * x[0] * x[0]; },
                             "V(x)");
}

OperatorSpec number_op() { return OperatorSpec::derivative(0, 1, cplx{0.0, 1.0}); }

OperatorSpec angle_op() {
  return OperatorSpec::multiply([](const std::vector<double>& x) { return x[0]; }, "phi");
}

OperatorSpec energy_op(const PhysicalParams& p) {
  return OperatorSpec::derivative(0, 1, cplx{0.0, p.hbar});
}

OperatorSpec time_op() {
  return OperatorSpec::multiply([](const std::vector<double>& x) { return x[0]; }, "t");
}

}  // namespace qfr
