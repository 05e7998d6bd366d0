// models.cpp
#include "qms/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qms {

OscillatorTruncation make_oscillator(Index d) {
  if (d < 2) throw DimensionError("make_oscillator: need dimension >= 2");
  OscillatorTruncation osc;
  osc.dim = d;
  osc.a = Operator::Zero(d, d);
  for (Index k = 1; k < d; ++k)
    osc.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Operator adag = osc.a.adjoint();
  osc.q = (osc.a + adag) / std::sqrt(2.0);
  osc.p = Complex(0.0, -1.0) * (osc.a - adag) / std::sqrt(2.0);
  return osc;
}

SuperOperator derivation(const Operator& x) {
  return Complex(0.0, 1.0) * (left_mult(x) - right_mult(x));
}

SuperOperator heat_flow_generator_expanded(Index d) {
  const OscillatorTruncation osc = make_oscillator(d);
  const Operator k = osc.p * osc.p + osc.q * osc.q;
  return 2.0 * (sandwich(osc.p) + sandwich(osc.q)) - left_mult(k) -
         right_mult(k);
}

SuperOperator heat_flow_generator(Index d) {
  const OscillatorTruncation osc = make_oscillator(d);
  const SuperOperator dp = derivation(osc.p);
  const SuperOperator dq = derivation(osc.q);
  const SuperOperator l = compose(dp, dp) + compose(dq, dq);
  const SuperOperator expanded = heat_flow_generator_expanded(d);
  const double gap = (l.matrix - expanded.matrix).norm();
  if (gap > 1e-12 * std::max(1.0, l.matrix.norm())) {
    std::ostringstream msg;
    msg << "heat_flow_generator: derivation and expanded forms disagree by "
        << gap;
    throw InternalInconsistencyError(msg.str());
  }
  return l;
}

LindbladTerms heat_flow_lindblad_terms(Index d) {
  const OscillatorTruncation osc = make_oscillator(d);
  LindbladTerms terms;
  terms.g = -(osc.p * osc.p + osc.q * osc.q);
  terms.kraus = {std::sqrt(2.0) * osc.p, std::sqrt(2.0) * osc.q};
  return terms;
}

Operator heat_flow_apply(const OscillatorTruncation& osc, const Operator& a) {
  const auto ad = [](const Operator& x, const Operator& y) {
    return (Complex(0.0, 1.0) * (x * y - y * x)).eval();
  };
  return ad(osc.p, ad(osc.p, a)) + ad(osc.q, ad(osc.q, a));
}

LindbladTerms dephasing_lindblad_terms(const Operator& v) {
  if (!is_hermitian(v))
    throw NotHermitianError("dephasing_lindblad_terms: V must be Hermitian");
  LindbladTerms terms;
  terms.g = -0.5 * (v * v);
  terms.kraus = {v};
  return terms;
}

SuperOperator dephasing_generator(const Operator& v) {
  if (!is_hermitian(v))
    throw NotHermitianError("dephasing_generator: V must be Hermitian");
  const SuperOperator ad = left_mult(v) - right_mult(v);
  const SuperOperator l = -0.5 * compose(ad, ad);
  const SuperOperator gksl = from_lindblad_terms(dephasing_lindblad_terms(v));
  const double gap = (l.matrix - gksl.matrix).norm();
  if (gap > 1e-12 * std::max(1.0, l.matrix.norm())) {
    std::ostringstream msg;
    msg << "dephasing_generator: commutator and GKSL forms disagree by "
        << gap;
    throw InternalInconsistencyError(msg.str());
  }
  return l;
}

namespace {

// Gauss-Hermite nodes and weights for integrals against e^{-y^2} dy,
// by eigendecomposition of the Jacobi matrix (off-diagonal sqrt(k/2)).
void gauss_hermite(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    j(k - 1, k) = b;
    j(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  nodes = es.eigenvalues();
  weights.resize(n);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    weights(k) = sqrt_pi * v0 * v0;
  }
}

}  // namespace

Operator dephasing_quadrature_oracle(const Operator& v, double t,
                                     const Operator& a, int nodes) {
  if (!is_hermitian(v))
    throw NotHermitianError("dephasing_quadrature_oracle: V must be Hermitian");
  if (a.rows() != v.rows() || a.cols() != v.cols())
    throw DimensionError("dephasing_quadrature_oracle: dimension mismatch");
  if (t < 0.0)
    throw Error("dephasing_quadrature_oracle: time must be non-negative");
  if (nodes < 2)
    throw Error("dephasing_quadrature_oracle: need at least 2 nodes");
  if (t == 0.0) return a;

  Eigen::VectorXd y, w;
  gauss_hermite(nodes, y, w);

  const EigenDecomposition dec = hermitian_eig(v);
  const Operator& u = dec.eigenvectors;
  const Operator a_eig = u.adjoint() * a * u;

  // E[e^{ixV} A e^{-ixV}] with x ~ N(0, t); substitute x = sqrt(2t) y.
  const double width = std::sqrt(2.0 * t);
  const double total = w.sum();
  Operator acc = Operator::Zero(a.rows(), a.cols());
  for (int k = 0; k < nodes; ++k) {
    const double x = width * y(k);
    Vector phase(v.rows());
    for (Index i = 0; i < v.rows(); ++i)
      phase(i) = std::exp(Complex(0.0, x * dec.eigenvalues(i)));
    acc += (w(k) / total) *
           (phase.asDiagonal() * a_eig * phase.conjugate().asDiagonal());
  }
  return u * acc * u.adjoint();
}

SuperOperator conjugation_generator(const Operator& g0) {
  if (g0.rows() != g0.cols())
    throw DimensionError("conjugation_generator: G0 must be square");
  return from_lindblad_terms(LindbladTerms{g0, {}});
}

ShiftResetModel make_shift_reset(Index d, double delta) {
  if (d < 2) throw DimensionError("make_shift_reset: need dimension >= 2");
  if (!(delta > 0.0))
    throw Error("make_shift_reset: delta must be positive");
  ShiftResetModel model;
  model.dim = d;
  model.delta = delta;
  model.s = Operator::Zero(d, d);
  for (Index k = 0; k + 1 < d; ++k) model.s(k + 1, k) = 1.0;
  model.f.resize(d);
  for (Index k = 0; k < d; ++k)
    model.f(k) = std::exp(-static_cast<double>(k) * delta);
  model.f /= model.f.norm();
  return model;
}

Operator shift_projector(const ShiftResetModel& model, Index n) {
  if (n < 0 || n > model.dim)
    throw IndexError("shift_projector: n out of range");
  Operator e = Operator::Zero(model.dim, model.dim);
  for (Index k = 0; k < n; ++k) e(k, k) = 1.0;
  return e;
}

double shift_reset_state(const ShiftResetModel& model, const Operator& a) {
  if (a.rows() != model.dim || a.cols() != model.dim)
    throw DimensionError("shift_reset_state: dimension mismatch");
  return model.f.dot(a * model.f).real();
}

Operator shift_reset_apply(const ShiftResetModel& model, Index n,
                           const Operator& a) {
  if (n < 0 || n > model.dim)
    throw IndexError("shift_reset_apply: n out of range");
  if (a.rows() != model.dim || a.cols() != model.dim)
    throw DimensionError("shift_reset_apply: dimension mismatch");
  const Index d = model.dim;
  const Complex omega = model.f.dot(a * model.f);
  Operator out = Operator::Zero(d, d);
  for (Index k = 0; k < n && k < d; ++k) out(k, k) = omega;
  // S^n A S*^n shifts A down the diagonal by n
  if (n < d)
    out.block(n, n, d - n, d - n) += a.block(0, 0, d - n, d - n);
  return out;
}

SuperOperator shift_reset_map(const ShiftResetModel& model, Index n) {
  if (n < 0 || n > model.dim)
    throw IndexError("shift_reset_map: n out of range");
  const Index d = model.dim;
  Operator sn = Operator::Identity(d, d);
  for (Index k = 0; k < n; ++k) sn = (model.s * sn).eval();
  const Operator reset =
      vec(shift_projector(model, n)) *
      vec(rank_one(model.f, model.f)).adjoint();
  return SuperOperator(d, reset + sandwich(sn.adjoint().eval()).matrix);
}

ShiftResetCheck shift_reset_semigroup_check(
    const ShiftResetModel& model,
    const std::vector<std::pair<Index, Index>>& mn, double tol_factor) {
  const Index d = model.dim;
  ShiftResetCheck check;
  check.pass = true;
  for (const auto& [m, n] : mn) {
    if (m < 0 || n < 0 || m + n > d)
      throw IndexError("shift_reset_semigroup_check: m + n out of range");
    ShiftResetCheckEntry entry;
    entry.m = m;
    entry.n = n;
    entry.bound = tol_factor *
                  std::exp(-2.0 * static_cast<double>(d - m - n) * model.delta);
    const Index support = d - m - n;
    for (Index i = 0; i < support; ++i)
      for (Index j = 0; j < support; ++j) {
        Operator probe = Operator::Zero(d, d);
        probe(i, j) = 1.0;
        const Operator lhs =
            shift_reset_apply(model, m, shift_reset_apply(model, n, probe));
        const Operator rhs = shift_reset_apply(model, m + n, probe);
        entry.residual = std::max(entry.residual, (lhs - rhs).norm());
      }
    entry.pass = entry.residual <= entry.bound;
    check.max_residual = std::max(check.max_residual, entry.residual);
    check.pass = check.pass && entry.pass;
    check.entries.push_back(entry);
  }
  return check;
}

}  // namespace qms
