// cp.cpp
#include "qms/cp.hpp"

#include <cmath>
#include <sstream>

#include "qms/rng.hpp"

namespace qms {

CpVerdict is_completely_positive(const SuperOperator& s, double tol) {
  const ChoiMatrix c = choi_of(s);
  CpVerdict v;
  v.choi_hermiticity_defect = (c.matrix - c.matrix.adjoint()).norm();
  Eigen::SelfAdjointEigenSolver<Operator> es(
      ((c.matrix + c.matrix.adjoint()) / 2.0).eval(), Eigen::EigenvaluesOnly);
  v.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  const double scale = tol * std::max(1.0, c.matrix.norm());
  if (v.choi_hermiticity_defect > scale)
    throw NotHermiticityPreservingError(
        "is_completely_positive: Choi matrix is not Hermitian within "
        "tolerance");
  v.completely_positive = v.min_choi_eigenvalue >= -scale;
  return v;
}

KrausSet kraus_from_choi(const ChoiMatrix& c, double rank_tol) {
  const Index d = c.dim;
  const EigenDecomposition dec = hermitian_eig(c.matrix, rank_tol);
  const double top = dec.eigenvalues.cwiseAbs().maxCoeff();
  const double low = dec.eigenvalues.minCoeff();
  if (low < -rank_tol * std::max(1.0, top)) {
    std::ostringstream msg;
    msg << "kraus_from_choi: Choi matrix has eigenvalue " << low
        << ", not PSD within tolerance";
    throw NotPSDError(msg.str());
  }
  KrausSet out;
  out.dim = d;
  // descending order
  for (Index k = dec.eigenvalues.size() - 1; k >= 0; --k) {
    const double lambda = dec.eigenvalues(k);
    if (lambda <= rank_tol * top) continue;
    const Vector w = std::sqrt(lambda) * dec.eigenvectors.col(k);
    out.ops.push_back(unvec(w, d).adjoint());
  }
  return out;
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  const Index d = k.dim;
  if (d <= 0) throw DimensionError("choi_from_kraus: dimension must be set");
  Operator c = Operator::Zero(d * d, d * d);
  for (const Operator& v : k.ops) {
    if (v.rows() != d || v.cols() != d)
      throw DimensionError("choi_from_kraus: Kraus dimension mismatch");
    const Vector w = vec(v.adjoint().eval());
    c += w * w.adjoint();
  }
  return ChoiMatrix{d, std::move(c)};
}

SuperOperator superop_from_kraus(const KrausSet& k) {
  if (k.dim <= 0)
    throw DimensionError("superop_from_kraus: dimension must be set");
  SuperOperator s = zero_superop(k.dim);
  for (const Operator& v : k.ops) s = s + sandwich(v);
  return s;
}

CcpWitness ccp_quadratic_form(const SuperOperator& l,
                              const std::vector<Operator>& a,
                              const std::vector<Vector>& u) {
  if (a.empty() || a.size() != u.size())
    throw DimensionError(
        "ccp_quadratic_form: need equally many operators and vectors");
  const Index d = l.dim;
  double weight = 0.0;
  Vector sum = Vector::Zero(d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != d || a[i].cols() != d || u[i].size() != d)
      throw DimensionError("ccp_quadratic_form: tuple dimension mismatch");
    weight += a[i].norm() * u[i].norm();
    sum += a[i] * u[i];
  }
  CcpWitness w;
  w.a = a;
  w.u = u;
  w.constraint_residual = sum.norm();
  if (w.constraint_residual > 1e-10 * std::max(1.0, weight)) {
    std::ostringstream msg;
    msg << "ccp_quadratic_form: ||sum A_k u_k|| = " << w.constraint_residual
        << " violates the constraint";
    throw ConstraintViolatedError(msg.str());
  }
  Complex value(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Operator b = a[i].adjoint() * a[j];
      value += u[i].dot(apply(l, b) * u[j]);
    }
  w.scale = std::max(1.0, l.matrix.norm() * weight * weight);
  if (std::abs(value.imag()) > 1e-10 * w.scale) {
    std::ostringstream msg;
    msg << "ccp_quadratic_form: form has imaginary part " << value.imag()
        << "; the map is not hermiticity preserving";
    throw NonRealFormError(msg.str());
  }
  w.value = value.real();
  return w;
}

namespace {

// Draw a random tuple and complete it so the constraint holds exactly:
// choose m pairs freely, then append A = rank_one(-sum A_i u_i, k)/||k||^2
// together with the vector k itself.
CcpWitness random_constrained_tuple(const SuperOperator& l, Rng& rng) {
  const Index d = l.dim;
  const int m = d >= 2 ? 1 + static_cast<int>(rng.below(
                                 static_cast<std::uint64_t>(d - 1)))
                       : 1;
  std::vector<Operator> a;
  std::vector<Vector> u;
  Vector sum = Vector::Zero(d);
  for (int i = 0; i < m; ++i) {
    a.push_back(gaussian_operator(rng, d, d));
    u.push_back(gaussian_vector(rng, d));
    sum += a.back() * u.back();
  }
  const Vector k = gaussian_vector(rng, d);
  a.push_back(rank_one(-sum, k) / k.squaredNorm());
  u.push_back(k);
  return ccp_quadratic_form(l, a, u);
}

}  // namespace

CcpVerdict is_conditionally_completely_positive(const SuperOperator& l,
                                                int samples,
                                                std::uint64_t seed,
                                                double tol) {
  if (!is_hermiticity_preserving(l, tol))
    throw NotHermiticityPreservingError(
        "is_conditionally_completely_positive: map does not preserve "
        "hermiticity");
  const Index d = l.dim;
  CcpVerdict out;

  // Stage 1: positivity of the Choi matrix off the maximally entangled ray.
  const ChoiMatrix c = choi_of(l);
  Vector omega = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) omega(i * d + i) = 1.0;
  omega /= omega.norm();
  const Operator p =
      Operator::Identity(d * d, d * d) - omega * omega.adjoint();
  const Operator sym = (c.matrix + c.matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Operator> es((p * sym * p).eval(),
                                             Eigen::EigenvaluesOnly);
  out.spectral_min_eigenvalue = es.eigenvalues().minCoeff();
  const double scale = tol * std::max(1.0, c.matrix.norm());
  out.spectral_pass = out.spectral_min_eigenvalue >= -scale;

  // Stage 2: sampled quadratic-form witnesses. Runs whenever samples > 0,
  // and is forced on near-boundary spectral verdicts.
  int n = samples;
  if (n <= 0 && d >= 2 &&
      std::abs(out.spectral_min_eigenvalue) < 10.0 * scale)
    n = 200;
  if (d < 2) n = 0;  // on M_1 every admissible tuple gives exactly zero

  Rng rng(seed);
  out.worst_value = 0.0;
  for (int s = 0; s < n; ++s) {
    const CcpWitness w = random_constrained_tuple(l, rng);
    ++out.samples_run;
    const double normalized = w.value / w.scale;
    if (out.samples_run == 1 || normalized < out.worst_value) {
      out.worst_value = normalized;
      out.worst = w;
    }
  }
  out.sampled_pass = out.worst_value >= -tol;

  out.conditionally_completely_positive = out.spectral_pass && out.sampled_pass;
  return out;
}

}  // namespace qms
