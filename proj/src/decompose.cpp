// decompose.cpp
#include "qms/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qms/rng.hpp"

namespace qms {

AssociatePair associate_vector(const Operator& t, double rank_tol) {
  if (t.rows() != t.cols())
    throw DimensionError("associate_vector: T must be square");
  if (t.norm() == 0.0)
    throw ZeroOperatorError("associate_vector: T is the zero operator");
  const EigenDecomposition dec = hermitian_eig(t, rank_tol);
  const double top = dec.eigenvalues.cwiseAbs().maxCoeff();
  if (dec.eigenvalues.minCoeff() < -rank_tol * std::max(1.0, top)) {
    std::ostringstream msg;
    msg << "associate_vector: T has eigenvalue " << dec.eigenvalues.minCoeff()
        << ", not PSD within tolerance";
    throw NotPSDError(msg.str());
  }

  AssociatePair pair;
  pair.t = t;
  std::vector<double> kept;
  for (Index i = dec.eigenvalues.size() - 1; i >= 0; --i) {
    if (dec.eigenvalues(i) > rank_tol * top) kept.push_back(dec.eigenvalues(i));
  }
  if (kept.empty())
    throw ZeroOperatorError(
        "associate_vector: no eigenvalue above the rank tolerance");

  double total = 0.0;
  for (double v : kept) total += v;
  pair.trace_total = total;

  const double sqrt_total = std::sqrt(total);
  pair.weights.resize(static_cast<Index>(kept.size()));
  pair.h = Vector::Zero(t.rows());
  Index out = 0;
  for (Index i = dec.eigenvalues.size() - 1; i >= 0; --i) {
    if (dec.eigenvalues(i) <= rank_tol * top) continue;
    pair.weights(out) = dec.eigenvalues(i) / total;
    Vector ks = sqrt_total * dec.eigenvectors.col(i);
    pair.h += ks / ks.squaredNorm();
    pair.k.push_back(std::move(ks));
    ++out;
  }
  return pair;
}

Operator extract_g(const SuperOperator& l, const AssociatePair& pair) {
  const Index d = l.dim;
  if (pair.t.rows() != d)
    throw DimensionError("extract_g: associate pair dimension mismatch");
  const Vector th = pair.t * pair.h;
  const Complex offset =
      0.5 * pair.h.dot(apply(l, pair.t) * pair.h);
  Operator g(d, d);
  for (Index i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    g.col(i) = apply(l, rank_one(e, th)) * pair.h - offset * e;
  }
  return g;
}

SuperOperator extract_phi(const SuperOperator& l, const Operator& g) {
  if (g.rows() != l.dim || g.cols() != l.dim)
    throw DimensionError("extract_phi: G dimension mismatch");
  return l - left_mult(g) - right_mult(g.adjoint().eval());
}

LindbladDecomposition lindblad_decompose(const SuperOperator& l,
                                         std::optional<Operator> t,
                                         double tol, double rank_tol) {
  if (!is_hermiticity_preserving(l, tol))
    throw NotHermiticityPreservingError(
        "lindblad_decompose: L does not preserve hermiticity");
  const Index d = l.dim;
  LindbladDecomposition dec;
  dec.source = l;
  const Operator tt = t.has_value()
                          ? *t
                          : Operator(Operator::Identity(d, d) /
                                     static_cast<double>(d));
  dec.pair = associate_vector(tt, rank_tol);
  dec.g = extract_g(l, dec.pair);
  dec.phi = extract_phi(l, dec.g);

  const CpVerdict cp = is_completely_positive(dec.phi, tol);
  dec.min_choi_eigenvalue = cp.min_choi_eigenvalue;
  if (!cp.completely_positive) {
    std::ostringstream msg;
    msg << "lindblad_decompose: extracted phi is not completely positive "
           "(min Choi eigenvalue "
        << cp.min_choi_eigenvalue << ")";
    throw PhiNotCPError(msg.str(), cp.min_choi_eigenvalue);
  }
  dec.kraus = kraus_from_choi(choi_of(dec.phi), tol);

  const SuperOperator rebuilt =
      dec.phi + left_mult(dec.g) + right_mult(dec.g.adjoint().eval());
  dec.reconstruction_residual = (l.matrix - rebuilt.matrix).norm();
  return dec;
}

StinespringDilation stinespring_dilate(const SuperOperator& phi,
                                       double gram_tol) {
  const Index d = phi.dim;
  const ChoiMatrix c = choi_of(phi);
  // The Gram matrix on the (p, q, r)-ordered coordinate space is
  // I_d (x) C because E_qp E_p'q' = delta_pp' E_qq'; its spectrum is the
  // Choi spectrum with multiplicity d, so the kept coordinates are pairs
  // (p, j) with j running over kept Choi eigenvectors.
  const EigenDecomposition dec = hermitian_eig(c.matrix, gram_tol);
  const double top = dec.eigenvalues.cwiseAbs().maxCoeff();
  const double low = dec.eigenvalues.minCoeff();
  if (low < -gram_tol * std::max(1.0, top)) {
    std::ostringstream msg;
    msg << "stinespring_dilate: Gram matrix has eigenvalue " << low
        << "; the map is not completely positive";
    throw GramNotPSDError(msg.str(), low);
  }

  std::vector<Index> kept;  // descending eigenvalue order
  for (Index i = dec.eigenvalues.size() - 1; i >= 0; --i)
    if (dec.eigenvalues(i) > gram_tol * top) kept.push_back(i);
  const Index r = static_cast<Index>(kept.size());
  const Index k = d * r;

  StinespringDilation dil;
  dil.dim = d;
  dil.dilation_dim = k;
  dil.gram_rank = k;

  // V maps u to the class of 1 (x) u; in kept coordinates (p slow, j fast)
  // its rows are sqrt(lambda_j) conj(y_j) read blockwise.
  dil.v = Operator::Zero(k, d);
  for (Index p = 0; p < d; ++p)
    for (Index j = 0; j < r; ++j) {
      const double root = std::sqrt(dec.eigenvalues(kept[j]));
      for (Index rr = 0; rr < d; ++rr)
        dil.v(p * r + j, rr) =
            root * std::conj(dec.eigenvectors(p * d + rr, kept[j]));
    }

  // pi(A) = A (x) I_r in these coordinates.
  dil.pi = Operator::Zero(k * k, d * d);
  const Operator eye_r = Operator::Identity(r, r);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Operator unit = Operator::Zero(d, d);
      unit(i, j) = 1.0;
      dil.pi.col(i + d * j) = vec(kron(unit, eye_r));
    }
  return dil;
}

Operator apply_pi(const StinespringDilation& dil, const Operator& a) {
  if (a.rows() != dil.dim || a.cols() != dil.dim)
    throw DimensionError("apply_pi: operator dimension mismatch");
  const Index k = dil.dilation_dim;
  return unvec((dil.pi * vec(a)).eval(), k);
}

StinespringChecks verify_stinespring(const SuperOperator& phi,
                                     const StinespringDilation& dil) {
  const Index d = phi.dim;
  if (dil.dim != d)
    throw DimensionError("verify_stinespring: dimension mismatch");
  const Index k = dil.dilation_dim;
  StinespringChecks out;

  std::vector<Operator> pi_units(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      pi_units[static_cast<std::size_t>(i + d * j)] =
          unvec(Operator(dil.pi.col(i + d * j)), k);

  Operator pi_one = Operator::Zero(k, k);
  for (Index i = 0; i < d; ++i)
    pi_one += pi_units[static_cast<std::size_t>(i + d * i)];
  out.unitality_residual = (pi_one - Operator::Identity(k, k)).norm();

  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      Operator unit = Operator::Zero(d, d);
      unit(i, j) = 1.0;
      const Operator& pa = pi_units[static_cast<std::size_t>(i + d * j)];
      out.reproduction_residual =
          std::max(out.reproduction_residual,
                   (dil.v.adjoint() * pa * dil.v - apply(phi, unit)).norm());
      out.adjoint_residual = std::max(
          out.adjoint_residual,
          (pa.adjoint() - pi_units[static_cast<std::size_t>(j + d * i)])
              .norm());
      out.norm_excess =
          std::max(out.norm_excess, operator_norm(pa) - operator_norm(unit));
    }

  // pi(E_ij) pi(E_pq) = delta_jp pi(E_iq) covers multiplicativity on a
  // spanning set.
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index p = 0; p < d; ++p)
        for (Index q = 0; q < d; ++q) {
          Operator expect = Operator::Zero(k, k);
          if (j == p) expect = pi_units[static_cast<std::size_t>(i + d * q)];
          out.multiplicativity_residual = std::max(
              out.multiplicativity_residual,
              (pi_units[static_cast<std::size_t>(i + d * j)] *
                   pi_units[static_cast<std::size_t>(p + d * q)] -
               expect)
                  .norm());
        }

  Rng rng(7);
  for (int s = 0; s < 4; ++s) {
    const Operator a = gaussian_operator(rng, d, d);
    out.norm_excess = std::max(
        out.norm_excess, operator_norm(apply_pi(dil, a)) - operator_norm(a));
  }

  // Minimality: pi(E_pq) V e_m has columns spanning C^k when the dilation
  // carries no dead directions.
  if (k > 0) {
    Operator span(k, d * d * d);
    Index col = 0;
    for (Index p = 0; p < d; ++p)
      for (Index q = 0; q < d; ++q)
        for (Index m = 0; m < d; ++m)
          span.col(col++) =
              pi_units[static_cast<std::size_t>(p + d * q)] * dil.v.col(m);
    Eigen::JacobiSVD<Operator> svd(span);
    const auto& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * std::max(1.0, top)) ++rank;
    out.minimality_rank = rank;
  }
  out.minimal = out.minimality_rank == k;
  return out;
}

UnitalityIdentityReport verify_unitality_identity(
    const LindbladDecomposition& dec, const StinespringDilation& dil,
    double tol) {
  if (!is_unital(dec.source, UnitalityMode::Generator, 1e-8))
    throw NotUnitalError(
        "verify_unitality_identity: decomposed generator is not unital");
  if (dil.dim != dec.source.dim)
    throw DimensionError("verify_unitality_identity: dimension mismatch");
  UnitalityIdentityReport rep;
  rep.vstar_v = dil.v.adjoint() * dil.v;
  rep.residual = operator_norm(rep.vstar_v + dec.g + dec.g.adjoint());
  rep.pass = rep.residual <= tol;
  return rep;
}

}  // namespace qms
