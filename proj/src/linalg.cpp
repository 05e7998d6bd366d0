// linalg.cpp
#include "qms/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace qms {

Operator rank_one(const Vector& x, const Vector& y) {
  return x * y.adjoint();
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double operator_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Operator>(a).singularValues()(0);
}

bool all_finite(const Operator& a) {
  return a.allFinite();
}

double hermiticity_defect(const Operator& a) {
  if (a.rows() != a.cols())
    throw DimensionError("hermiticity_defect: matrix is not square");
  return (a - a.adjoint()).norm();
}

bool is_positive_semidefinite(const Operator& a, double tol) {
  const double scale = tol * std::max(1.0, a.norm());
  if (hermiticity_defect(a) > scale) return false;
  Eigen::SelfAdjointEigenSolver<Operator> es(((a + a.adjoint()) / 2.0).eval(),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -scale;
}

namespace {

Index argmax_abs(const Vector& v) {
  Index best = 0;
  double best_mag = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

void fix_phase(Eigen::Ref<Vector> v) {
  const Index k = argmax_abs(v);
  const Complex z = v(k);
  const double m = std::abs(z);
  if (m > 0.0) v *= std::conj(z) / m;
}

}  // namespace

EigenDecomposition hermitian_eig(const Operator& a, double tol) {
  if (a.rows() != a.cols())
    throw DimensionError("hermitian_eig: matrix is not square");
  const double defect = hermiticity_defect(a);
  if (defect > tol * std::max(1.0, a.norm())) {
    std::ostringstream msg;
    msg << "hermitian_eig: hermiticity defect " << defect
        << " exceeds tolerance";
    throw NotHermitianError(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<Operator> es(((a + a.adjoint()) / 2.0).eval());
  EigenDecomposition dec{es.eigenvalues(), es.eigenvectors()};

  const Index n = dec.eigenvalues.size();
  const double scale =
      std::max(1.0, dec.eigenvalues.cwiseAbs().maxCoeff());
  const double cluster_gap = 1e-10 * scale;

  // Re-gauge degenerate clusters: order by largest-component index, then fix
  // each phase. Outside clusters only the phase needs fixing.
  Index lo = 0;
  while (lo < n) {
    Index hi = lo;
    while (hi + 1 < n &&
           dec.eigenvalues(hi + 1) - dec.eigenvalues(hi) < cluster_gap)
      ++hi;
    if (hi > lo) {
      std::vector<Index> order(hi - lo + 1);
      std::iota(order.begin(), order.end(), lo);
      std::stable_sort(order.begin(), order.end(), [&](Index p, Index q) {
        return argmax_abs(dec.eigenvectors.col(p)) <
               argmax_abs(dec.eigenvectors.col(q));
      });
      Operator cols(n, hi - lo + 1);
      for (Index k = 0; k < static_cast<Index>(order.size()); ++k)
        cols.col(k) = dec.eigenvectors.col(order[k]);
      dec.eigenvectors.middleCols(lo, hi - lo + 1) = cols;
    }
    for (Index k = lo; k <= hi; ++k) fix_phase(dec.eigenvectors.col(k));
    lo = hi + 1;
  }
  return dec;
}

Operator matrix_exp(const Operator& a) {
  if (a.rows() != a.cols())
    throw DimensionError("matrix_exp: matrix is not square");
  if (!all_finite(a))
    throw AccuracyError("matrix_exp: input has non-finite entries");
  const double norm = a.norm();
  if (norm > 256.0) {
    std::ostringstream msg;
    msg << "matrix_exp: ||A||_F = " << norm
        << " exceeds the accuracy contract limit 256";
    throw AccuracyError(msg.str());
  }
  return a.exp();
}

}  // namespace qms
