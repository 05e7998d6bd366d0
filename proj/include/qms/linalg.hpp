// linalg.hpp -- dense complex linear algebra kernels shared by all modules
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qms/errors.hpp"

namespace qms {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Default tolerance for the checks in this module. Every tolerance below
// scales by max(1, norm of the input) unless stated otherwise.
inline constexpr double default_tol = 1e-10;

// Inner products are conjugate-linear in the FIRST argument throughout:
// <x, y> = x.adjoint() * y.
inline Complex inner(const Vector& x, const Vector& y) {
  return x.dot(y);  // Eigen's dot conjugates the left factor
}

// rank_one(x, y) = |x><y|, entry (i,j) = x_i * conj(y_j).
Operator rank_one(const Vector& x, const Vector& y);

// Kronecker product, row index (i1 * rows(B) + i2), so kron(A, B) has
// A-blocks scaled by entries of A: block (i1, j1) = A(i1, j1) * B.
Operator kron(const Operator& a, const Operator& b);

// Largest singular value.
double operator_norm(const Operator& a);

// Frobenius norm (alias for Eigen's .norm(), named for use in reports).
inline double frobenius_norm(const Operator& a) { return a.norm(); }

bool all_finite(const Operator& a);

// ||A - A*||_F, the hermiticity defect.
double hermiticity_defect(const Operator& a);

inline bool is_hermitian(const Operator& a, double tol = default_tol) {
  return hermiticity_defect(a) <= tol * std::max(1.0, a.norm());
}

// True iff A is Hermitian within tol and the smallest eigenvalue of the
// symmetrized (A + A*)/2 is >= -tol * max(1, ||A||_F).
bool is_positive_semidefinite(const Operator& a, double tol = default_tol);

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending
  Operator eigenvectors;        // column k pairs with eigenvalues[k]
};

// Eigendecomposition of a Hermitian matrix with a deterministic gauge:
// eigenvalues ascending; within a degenerate cluster (consecutive gaps
// below 1e-10 * max(1, ||A||)) eigenvectors are ordered by the index of
// their largest-magnitude component; every eigenvector's phase is fixed so
// that its largest-magnitude component is real and positive.
// Throws NotHermitianError if ||A - A*||_F > tol * max(1, ||A||_F).
EigenDecomposition hermitian_eig(const Operator& a, double tol = default_tol);

// Matrix exponential by scaling-and-squaring with Pade approximants.
// Relative accuracy <= 1e-10 for ||A||_F <= 50; inputs with ||A||_F > 256
// are outside the accuracy contract and throw AccuracyError.
Operator matrix_exp(const Operator& a);

}  // namespace qms
