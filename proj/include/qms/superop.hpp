// superop.hpp -- linear maps on M_d stored as dense d^2 x d^2 matrices
#pragma once

#include <vector>

#include "qms/linalg.hpp"

namespace qms {

// Dimension cap for superoperator construction (they are stored dense).
// Default 32; override with the environment variable QMS_MAX_DIM.
Index max_dim();

// Column-stacking vectorization: vec(A)[i + d*j] = A(i, j).
Vector vec(const Operator& a);
Operator unvec(const Vector& v, Index d);

// GKSL-style presentation of a map: A |-> sum_j V_j* A V_j + G A + A G*.
struct LindbladTerms {
  Operator g;
  std::vector<Operator> kraus;
};

// A linear map on M_d acting on column-stacked operators.
struct SuperOperator {
  Index dim = 0;        // Hilbert space dimension d
  Operator matrix;      // d^2 x d^2

  SuperOperator() = default;
  SuperOperator(Index dim, Operator matrix);
};

SuperOperator identity_superop(Index d);
SuperOperator zero_superop(Index d);

// A |-> B A  is  kron(I, B);  A |-> A B  is  kron(B^T, I).
SuperOperator left_mult(const Operator& b);
SuperOperator right_mult(const Operator& b);

// A |-> V* A V.
SuperOperator sandwich(const Operator& v);

SuperOperator from_lindblad_terms(const LindbladTerms& terms);

// Function object on purpose: an unqualified apply(S, A) would otherwise
// pull std::apply into overload resolution through ADL (Eigen matrices carry
// std::complex), and that one wins for rvalue arguments.
struct ApplyFn {
  Operator operator()(const SuperOperator& s, const Operator& a) const;
};
inline constexpr ApplyFn apply{};

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(Complex c, const SuperOperator& s);
SuperOperator operator*(double c, const SuperOperator& s);

// Composition: apply(compose(a, b), x) = apply(a, apply(b, x)).
SuperOperator compose(const SuperOperator& a, const SuperOperator& b);

// Choi matrix: d^2 x d^2 with block (i, j) = Phi(E_ij), where E_ij are the
// matrix units. Phi is completely positive iff this matrix is PSD.
struct ChoiMatrix {
  Index dim = 0;
  Operator matrix;
};

ChoiMatrix choi_of(const SuperOperator& s);
SuperOperator choi_to_superop(const ChoiMatrix& c);

// The n-fold amplification acting blockwise on M_{nd}: block matrices with
// d x d outer structure, A tensor E = kron(A, E) for E in M_n, and
// amplify(S, n)(kron(A, E)) = kron(apply(S, A), E).
SuperOperator amplify(const SuperOperator& s, Index n);

// max_ij ||S(E_ij*) - S(E_ij)*||, computed as the hermiticity defect of the
// Choi matrix (the two coincide entrywise up to rearrangement).
double hermiticity_preservation_defect(const SuperOperator& s);

bool is_hermiticity_preserving(const SuperOperator& s,
                               double tol = default_tol);

enum class UnitalityMode { Semigroup, Generator };

// ||apply(S, 1) - 1||_F for semigroup elements, ||apply(S, 1)||_F for
// generators.
double unitality_residual(const SuperOperator& s, UnitalityMode mode);

// True iff the unitality residual is <= tol * d.
bool is_unital(const SuperOperator& s, UnitalityMode mode,
               double tol = default_tol);

}  // namespace qms
