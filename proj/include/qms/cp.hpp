// cp.hpp -- complete and conditional complete positivity tests, Kraus forms
#pragma once

#include <cstdint>
#include <vector>

#include "qms/superop.hpp"

namespace qms {

struct KrausSet {
  Index dim = 0;
  std::vector<Operator> ops;  // the map is A |-> sum_j ops[j]* A ops[j]
};

struct CpVerdict {
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  double choi_hermiticity_defect = 0.0;
};

// Choi-based test: true iff the smallest eigenvalue of the (symmetrized)
// Choi matrix is >= -tol * max(1, ||C||_F). Throws
// NotHermiticityPreservingError when the Choi matrix is not Hermitian
// within the same tolerance.
CpVerdict is_completely_positive(const SuperOperator& s,
                                 double tol = default_tol);

// Eigendecompose the Choi matrix, keep eigenvalues > rank_tol * ||C||,
// reshape each sqrt(lambda)-scaled eigenvector and orient it so the rebuilt
// map is A |-> sum_j V_j* A V_j. Ordered by descending eigenvalue.
// Throws NotPSDError if an eigenvalue is below -rank_tol * max(1, ||C||).
KrausSet kraus_from_choi(const ChoiMatrix& c, double rank_tol = default_tol);

ChoiMatrix choi_from_kraus(const KrausSet& k);
SuperOperator superop_from_kraus(const KrausSet& k);

// One evaluated tuple of the conditional-positivity quadratic form
// sum_ij <u_i, L(A_i* A_j) u_j> over tuples with sum_k A_k u_k = 0.
struct CcpWitness {
  std::vector<Operator> a;
  std::vector<Vector> u;
  double constraint_residual = 0.0;
  double value = 0.0;  // real part; the form is real for admissible maps
  double scale = 1.0;  // ||L||_F * (sum ||A_k||_F ||u_k||)^2, floors at 1
};

// Evaluates the quadratic form on an explicit tuple.
// Throws ConstraintViolatedError if ||sum A_k u_k|| exceeds
// 1e-10 * sum ||A_k||_F ||u_k||, and NonRealFormError if the imaginary part
// exceeds 1e-10 * scale.
CcpWitness ccp_quadratic_form(const SuperOperator& l,
                              const std::vector<Operator>& a,
                              const std::vector<Vector>& u);

struct CcpVerdict {
  bool conditionally_completely_positive = false;
  bool spectral_pass = false;
  // Smallest eigenvalue of P C P with P the projector onto the orthogonal
  // complement of the maximally entangled vector.
  double spectral_min_eigenvalue = 0.0;
  bool sampled_pass = true;
  int samples_run = 0;
  double worst_value = 0.0;  // most negative normalized form value seen
  CcpWitness worst;          // the tuple achieving it
};

// Two-stage test. Stage 1 projects the Choi matrix onto the orthogonal
// complement of the maximally entangled vector and checks positivity there.
// Stage 2 draws `samples` random constrained tuples (completed so the sum
// constraint holds exactly) and evaluates the quadratic form on each; it
// also runs with 200 tuples whenever stage 1 lands within 10*tol of its
// boundary. The verdict requires both stages to pass.
// Throws NotHermiticityPreservingError if L fails that precondition.
CcpVerdict is_conditionally_completely_positive(const SuperOperator& l,
                                                int samples = 200,
                                                std::uint64_t seed = 0,
                                                double tol = default_tol);

}  // namespace qms
