// decompose.hpp -- splitting a semigroup generator into a completely
// positive part plus left/right multiplication, and dilating that part
#pragma once

#include <optional>

#include "qms/cp.hpp"

namespace qms {

// A strictly positive finite-rank operator T together with its associate
// vector h. With T = sum_s t_s |k_s><k_s| (weights summing to one and
// ||k_s||^2 equal for all s), h = sum_s k_s / ||k_s||^2 satisfies
// <h, k_s> = 1 for every s.
struct AssociatePair {
  Operator t;
  Vector h;
  std::vector<Vector> k;       // descending eigenvalue order
  Eigen::VectorXd weights;     // t_s, sums to 1
  double trace_total = 0.0;    // sum of kept eigenvalues of the input
};

// Eigendecompose a PSD operator, keep eigenvalues > rank_tol * ||T||, and
// build the associate pair. Throws ZeroOperatorError for T = 0, NotPSDError
// if T has a negative eigenvalue beyond tolerance.
AssociatePair associate_vector(const Operator& t,
                               double rank_tol = default_tol);

// The non-CP part of a generator relative to an associate pair:
// G x = L(|x><Th|) h - (1/2) <h, L(T) h> x, assembled column by column.
Operator extract_g(const SuperOperator& l, const AssociatePair& pair);

// phi = L - left_mult(G) - right_mult(G*).
SuperOperator extract_phi(const SuperOperator& l, const Operator& g);

struct LindbladDecomposition {
  SuperOperator source;
  AssociatePair pair;
  Operator g;
  SuperOperator phi;
  KrausSet kraus;
  double reconstruction_residual = 0.0;  // ||L - (phi + G-part)||_F
  double min_choi_eigenvalue = 0.0;      // of phi
};

// Full pipeline: associate pair for T (default T = I/d), extract G and phi,
// certify phi completely positive, and produce a Kraus set for it.
// Throws NotHermiticityPreservingError up front and PhiNotCPError (carrying
// the offending Choi eigenvalue) if the certificate fails, which signals
// that L is not a valid generator or tol is too tight.
LindbladDecomposition lindblad_decompose(
    const SuperOperator& l, std::optional<Operator> t = std::nullopt,
    double tol = 1e-8, double rank_tol = default_tol);

// Minimal dilation of a completely positive map phi on M_d: a representation
// pi of M_d on C^k and V: C^d -> C^k with <u, phi(A) w> = <Vu, pi(A) Vw>.
// Built from the Gram matrix of the inner product
// (E_pq (x) e_r, E_p'q' (x) e_r') = <e_r, phi(E_qp E_p'q') e_r'> on the
// d^3-dimensional coordinate space, basis ordered (p, q, r) lexicographic;
// eigenvalues > gram_tol * ||Gram|| are kept, k = number kept.
struct StinespringDilation {
  Index dim = 0;           // d
  Index dilation_dim = 0;  // k
  Operator v;              // k x d
  Operator pi;             // k^2 x d^2, columns are vec(pi(E_ij))
  Index gram_rank = 0;     // rank of the kept Gram block, equals k
};

// Throws GramNotPSDError (carrying the offending eigenvalue) when phi is
// not completely positive within gram_tol.
StinespringDilation stinespring_dilate(const SuperOperator& phi,
                                       double gram_tol = default_tol);

Operator apply_pi(const StinespringDilation& dil, const Operator& a);

// Residuals of the dilation contract, maxima over the matrix-unit basis
// (plus a few fixed random probes for the norm bound):
// reproduction ||V* pi(A) V - phi(A)||, representation properties of pi,
// and minimality, i.e. rank of span{pi(E_pq) V e_m} equal to the dilation
// dimension.
struct StinespringChecks {
  double reproduction_residual = 0.0;
  double unitality_residual = 0.0;
  double multiplicativity_residual = 0.0;
  double adjoint_residual = 0.0;
  double norm_excess = 0.0;  // max over probes of ||pi(A)|| - ||A||
  Index minimality_rank = 0;
  bool minimal = false;
};

StinespringChecks verify_stinespring(const SuperOperator& phi,
                                     const StinespringDilation& dil);

struct UnitalityIdentityReport {
  double residual = 0.0;  // operator norm of V*V + G + G*
  bool pass = false;
  Operator vstar_v;
};

// For a unital generator, phi(1) = V*V = -(G + G*); checks
// ||V*V + G + G*|| <= tol. Throws NotUnitalError when the decomposed
// generator is not unital.
UnitalityIdentityReport verify_unitality_identity(
    const LindbladDecomposition& dec, const StinespringDilation& dil,
    double tol = 1e-8);

}  // namespace qms
