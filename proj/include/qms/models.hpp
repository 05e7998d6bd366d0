// models.hpp -- concrete generators and semigroups used to exercise the
// toolkit: truncated-oscillator heat flow, Brownian dephasing, conjugation
// semigroups, and the discrete shift-with-reset family
#pragma once

#include "qms/superop.hpp"

namespace qms {

// Finite truncation of the harmonic oscillator: lowering operator with
// a e_k = sqrt(k) e_{k-1}, and Q = (a + a*)/sqrt(2), P = (a - a*)/(i sqrt(2)).
// The commutation [a, a*] = 1 holds exactly on indices below d - 1.
struct OscillatorTruncation {
  Index dim = 0;
  Operator a;
  Operator q;
  Operator p;
};

OscillatorTruncation make_oscillator(Index d);

// Derivation superoperator D_X : A |-> i(XA - AX).
SuperOperator derivation(const Operator& x);

// Heat-flow generator L = D_P^2 + D_Q^2 on the truncated oscillator.
// The factory asserts the expanded form below agrees to 1e-12 before
// returning (InternalInconsistencyError otherwise).
SuperOperator heat_flow_generator(Index d);

// The same generator written as 2(PAP + QAQ) - (P^2+Q^2)A - A(P^2+Q^2).
SuperOperator heat_flow_generator_expanded(Index d);

// GKSL presentation: G = -(P^2 + Q^2), Kraus {sqrt(2) P, sqrt(2) Q}.
LindbladTerms heat_flow_lindblad_terms(Index d);

// Structural evaluation through nested commutators; on A = 1 this is
// exactly zero in floating point.
Operator heat_flow_apply(const OscillatorTruncation& osc, const Operator& a);

// Brownian dephasing generator L = -(1/2)(ad V)^2 for Hermitian V, with
// ad V : A |-> VA - AV. The factory asserts agreement with the GKSL
// presentation (G = -V^2/2, Kraus {V}) to 1e-12.
SuperOperator dephasing_generator(const Operator& v);

LindbladTerms dephasing_lindblad_terms(const Operator& v);

// Independent oracle for the dephasing semigroup at time t:
// E[e^{ixV} A e^{-ixV}] with x ~ N(0, t), computed by Gauss-Hermite
// quadrature. Agrees with exp(tL) to 1e-8 for ||V|| sqrt(t) <= 3 and
// nodes >= 40.
Operator dephasing_quadrature_oracle(const Operator& v, double t,
                                     const Operator& a, int nodes = 64);

// Conjugation semigroup generator L(A) = G0 A + A G0* (no CP part).
SuperOperator conjugation_generator(const Operator& g0);

// Discrete shift with reset on C^d: S e_k = e_{k+1} (annihilating the top
// basis vector), reset state f with f_k proportional to e^{-k delta}, and
// the maps phi_n(A) = <f, A f> E_n + S^n A S*^n where E_n projects onto the
// first n coordinates. phi_n is unital and completely positive; the family
// is a semigroup up to geometrically small truncation terms.
struct ShiftResetModel {
  Index dim = 0;
  double delta = 0.0;
  Operator s;
  Vector f;
};

ShiftResetModel make_shift_reset(Index d, double delta = 0.25);

// E_n; throws IndexError unless 0 <= n <= d.
Operator shift_projector(const ShiftResetModel& model, Index n);

double shift_reset_state(const ShiftResetModel& model, const Operator& a);

// phi_n applied directly to an operator (no superoperator materialized, so
// this works above the dense-dimension cap).
Operator shift_reset_apply(const ShiftResetModel& model, Index n,
                           const Operator& a);

// Dense superoperator form of phi_n; subject to the dimension cap.
SuperOperator shift_reset_map(const ShiftResetModel& model, Index n);

struct ShiftResetCheckEntry {
  Index m = 0;
  Index n = 0;
  double residual = 0.0;  // max over probes of ||phi_m(phi_n A) - phi_{m+n} A||
  double bound = 0.0;
  bool pass = false;
};

struct ShiftResetCheck {
  std::vector<ShiftResetCheckEntry> entries;
  double max_residual = 0.0;
  bool pass = false;
};

// Checks the semigroup property phi_m . phi_n = phi_{m+n} on a probe basis
// of matrix units supported on indices < d - (m + n); the residual bound is
// tol_factor * exp(-2 (d - m - n) delta).
ShiftResetCheck shift_reset_semigroup_check(
    const ShiftResetModel& model,
    const std::vector<std::pair<Index, Index>>& mn, double tol_factor = 4.0);

}  // namespace qms
