// yosida.hpp -- resolvent regularization of generators and the induced
// semigroup diagnostics
#pragma once

#include <cstdint>
#include <vector>

#include "qms/decompose.hpp"

namespace qms {

// (1 - eps L)^{-1}. Throws SingularResolventError (with a condition
// estimate) when the solve is numerically singular.
SuperOperator resolvent(const SuperOperator& l, double eps);

// The regularized generator L_eps = L (1 - eps L)^{-1}, computed both as
// that product and as -(1/eps)(1 - (1 - eps L)^{-1}); the two routes must
// agree to 1e-10 relative (InternalInconsistencyError otherwise). Returns
// the second form.
SuperOperator yosida_generator(const SuperOperator& l, double eps);

// exp(t L).
SuperOperator semigroup_at(const SuperOperator& l, double t);

// Lower-bound estimate of the operator norm of S as a map on operators
// (sup of ||S(X)||/||X|| in operator norm), probed on the n-fold
// amplification by fixed-point iteration from an identity seed and seeded
// random starts. For completely positive maps the true value is ||S(1)||.
double map_norm_estimate(const SuperOperator& s, Index n = 2, int iters = 8,
                         std::uint64_t seed = 1);

struct YosidaTimeCheck {
  double t = 0.0;
  bool cp_pass = false;
  double min_choi_eigenvalue = 0.0;
  double unitality_residual = 0.0;
  bool unital_pass = false;
  double norm_estimate = 0.0;
  bool contractive_pass = false;
};

struct YosidaProbeCheck {
  double resolvent_residual = 0.0;  // ||(1 - eps L)^{-1} A - A||, op norm
  double resolvent_bound = 0.0;     // eps ||L A|| + 1e-10, op norm
  bool resolvent_pass = false;
  double generator_residual = 0.0;  // ||L_eps A - L A||, op norm
  double generator_bound = 0.0;     // eps ||L L A||_F + 1e-9
  bool generator_pass = false;
};

struct YosidaEpsEntry {
  double eps = 0.0;
  Operator g_eps;
  double gap_to_finest = 0.0;  // ||G_eps - G_{eps_min}||_F
  std::vector<YosidaTimeCheck> time_checks;
  std::vector<YosidaProbeCheck> probe_checks;
};

struct YosidaReport {
  std::vector<double> eps_grid;  // as given
  std::vector<double> t_grid;
  std::vector<YosidaEpsEntry> entries;      // eps descending
  std::vector<double> consecutive_gaps;     // ||G_eps_i - G_eps_{i+1}||_F
  double cauchy_gap = 0.0;                  // between the two smallest eps
  bool cauchy_pass = false;                 // cauchy_gap <= 1e-6
  Operator g_extrapolated;                  // first-order Richardson limit
  bool all_pass = false;
};

inline const std::vector<double> default_eps_grid{1e-1, 1e-2, 1e-3, 1e-4};
inline const std::vector<double> default_t_grid{0.01, 0.1, 1.0};

// Runs, per eps: CP/unitality/contractivity checks of exp(t L_eps) over the
// time grid, the resolvent and generator convergence bounds on each probe,
// and the drift extraction G_eps for the associate pair. Convergence of the
// G_eps family is asserted as a Cauchy gap between the two smallest eps.
// Check failures are recorded in the report, not thrown.
YosidaReport yosida_report(const SuperOperator& l, const AssociatePair& pair,
                           const std::vector<double>& eps_grid,
                           const std::vector<double>& t_grid,
                           const std::vector<Operator>& probes,
                           double tol = 1e-8);

}  // namespace qms
