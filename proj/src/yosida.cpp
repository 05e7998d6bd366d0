// yosida.cpp
#include "qms/yosida.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qms/rng.hpp"

namespace qms {

SuperOperator resolvent(const SuperOperator& l, double eps) {
  const Index n = l.matrix.rows();
  const Operator m = Operator::Identity(n, n) - eps * l.matrix;
  Eigen::PartialPivLU<Operator> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "resolvent: 1 - eps L is numerically singular at eps = " << eps
        << " (condition estimate " << 1.0 / std::max(rcond, 1e-300) << ")";
    throw SingularResolventError(msg.str(), 1.0 / std::max(rcond, 1e-300));
  }
  return SuperOperator(l.dim, lu.solve(Operator::Identity(n, n)));
}

SuperOperator yosida_generator(const SuperOperator& l, double eps) {
  if (eps <= 0.0) throw Error("yosida_generator: eps must be positive");
  const SuperOperator r = resolvent(l, eps);
  const Operator product = l.matrix * r.matrix;
  const Operator difference =
      -(Operator::Identity(r.matrix.rows(), r.matrix.cols()) - r.matrix) /
      eps;
  const double gap = (product - difference).norm();
  // Rounding in 1 - R is amplified by 1/eps, so the agreement threshold
  // carries that noise floor on top of the relative term.
  const double floor = 2e-15 * std::max(1.0, r.matrix.norm()) / eps;
  if (gap > 1e-10 * std::max(1.0, product.norm()) + floor) {
    std::ostringstream msg;
    msg << "yosida_generator: product and resolvent-difference routes "
           "disagree by "
        << gap;
    throw InternalInconsistencyError(msg.str());
  }
  return SuperOperator(l.dim, difference);
}

SuperOperator semigroup_at(const SuperOperator& l, double t) {
  return SuperOperator(l.dim, matrix_exp(t * l.matrix));
}

double map_norm_estimate(const SuperOperator& s, Index n, int iters,
                         std::uint64_t seed) {
  const SuperOperator big = n > 1 ? amplify(s, n) : s;
  const Index nd = big.dim;
  Rng rng(seed);

  std::vector<Operator> seeds;
  seeds.push_back(Operator::Identity(nd, nd));
  seeds.push_back(random_hermitian(rng, nd));
  seeds.push_back(gaussian_operator(rng, nd, nd));

  double best = 0.0;
  for (Operator x : seeds) {
    double nx = operator_norm(x);
    if (nx == 0.0) continue;
    for (int i = 0; i < iters; ++i) {
      const Operator y = apply(big, x);
      const double ny = operator_norm(y);
      best = std::max(best, ny / nx);
      if (ny == 0.0) break;
      x = y / ny;
      nx = 1.0;
    }
  }
  return best;
}

YosidaReport yosida_report(const SuperOperator& l, const AssociatePair& pair,
                           const std::vector<double>& eps_grid,
                           const std::vector<double>& t_grid,
                           const std::vector<Operator>& probes, double tol) {
  if (eps_grid.empty())
    throw DimensionError("yosida_report: eps grid is empty");
  YosidaReport rep;
  rep.eps_grid = eps_grid;
  rep.t_grid = t_grid;

  std::vector<double> eps_sorted = eps_grid;
  std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());

  bool all = true;
  for (double eps : eps_sorted) {
    YosidaEpsEntry entry;
    entry.eps = eps;
    const SuperOperator r = resolvent(l, eps);
    const SuperOperator l_eps = yosida_generator(l, eps);
    entry.g_eps = extract_g(l_eps, pair);

    for (double t : t_grid) {
      YosidaTimeCheck tc;
      tc.t = t;
      const SuperOperator u = semigroup_at(l_eps, t);
      const CpVerdict cp = is_completely_positive(u, tol);
      tc.cp_pass = cp.completely_positive;
      tc.min_choi_eigenvalue = cp.min_choi_eigenvalue;
      tc.unitality_residual = unitality_residual(u, UnitalityMode::Semigroup);
      tc.unital_pass = tc.unitality_residual <= tol;
      tc.norm_estimate = map_norm_estimate(u);
      tc.contractive_pass = tc.norm_estimate <= 1.0 + 1e-7;
      all = all && tc.cp_pass && tc.unital_pass && tc.contractive_pass;
      entry.time_checks.push_back(tc);
    }

    for (const Operator& a : probes) {
      YosidaProbeCheck pc;
      const Operator la = apply(l, a);
      pc.resolvent_residual = operator_norm(apply(r, a) - a);
      pc.resolvent_bound = eps * operator_norm(la) + 1e-10;
      pc.resolvent_pass = pc.resolvent_residual <= pc.resolvent_bound;
      pc.generator_residual = operator_norm(apply(l_eps, a) - la);
      pc.generator_bound = eps * apply(l, la).norm() + 1e-9;
      pc.generator_pass = pc.generator_residual <= pc.generator_bound;
      all = all && pc.resolvent_pass && pc.generator_pass;
      entry.probe_checks.push_back(pc);
    }
    rep.entries.push_back(std::move(entry));
  }

  const Operator& g_finest = rep.entries.back().g_eps;
  for (auto& entry : rep.entries)
    entry.gap_to_finest = (entry.g_eps - g_finest).norm();
  for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i)
    rep.consecutive_gaps.push_back(
        (rep.entries[i].g_eps - rep.entries[i + 1].g_eps).norm());

  if (rep.entries.size() >= 2) {
    const auto& a = rep.entries[rep.entries.size() - 2];  // larger eps
    const auto& b = rep.entries.back();                   // smallest eps
    rep.cauchy_gap = (a.g_eps - b.g_eps).norm();
    rep.cauchy_pass = rep.cauchy_gap <= 1e-6;
    const Operator slope = (a.g_eps - b.g_eps) / (a.eps - b.eps);
    rep.g_extrapolated = b.g_eps - b.eps * slope;
    all = all && rep.cauchy_pass;
  } else {
    rep.cauchy_gap = 0.0;
    rep.cauchy_pass = true;
    rep.g_extrapolated = rep.entries.back().g_eps;
  }
  rep.all_pass = all;
  return rep;
}

}  // namespace qms
