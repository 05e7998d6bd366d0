// qms.cpp -- command line front end: validate generator spec files, extract
// the Lindblad form, dilate the completely positive part, evolve the
// semigroup, and run the resolvent-regularization diagnostics.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qms/decompose.hpp"
#include "qms/models.hpp"
#include "qms/report.hpp"
#include "qms/rng.hpp"
#include "qms/spec_io.hpp"
#include "qms/yosida.hpp"

namespace {

using namespace qms;
using nlohmann::json;

struct Options {
  std::string spec_path;
  std::string t_path;
  std::string emit_path;
  std::string format = "json";
  double tol = 1e-8;
  double rank_tol = default_tol;
  double gram_tol = default_tol;
  int samples = 200;
  std::uint64_t seed = 0;
  std::vector<double> t_grid;
  std::vector<double> eps_grid;
};

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input or
// IO error.
int write_report(const Report& rep, const Options& opt) {
  const std::string text = opt.format == "md"
                               ? markdown_dump(rep)
                               : canonical_dump(report_to_json(rep));
  if (opt.emit_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.emit_path, std::ios::binary);
    out << text;
    out.flush();
    if (!out.good()) {
      std::cerr << "qms: cannot write report to " << opt.emit_path << "\n";
      return 2;
    }
  }
  return rep.pass() ? 0 : 1;
}

Report base_report(const std::string& command, const Options& opt,
                   Index dim) {
  Report rep;
  rep.command = command;
  rep.input_file = basename_of(opt.spec_path);
  rep.input_digest = file_digest(opt.spec_path);
  rep.dim = dim;
  return rep;
}

// Optional reference operator for the associate-vector construction:
// a JSON file holding either a matrix or an object with a "matrix" field.
std::optional<Operator> load_reference_operator(const Options& opt,
                                                Index dim) {
  if (opt.t_path.empty()) return std::nullopt;
  std::ifstream in(opt.t_path, std::ios::binary);
  if (!in) throw ParseError("cannot open T file: " + opt.t_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("T file: " + std::string(e.what()));
  }
  if (j.is_object()) {
    if (!j.contains("matrix"))
      throw SchemaError("T file: object form requires field 'matrix'");
    j = j["matrix"];
  }
  Operator t = matrix_from_json(j, "T");
  if (t.rows() != dim || t.cols() != dim)
    throw SchemaError("T file: matrix must be dim x dim");
  return t;
}

std::vector<Operator> make_probes(Index d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Operator> probes;
  if (d >= 2) {
    Operator sym = Operator::Zero(d, d);
    sym(0, 1) = 1.0;
    sym(1, 0) = 1.0;
    probes.push_back(sym);
  }
  probes.push_back(random_hermitian(rng, d));
  probes.push_back(gaussian_operator(rng, d, d));
  return probes;
}

int run_validate(const Options& opt) {
  const GeneratorSpec spec = load_spec(opt.spec_path);
  const SuperOperator op = spec_to_superop(spec);
  Report rep = base_report("validate", opt, spec.dim);
  const double scale = std::max(1.0, op.matrix.norm());

  const double herm = hermiticity_preservation_defect(op);
  const bool herm_pass = herm <= opt.tol * scale;
  rep.add({"hermiticity_preservation", herm_pass, herm, opt.tol * scale,
           "the map sends Hermitian operators to Hermitian operators"});

  const double unit = unitality_residual(op, UnitalityMode::Generator);
  const double unit_tol = opt.tol * static_cast<double>(spec.dim);
  rep.add({"unitality", unit <= unit_tol, unit, unit_tol, "L(1) = 0"});

  if (herm_pass) {
    const CcpVerdict v = is_conditionally_completely_positive(
        op, opt.samples, opt.seed, opt.tol);
    const double choi_scale = std::max(1.0, choi_of(op).matrix.norm());
    rep.add({"ccp_spectral", v.spectral_pass,
             std::max(0.0, -v.spectral_min_eigenvalue), opt.tol * choi_scale,
             "Choi matrix PSD on the complement of the maximally entangled "
             "vector"});
    rep.add({"ccp_sampled", v.sampled_pass, std::max(0.0, -v.worst_value),
             opt.tol,
             "quadratic form sum <u_i, L(A_i* A_j) u_j> nonnegative on "
             "sampled tuples with sum A_k u_k = 0"});
    rep.payload["ccp"] = {{"spectral_min_eigenvalue", v.spectral_min_eigenvalue},
                          {"samples_run", v.samples_run},
                          {"worst_sampled_value", v.worst_value}};
  } else {
    rep.add({"ccp_spectral", false, herm, opt.tol,
             "not evaluated: hermiticity preservation failed"});
    rep.add({"ccp_sampled", false, herm, opt.tol,
             "not evaluated: hermiticity preservation failed"});
  }
  rep.payload["seed"] = opt.seed;
  return write_report(rep, opt);
}

int run_decompose(const Options& opt) {
  const GeneratorSpec spec = load_spec(opt.spec_path);
  const SuperOperator op = spec_to_superop(spec);
  const std::optional<Operator> t_ref = load_reference_operator(opt, spec.dim);
  Report rep = base_report("decompose", opt, spec.dim);
  const double scale = std::max(1.0, op.matrix.norm());
  const Index d = spec.dim;

  std::optional<LindbladDecomposition> dec;
  try {
    dec = lindblad_decompose(op, t_ref, opt.tol, opt.rank_tol);
  } catch (const PhiNotCPError& e) {
    rep.add({"phi_cp", false, std::max(0.0, -e.min_choi_eigenvalue), opt.tol,
             e.what()});
  } catch (const NotHermiticityPreservingError& e) {
    rep.add({"hermiticity_preservation", false,
             hermiticity_preservation_defect(op), opt.tol * scale, e.what()});
  }

  if (dec) {
    rep.add({"reconstruction",
             dec->reconstruction_residual <= opt.tol * scale,
             dec->reconstruction_residual, opt.tol * scale,
             "L = phi + (A -> G A + A G*) after re-assembly"});
    rep.add({"phi_cp", dec->min_choi_eigenvalue >= -opt.tol,
             std::max(0.0, -dec->min_choi_eigenvalue), opt.tol,
             "extracted phi is completely positive"});
    const double phi_scale = std::max(1.0, dec->phi.matrix.norm());
    const double rebuild =
        (superop_from_kraus(dec->kraus).matrix - dec->phi.matrix).norm();
    rep.add({"kraus_rebuild", rebuild <= opt.tol * phi_scale, rebuild,
             opt.tol * phi_scale,
             "Kraus set rebuilt from the Choi eigenvectors reproduces phi"});

    const bool unital = is_unital(op, UnitalityMode::Generator, opt.tol);
    if (unital) {
      const Operator one = Operator::Identity(d, d);
      const Operator phi_one = apply(dec->phi, one);
      const double ident =
          operator_norm(phi_one + dec->g + dec->g.adjoint());
      rep.add({"unitality_identity", ident <= opt.tol, ident, opt.tol,
               "phi(1) + G + G* = 0 for a unital generator"});
    }

    json weights = json::array();
    for (Index i = 0; i < dec->pair.weights.size(); ++i)
      weights.push_back(dec->pair.weights(i));
    json kraus = json::array();
    for (const Operator& v : dec->kraus.ops) kraus.push_back(matrix_to_json(v));
    rep.payload["trace_total"] = dec->pair.trace_total;
    rep.payload["weights"] = std::move(weights);
    rep.payload["g"] = matrix_to_json(dec->g);
    rep.payload["kraus"] = std::move(kraus);
    rep.payload["kraus_count"] =
        static_cast<long long>(dec->kraus.ops.size());
    rep.payload["min_choi_eigenvalue"] = dec->min_choi_eigenvalue;
    rep.payload["generator_unital"] = unital;
  }
  return write_report(rep, opt);
}

int run_dilate(const Options& opt) {
  const GeneratorSpec spec = load_spec(opt.spec_path);
  const SuperOperator op = spec_to_superop(spec);
  const std::optional<Operator> t_ref = load_reference_operator(opt, spec.dim);
  Report rep = base_report("dilate", opt, spec.dim);
  const double scale = std::max(1.0, op.matrix.norm());

  std::optional<LindbladDecomposition> dec;
  try {
    dec = lindblad_decompose(op, t_ref, opt.tol, opt.rank_tol);
  } catch (const PhiNotCPError& e) {
    rep.add({"phi_cp", false, std::max(0.0, -e.min_choi_eigenvalue), opt.tol,
             e.what()});
  } catch (const NotHermiticityPreservingError& e) {
    rep.add({"hermiticity_preservation", false,
             hermiticity_preservation_defect(op), opt.tol * scale, e.what()});
  }

  std::optional<StinespringDilation> dil;
  if (dec) {
    try {
      dil = stinespring_dilate(dec->phi, opt.gram_tol);
    } catch (const GramNotPSDError& e) {
      rep.add({"gram_psd", false, std::max(0.0, -e.min_eigenvalue),
               opt.gram_tol, e.what()});
    }
  }

  if (dec && dil) {
    const StinespringChecks sc = verify_stinespring(dec->phi, *dil);
    const double phi_scale = std::max(1.0, dec->phi.matrix.norm());
    rep.add({"stinespring_reproduction",
             sc.reproduction_residual <= opt.tol * phi_scale,
             sc.reproduction_residual, opt.tol * phi_scale,
             "V* pi(A) V = phi(A) on the matrix-unit basis"});
    rep.add({"pi_unital", sc.unitality_residual <= opt.tol,
             sc.unitality_residual, opt.tol, "pi(1) = 1"});
    rep.add({"pi_multiplicative", sc.multiplicativity_residual <= opt.tol,
             sc.multiplicativity_residual, opt.tol,
             "pi(E_ij) pi(E_pq) = delta_jp pi(E_iq)"});
    rep.add({"pi_adjoint", sc.adjoint_residual <= opt.tol,
             sc.adjoint_residual, opt.tol, "pi(A*) = pi(A)*"});
    rep.add({"pi_contractive", sc.norm_excess <= opt.tol,
             std::max(0.0, sc.norm_excess), opt.tol,
             "||pi(A)|| <= ||A|| on basis and random probes"});
    rep.add({"minimality",
             sc.minimal,
             static_cast<double>(dil->dilation_dim - sc.minimality_rank), 0.0,
             "span{pi(E_pq) V e_m} has full rank in the dilation space"});

    if (is_unital(op, UnitalityMode::Generator, opt.tol)) {
      const UnitalityIdentityReport ui =
          verify_unitality_identity(*dec, *dil, opt.tol);
      rep.add({"unitality_identity", ui.pass, ui.residual, opt.tol,
               "V*V + G + G* = 0 for a unital generator"});
    }
    rep.payload["dilation_dim"] = static_cast<long long>(dil->dilation_dim);
    rep.payload["gram_rank"] = static_cast<long long>(dil->gram_rank);
    rep.payload["minimality_rank"] =
        static_cast<long long>(sc.minimality_rank);
  }
  return write_report(rep, opt);
}

int run_evolve(const Options& opt) {
  const GeneratorSpec spec = load_spec(opt.spec_path);
  const SuperOperator op = spec_to_superop(spec);
  const std::vector<double> grid =
      opt.t_grid.empty() ? default_t_grid : opt.t_grid;
  for (double t : grid)
    if (t < 0.0) throw SchemaError("evolve: times must be nonnegative");
  Report rep = base_report("evolve", opt, spec.dim);

  double worst_choi = 0.0;
  bool cp_all = true;
  double worst_unit = 0.0;
  double worst_law = 0.0;
  double law_tol = opt.tol;
  double worst_norm = 0.0;
  json entries = json::array();
  bool exp_ok = true;
  for (double t : grid) {
    try {
      const SuperOperator u = semigroup_at(op, t);
      const SuperOperator half = semigroup_at(op, t / 2.0);
      const CpVerdict cp = is_completely_positive(u, opt.tol);
      cp_all = cp_all && cp.completely_positive;
      worst_choi = std::min(worst_choi, cp.min_choi_eigenvalue);
      const double unit = unitality_residual(u, UnitalityMode::Semigroup);
      worst_unit = std::max(worst_unit, unit);
      const double law = (compose(half, half).matrix - u.matrix).norm();
      worst_law = std::max(worst_law, law);
      law_tol = std::max(law_tol, opt.tol * u.matrix.norm());
      const double nrm = map_norm_estimate(u);
      worst_norm = std::max(worst_norm, nrm);
      entries.push_back({{"t", t},
                         {"min_choi_eigenvalue", cp.min_choi_eigenvalue},
                         {"unitality_residual", unit},
                         {"semigroup_law_residual", law},
                         {"norm_estimate", nrm}});
    } catch (const AccuracyError& e) {
      exp_ok = false;
      rep.add({"matrix_exp", false, 0.0, 0.0, e.what()});
      break;
    }
  }

  if (exp_ok) {
    rep.add({"cp_semigroup", cp_all, std::max(0.0, -worst_choi), opt.tol,
             "exp(tL) is completely positive on the time grid"});
    rep.add({"unitality_semigroup", worst_unit <= opt.tol, worst_unit,
             opt.tol, "exp(tL)(1) = 1 on the time grid"});
    rep.add({"semigroup_law", worst_law <= law_tol, worst_law, law_tol,
             "exp(tL) = exp((t/2)L)^2 on the time grid"});
    rep.add({"contractivity", worst_norm <= 1.0 + 1e-7,
             std::max(0.0, worst_norm - 1.0), 1e-7,
             "operator norm of exp(tL) as a map stays at 1"});
  }
  rep.payload["t_grid"] = grid;
  rep.payload["entries"] = std::move(entries);
  return write_report(rep, opt);
}

int run_yosida(const Options& opt) {
  const GeneratorSpec spec = load_spec(opt.spec_path);
  const SuperOperator op = spec_to_superop(spec);
  std::vector<double> eps =
      opt.eps_grid.empty() ? default_eps_grid : opt.eps_grid;
  for (double e : eps)
    if (!(e > 0.0)) throw SchemaError("yosida: eps values must be positive");
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  if (std::adjacent_find(eps.begin(), eps.end()) != eps.end())
    throw SchemaError("yosida: eps values must be distinct");
  const std::optional<Operator> t_ref = load_reference_operator(opt, spec.dim);
  Report rep = base_report("yosida", opt, spec.dim);

  const Operator t_op =
      t_ref.has_value() ? *t_ref
                        : Operator(Operator::Identity(spec.dim, spec.dim) /
                                   static_cast<double>(spec.dim));
  const AssociatePair pair = associate_vector(t_op, opt.rank_tol);
  const std::vector<Operator> probes = make_probes(spec.dim, opt.seed);
  const std::vector<double> grid =
      opt.t_grid.empty() ? default_t_grid : opt.t_grid;

  std::optional<YosidaReport> yr;
  try {
    yr = yosida_report(op, pair, eps, grid, probes, opt.tol);
  } catch (const SingularResolventError& e) {
    rep.add({"resolvent_invertible", false, e.condition_estimate, 1e14,
             e.what()});
  } catch (const InternalInconsistencyError& e) {
    rep.add({"yosida_route_consistency", false, 0.0, 0.0, e.what()});
  }

  if (yr) {
    double worst_choi = 0.0;
    bool cp_all = true;
    double worst_unit = 0.0;
    bool unit_all = true;
    double worst_norm = 0.0;
    double res_excess = 0.0;
    bool res_all = true;
    double gen_excess = 0.0;
    bool gen_all = true;
    for (const auto& entry : yr->entries) {
      for (const auto& tc : entry.time_checks) {
        cp_all = cp_all && tc.cp_pass;
        worst_choi = std::min(worst_choi, tc.min_choi_eigenvalue);
        unit_all = unit_all && tc.unital_pass;
        worst_unit = std::max(worst_unit, tc.unitality_residual);
        worst_norm = std::max(worst_norm, tc.norm_estimate);
      }
      for (const auto& pc : entry.probe_checks) {
        res_all = res_all && pc.resolvent_pass;
        res_excess = std::max(res_excess,
                              pc.resolvent_residual - pc.resolvent_bound);
        gen_all = gen_all && pc.generator_pass;
        gen_excess = std::max(gen_excess,
                              pc.generator_residual - pc.generator_bound);
      }
    }
    rep.add({"regularized_cp", cp_all, std::max(0.0, -worst_choi), opt.tol,
             "exp(t L_eps) is completely positive on the grids"});
    rep.add({"regularized_unitality", unit_all, worst_unit, opt.tol,
             "exp(t L_eps)(1) = 1 on the grids"});
    rep.add({"regularized_contractivity", worst_norm <= 1.0 + 1e-7,
             std::max(0.0, worst_norm - 1.0), 1e-7,
             "operator norm of exp(t L_eps) stays at 1"});
    rep.add({"resolvent_bound", res_all, std::max(0.0, res_excess), 0.0,
             "||(1 - eps L)^{-1} A - A|| <= eps ||L A|| on probes"});
    rep.add({"generator_bound", gen_all, std::max(0.0, gen_excess), 0.0,
             "||L_eps A - L A|| <= eps ||L L A|| on probes"});
    rep.add({"g_eps_cauchy", yr->cauchy_pass, yr->cauchy_gap, 1e-6,
             "the drift family G_eps is Cauchy at the two smallest eps"});

    json per_eps = json::array();
    for (const auto& entry : yr->entries)
      per_eps.push_back(
          {{"eps", entry.eps}, {"gap_to_finest", entry.gap_to_finest}});
    rep.payload["eps_grid"] = eps;
    rep.payload["t_grid"] = grid;
    rep.payload["entries"] = std::move(per_eps);
    rep.payload["consecutive_gaps"] = yr->consecutive_gaps;
    rep.payload["cauchy_gap"] = yr->cauchy_gap;
  }
  return write_report(rep, opt);
}

Operator ramp_diagonal(Index d) {
  Operator v = Operator::Zero(d, d);
  for (Index k = 0; k < d; ++k)
    v(k, k) = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(d - 1);
  return v;
}

int run_example(const std::string& name, const Options& opt, Index dim,
                double delta, Index steps) {
  GeneratorSpec spec;
  spec.dim = dim;
  spec.form = GeneratorSpec::Form::Example;
  spec.name = name;
  Rng rng(opt.seed);

  Operator v_diag;  // dephasing only
  Operator g0;      // conjugation only
  if (name == "dephasing") {
    if (dim < 2) throw SchemaError("example: dephasing requires dim >= 2");
    if (dim == 2) {
      v_diag = -ramp_diagonal(2);  // diag(1, -1)
      spec.params["V"] = "pauli_z";
    } else {
      v_diag = ramp_diagonal(dim);
      spec.params["V"] = matrix_to_json(v_diag);
    }
  } else if (name == "conjugation") {
    g0 = Complex(0.0, 1.0) * random_hermitian(rng, dim);
    spec.params["G0"] = matrix_to_json(g0);
  } else if (name == "shift_reset") {
    spec.params["delta"] = delta;
    spec.params["steps"] = static_cast<long long>(steps);
  } else if (name != "heat_flow") {
    throw SchemaError("example: unknown name '" + name + "'");
  }

  {
    std::ofstream out(opt.emit_path, std::ios::binary);
    out << canonical_dump(spec_to_json(spec));
    out.flush();
    if (!out.good()) {
      std::cerr << "qms: cannot write spec to " << opt.emit_path << "\n";
      return 2;
    }
  }

  Report rep;
  rep.command = "example";
  rep.input_file = basename_of(opt.emit_path);
  rep.input_digest = file_digest(opt.emit_path);
  rep.dim = dim;
  rep.payload["name"] = name;
  rep.payload["seed"] = opt.seed;

  if (name == "dephasing") {
    const SuperOperator l = dephasing_generator(v_diag);
    const SuperOperator gk =
        from_lindblad_terms(dephasing_lindblad_terms(v_diag));
    const double form_gap = (l.matrix - gk.matrix).norm();
    const double form_tol = 1e-12 * std::max(1.0, l.matrix.norm());
    rep.add({"form_agreement", form_gap <= form_tol, form_gap, form_tol,
             "-(1/2)(ad V)^2 equals the G = -V^2/2, Kraus {V} presentation"});

    Operator a = Operator::Ones(dim, dim);
    Operator expected(dim, dim);
    const double t_cf = 1.0;
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) {
        const double gap = (v_diag(i, i) - v_diag(j, j)).real();
        expected(i, j) = std::exp(-t_cf * gap * gap / 2.0) * a(i, j);
      }
    const double cf =
        (apply(semigroup_at(l, t_cf), a) - expected).norm();
    rep.add({"closed_form_evolution", cf <= 1e-10, cf, 1e-10,
             "exp(tL) damps E_jk by exp(-t (v_j - v_k)^2 / 2)"});

    const double t_q = 0.5;
    const Operator probe = random_hermitian(rng, dim);
    const double q = (apply(semigroup_at(l, t_q), probe) -
                      dephasing_quadrature_oracle(v_diag, t_q, probe))
                         .norm();
    rep.add({"quadrature_oracle", q <= 1e-8, q, 1e-8,
             "exp(tL) matches E[e^{ixV} A e^{-ixV}], x ~ N(0,t)"});
  } else if (name == "heat_flow") {
    if (dim < 2) throw SchemaError("example: heat_flow requires dim >= 2");
    const SuperOperator l = heat_flow_generator(dim);
    const SuperOperator expanded = heat_flow_generator_expanded(dim);
    const double gap = (l.matrix - expanded.matrix).norm();
    const double gap_tol = 1e-12 * std::max(1.0, l.matrix.norm());
    rep.add({"expansion_identity", gap <= gap_tol, gap, gap_tol,
             "D_P^2 + D_Q^2 = 2(PAP + QAQ) - {P^2 + Q^2, A}"});

    const OscillatorTruncation osc = make_oscillator(dim);
    const double exact =
        heat_flow_apply(osc, Operator::Identity(dim, dim)).norm();
    rep.add({"unital_exact", exact == 0.0, exact, 0.0,
             "L(1) = 0 exactly through the commutator route"});

    const double unit = unitality_residual(l, UnitalityMode::Generator);
    const double unit_tol = 1e-12 * std::max(1.0, l.matrix.norm());
    rep.add({"unitality_matrix_route", unit <= unit_tol, unit, unit_tol,
             "L(1) = 0 through the assembled superoperator"});
  } else if (name == "conjugation") {
    const SuperOperator l = conjugation_generator(g0);
    const double unit = unitality_residual(l, UnitalityMode::Generator);
    rep.add({"unitality", unit <= opt.tol, unit, opt.tol,
             "G0 + G0* = 0 makes the generator unital"});

    const double t_cf = 0.7;
    const Operator e_t = matrix_exp(t_cf * g0);
    const SuperOperator direct =
        compose(left_mult(e_t), right_mult(e_t.adjoint().eval()));
    const double cf = (semigroup_at(l, t_cf).matrix - direct.matrix).norm();
    const double cf_tol = 1e-10 * std::max(1.0, direct.matrix.norm());
    rep.add({"conjugation_form", cf <= cf_tol, cf, cf_tol,
             "exp(tL) = (A -> e^{tG0} A e^{tG0*})"});

    const CcpVerdict v = is_conditionally_completely_positive(
        l, opt.samples, opt.seed, opt.tol);
    rep.add({"ccp", v.conditionally_completely_positive,
             std::max(0.0, -v.spectral_min_eigenvalue), opt.tol,
             "conjugation generators are conditionally completely positive"});
  } else if (name == "shift_reset") {
    if (dim < 2 || steps < 0 || steps > dim)
      throw SchemaError("example: shift_reset requires dim >= 2 and "
                        "0 <= steps <= dim");
    const ShiftResetModel model = make_shift_reset(dim, delta);

    double proj = 0.0;
    Operator s_m = Operator::Identity(dim, dim);
    for (Index m = 0; m <= dim; ++m) {
      if (m > 0) s_m = model.s * s_m;
      for (Index n = 0; m + n <= dim; ++n) {
        const Operator lhs = shift_projector(model, m + n);
        const Operator rhs =
            shift_projector(model, m) +
            s_m * shift_projector(model, n) * s_m.adjoint();
        proj = std::max(proj, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
    rep.add({"projector_identity", proj == 0.0, proj, 0.0,
             "E_{m+n} = E_m + S^m E_n S*^m exactly, all m + n <= dim"});

    const Operator phi_one =
        shift_reset_apply(model, steps, Operator::Identity(dim, dim));
    const double unit =
        (phi_one - Operator::Identity(dim, dim)).cwiseAbs().maxCoeff();
    rep.add({"unital_exact", unit <= 1e-13, unit, 1e-13,
             "phi_n(1) = 1 to machine precision"});

    std::vector<std::pair<Index, Index>> mn = {{1, 1}, {1, 2}, {2, 2},
                                               {3, 5}, {4, 4}, {1, 7}};
    mn.erase(std::remove_if(mn.begin(), mn.end(),
                            [&](const auto& p) {
                              return p.first + p.second > dim;
                            }),
             mn.end());
    const ShiftResetCheck chk = shift_reset_semigroup_check(model, mn);
    double worst_bound = 0.0;
    for (const auto& entry : chk.entries)
      worst_bound = std::max(worst_bound, entry.bound);
    rep.add({"semigroup", chk.pass, chk.max_residual, worst_bound,
             "phi_m phi_n = phi_{m+n} up to geometric truncation terms"});

    const Index support = std::max<Index>(1, dim - 16);
    Operator probe = Operator::Zero(dim, dim);
    probe.topLeftCorner(support, support) = random_hermitian(rng, support);
    const double before = shift_reset_state(model, probe);
    const double after =
        shift_reset_state(model, shift_reset_apply(model, steps, probe));
    const double drift = std::abs(after - before);
    rep.add({"omega_invariance", drift <= 1e-9, drift, 1e-9,
             "<f, phi_n(A) f> = <f, A f> on probes supported away from the "
             "truncation edge"});
  }

  const std::string text = opt.format == "md"
                               ? markdown_dump(rep)
                               : canonical_dump(report_to_json(rep));
  std::cout << text;
  return rep.pass() ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& opt, bool with_spec) {
  if (with_spec)
    cmd->add_option("spec", opt.spec_path, "generator spec file (JSON)")
        ->required();
  cmd->add_option("--tol", opt.tol, "main check tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"json", "md"}));
  cmd->add_option("--emit", opt.emit_path, "write the report to this path");
  cmd->add_option("--seed", opt.seed, "seed for sampled checks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional toolkit for quantum Markov semigroup "
               "generators"};
  app.require_subcommand(1);

  Options opt;
  std::string example_name;
  Index example_dim = 0;
  double example_delta = 0.25;
  Index example_steps = 1;

  CLI::App* validate = app.add_subcommand(
      "validate", "hermiticity preservation, unitality, conditional "
                  "complete positivity");
  add_common(validate, opt, true);
  validate->add_option("--samples", opt.samples,
                       "sampled tuples for the conditional positivity test")
      ->check(CLI::NonNegativeNumber);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "extract G, phi, and a Kraus set from a generator");
  add_common(decompose, opt, true);
  decompose->add_option("--T", opt.t_path,
                        "reference PSD operator for the associate vector");
  decompose->add_option("--rank-tol", opt.rank_tol,
                        "relative eigenvalue cutoff")
      ->check(CLI::PositiveNumber);

  CLI::App* dilate = app.add_subcommand(
      "dilate", "Stinespring dilation of the completely positive part");
  add_common(dilate, opt, true);
  dilate->add_option("--T", opt.t_path,
                     "reference PSD operator for the associate vector");
  dilate->add_option("--rank-tol", opt.rank_tol,
                     "relative eigenvalue cutoff")
      ->check(CLI::PositiveNumber);
  dilate->add_option("--gram-tol", opt.gram_tol,
                     "relative Gram eigenvalue cutoff")
      ->check(CLI::PositiveNumber);

  CLI::App* evolve = app.add_subcommand(
      "evolve", "semigroup checks of exp(tL) on a time grid");
  add_common(evolve, opt, true);
  evolve->add_option("--t", opt.t_grid, "time grid")->delimiter(',');

  CLI::App* yosida = app.add_subcommand(
      "yosida", "resolvent-regularized generators and convergence checks");
  add_common(yosida, opt, true);
  yosida->add_option("--eps", opt.eps_grid, "regularization grid")
      ->delimiter(',');
  yosida->add_option("--t", opt.t_grid, "time grid")->delimiter(',');
  yosida->add_option("--T", opt.t_path,
                     "reference PSD operator for the associate vector");
  yosida->add_option("--rank-tol", opt.rank_tol,
                     "relative eigenvalue cutoff")
      ->check(CLI::PositiveNumber);

  CLI::App* example = app.add_subcommand(
      "example", "emit a bundled generator spec plus verification report");
  example->add_option("name", example_name, "one of dephasing, heat_flow, "
                                            "conjugation, shift_reset")
      ->required()
      ->check(CLI::IsMember(
          {"dephasing", "heat_flow", "conjugation", "shift_reset"}));
  add_common(example, opt, false);
  example->get_option("--emit")
      ->required()
      ->description("write the generator spec to this path");
  example->description("emit a bundled generator spec plus verification "
                       "report; --emit names the spec file, the report goes "
                       "to stdout");
  example->add_option("--dim", example_dim, "Hilbert space dimension");
  example->add_option("--delta", example_delta,
                      "reset-state decay rate (shift_reset)")
      ->check(CLI::PositiveNumber);
  example->add_option("--steps", example_steps, "shift steps (shift_reset)")
      ->check(CLI::NonNegativeNumber);
  example->add_option("--samples", opt.samples,
                      "sampled tuples for the conditional positivity test")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return run_validate(opt);
    if (app.got_subcommand(decompose)) return run_decompose(opt);
    if (app.got_subcommand(dilate)) return run_dilate(opt);
    if (app.got_subcommand(evolve)) return run_evolve(opt);
    if (app.got_subcommand(yosida)) return run_yosida(opt);
    if (app.got_subcommand(example)) {
      if (example_dim == 0) {
        if (example_name == "heat_flow") example_dim = 8;
        else if (example_name == "shift_reset") example_dim = 64;
        else example_dim = 2;
      }
      return run_example(example_name, opt, example_dim, example_delta,
                         example_steps);
    }
  } catch (const ParseError& e) {
    std::cerr << "qms: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "qms: " << e.what() << "\n";
    return 2;
  } catch (const NotPSDError& e) {
    std::cerr << "qms: " << e.what() << "\n";
    return 2;
  } catch (const ZeroOperatorError& e) {
    std::cerr << "qms: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "qms: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "qms: unexpected failure: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
