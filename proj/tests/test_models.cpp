#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "qms/cp.hpp"
#include "qms/models.hpp"
#include "qms/rng.hpp"
#include "qms/yosida.hpp"
#include "test_support.hpp"

using namespace qms;
using namespace qms::testing;

TEST_CASE("oscillator truncation structure") {
  const OscillatorTruncation osc = make_oscillator(4);
  CHECK(osc.a(0, 1) == Complex(1, 0));
  CHECK(std::abs(osc.a(1, 2) - Complex(std::sqrt(2.0), 0)) == 0.0);
  CHECK(std::abs(osc.a(2, 3) - Complex(std::sqrt(3.0), 0)) == 0.0);
  CHECK(osc.a(1, 0) == Complex(0, 0));

  CHECK(hermiticity_defect(osc.p) == 0.0);
  CHECK(hermiticity_defect(osc.q) == 0.0);

  // [a, a*] = 1 away from the truncation edge, -(d-1) at the corner
  const Operator comm =
      (osc.a * osc.a.adjoint() - osc.a.adjoint() * osc.a).eval();
  for (Index k = 0; k + 1 < 4; ++k)
    CHECK(std::abs(comm(k, k) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(comm(3, 3) - Complex(-3, 0)) <= 1e-14);

  // P^2 + Q^2 = a a* + a* a = diag(1, 3, ..., 2d-3, d-1)
  const Operator number = (osc.p * osc.p + osc.q * osc.q).eval();
  for (Index k = 0; k < 4; ++k) {
    const double expected = (k + 1 < 4) ? 2.0 * k + 1.0 : 3.0;
    CHECK(std::abs(number(k, k) - Complex(expected, 0)) <= 1e-14);
  }
  CHECK((number - number.diagonal().asDiagonal().toDenseMatrix()).norm() <=
        1e-14);
}

TEST_CASE("heat flow expansion identity") {
  for (Index d : {Index(2), Index(4), Index(8), Index(16)}) {
    const SuperOperator l = heat_flow_generator(d);
    const SuperOperator expanded = heat_flow_generator_expanded(d);
    CHECK((l.matrix - expanded.matrix).norm() <=
          1e-12 * std::max(1.0, l.matrix.norm()));
  }
}

TEST_CASE("heat flow annihilates the identity exactly") {
  for (Index d : {Index(2), Index(8), Index(16)}) {
    const OscillatorTruncation osc = make_oscillator(d);
    CHECK(heat_flow_apply(osc, Operator::Identity(d, d)).norm() == 0.0);
  }
  // the assembled matrix only gets there to rounding
  const SuperOperator l = heat_flow_generator(8);
  CHECK(unitality_residual(l, UnitalityMode::Generator) <=
        1e-12 * std::max(1.0, l.matrix.norm()));
}

TEST_CASE("heat flow structural route matches the matrix route") {
  Rng rng(113);
  const Index d = 8;
  const OscillatorTruncation osc = make_oscillator(d);
  const SuperOperator l = heat_flow_generator(d);
  const Operator a = random_hermitian(rng, d);
  CHECK((heat_flow_apply(osc, a) - apply(l, a)).norm() <=
        1e-11 * std::max(1.0, l.matrix.norm() * a.norm()));
}

TEST_CASE("heat flow GKSL presentation") {
  const Index d = 6;
  const SuperOperator l = heat_flow_generator(d);
  const SuperOperator gk = from_lindblad_terms(heat_flow_lindblad_terms(d));
  CHECK((l.matrix - gk.matrix).norm() <=
        1e-12 * std::max(1.0, l.matrix.norm()));
}

TEST_CASE("dephasing closed form on the qubit") {
  const SuperOperator l = dephasing_generator(pauli_z());
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    const Operator out = apply(semigroup_at(l, t), pauli_x());
    CHECK((out - std::exp(-2.0 * t) * pauli_x()).norm() <= 1e-10);
  }
}

TEST_CASE("dephasing generator equals its GKSL presentation") {
  Rng rng(127);
  const Operator v = random_hermitian(rng, 3);
  const SuperOperator l = dephasing_generator(v);
  const SuperOperator gk = from_lindblad_terms(dephasing_lindblad_terms(v));
  CHECK((l.matrix - gk.matrix).norm() <=
        1e-12 * std::max(1.0, l.matrix.norm()));
}

TEST_CASE("dephasing of a commuting observable is frozen") {
  const SuperOperator l = dephasing_generator(pauli_z());
  CHECK(apply(l, pauli_z()).norm() <= 1e-14);
  CHECK((apply(semigroup_at(l, 1.3), pauli_z()) - pauli_z()).norm() <=
        1e-12);
}

TEST_CASE("dephasing with V = 1 is the zero generator") {
  CHECK(dephasing_generator(Operator::Identity(2, 2)).matrix.norm() == 0.0);
}

TEST_CASE("dephasing requires a Hermitian direction") {
  CHECK_THROWS_AS(dephasing_generator(matrix_unit(2, 0, 1)),
                  NotHermitianError);
}

TEST_CASE("iterated commutators satisfy the binomial expansion") {
  Rng rng(131);
  const Operator v = random_hermitian(rng, 3);
  const Operator a0 = gaussian_operator(rng, 3, 3);
  const double scale = std::max(1.0, std::pow(v.norm(), 4) * a0.norm());

  std::vector<Operator> powers = {Operator::Identity(3, 3)};
  for (int k = 1; k <= 4; ++k) powers.push_back((powers.back() * v).eval());

  Operator ad = a0;
  for (int n = 1; n <= 4; ++n) {
    ad = (v * ad - ad * v).eval();
    Operator sum = Operator::Zero(3, 3);
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      sum += sign * binom * powers[n - k] * a0 * powers[k];
      binom = binom * (n - k) / (k + 1);
    }
    CHECK((ad - sum).norm() <= 1e-11 * scale);
  }
}

TEST_CASE("quadrature oracle agrees with the dephasing semigroup") {
  const SuperOperator lz = dephasing_generator(pauli_z());
  Rng rng(137);
  const Operator a2 = gaussian_operator(rng, 2, 2);
  CHECK((dephasing_quadrature_oracle(pauli_z(), 1.0, a2) -
         apply(semigroup_at(lz, 1.0), a2))
            .norm() <= 1e-8 * std::max(1.0, a2.norm()));

  Operator v = random_hermitian(rng, 3);
  v /= operator_norm(v);  // keep ||V|| sqrt(t) small for the oracle contract
  const SuperOperator lv = dephasing_generator(v);
  for (double t : {0.1, 1.0}) {
    const Operator a3 = gaussian_operator(rng, 3, 3);
    CHECK((dephasing_quadrature_oracle(v, t, a3) -
           apply(semigroup_at(lv, t), a3))
              .norm() <= 1e-8 * std::max(1.0, a3.norm()));
  }
}

TEST_CASE("quadrature oracle edge cases") {
  Rng rng(139);
  const Operator v = random_hermitian(rng, 2);
  const Operator a = gaussian_operator(rng, 2, 2);
  CHECK((dephasing_quadrature_oracle(v, 0.0, a) - a).norm() == 0.0);
  CHECK((dephasing_quadrature_oracle(v, 0.5, Operator::Identity(2, 2)) -
         Operator::Identity(2, 2))
            .norm() <= 1e-12);
  CHECK_THROWS_AS(dephasing_quadrature_oracle(v, -1.0, a), Error);
  CHECK_THROWS_AS(dephasing_quadrature_oracle(v, 1.0, a, 1), Error);
}

TEST_CASE("conjugation generator form") {
  Rng rng(149);
  const Operator g0 = gaussian_operator(rng, 3, 3);
  const SuperOperator l = conjugation_generator(g0);
  const Operator a = gaussian_operator(rng, 3, 3);
  CHECK((apply(l, a) - (g0 * a + a * g0.adjoint())).norm() <=
        1e-13 * std::max(1.0, g0.norm() * a.norm()));
}

TEST_CASE("shift-reset model structure") {
  const ShiftResetModel model = make_shift_reset(16);
  CHECK(std::abs(model.f.norm() - 1.0) <= 1e-15);
  // f decays geometrically: f_{k+1}/f_k = exp(-delta)
  CHECK(std::abs(model.f(1).real() / model.f(0).real() -
                 std::exp(-0.25)) <= 1e-14);

  const Operator sts = (model.s.adjoint() * model.s).eval();
  Operator expected = Operator::Identity(16, 16);
  expected(15, 15) = 0.0;
  CHECK((sts - expected).norm() == 0.0);

  CHECK_THROWS_AS(shift_projector(model, 17), IndexError);
  CHECK_THROWS_AS(shift_projector(model, -1), IndexError);
  CHECK(shift_projector(model, 0).norm() == 0.0);
  CHECK((shift_projector(model, 16) - Operator::Identity(16, 16)).norm() ==
        0.0);
}

TEST_CASE("shift projectors split exactly") {
  const ShiftResetModel model = make_shift_reset(16, 0.3);
  Operator s_m = Operator::Identity(16, 16);
  for (Index m = 0; m <= 16; ++m) {
    if (m > 0) s_m = (model.s * s_m).eval();
    for (Index n = 0; m + n <= 16; ++n) {
      const Operator lhs = shift_projector(model, m + n);
      const Operator rhs = shift_projector(model, m) +
                           s_m * shift_projector(model, n) * s_m.adjoint();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("shift-reset maps are unital") {
  for (Index d : {Index(16), Index(32)}) {
    const ShiftResetModel model = make_shift_reset(d);
    for (Index n : {Index(0), Index(1), Index(3), Index(d / 2)}) {
      const Operator one =
          shift_reset_apply(model, n, Operator::Identity(d, d));
      CHECK((one - Operator::Identity(d, d)).cwiseAbs().maxCoeff() <=
            1e-13);
    }
  }
}

TEST_CASE("reset state is invariant away from the truncation edge") {
  Rng rng(151);
  const Index d = 32;
  const double delta = 0.25;
  const double r = std::exp(-2.0 * delta);
  const ShiftResetModel model = make_shift_reset(d, delta);

  // probe supported on the top-left block: the shifted tail of f never
  // meets it, so only the reset term drifts
  Operator a = Operator::Zero(d, d);
  a.topLeftCorner(16, 16) = random_hermitian(rng, 16);
  for (Index n : {Index(1), Index(2), Index(4)}) {
    const double before = shift_reset_state(model, a);
    const double after =
        shift_reset_state(model, shift_reset_apply(model, n, a));
    const double bound =
        2.0 * operator_norm(a) * std::pow(r, d - n) / (1.0 - r);
    CHECK(std::abs(after - before) <= bound);
  }

  // full-support probes pick up boundary cross terms of order
  // r^((d+n)/2) on top of the r^d reset drift
  const Operator full = random_hermitian(rng, d);
  for (Index n : {Index(1), Index(4)}) {
    const double before = shift_reset_state(model, full);
    const double after =
        shift_reset_state(model, shift_reset_apply(model, n, full));
    const double bound =
        4.0 * operator_norm(full) *
        (std::pow(r, d) / (1.0 - r) +
         2.0 * std::pow(r, 0.5 * static_cast<double>(d + n)));
    CHECK(std::abs(after - before) <= bound);
  }
}

TEST_CASE("shift-reset semigroup property with geometric error bars") {
  const ShiftResetModel model = make_shift_reset(16);
  std::vector<std::pair<Index, Index>> mn = {{0, 3}, {3, 0}, {1, 1},
                                             {2, 3}, {4, 4}};
  const ShiftResetCheck chk = shift_reset_semigroup_check(model, mn);
  CHECK(chk.pass);
  REQUIRE(chk.entries.size() == 5);
  // phi_0 is the identity, so those compositions are exact
  CHECK(chk.entries[0].residual == 0.0);
  CHECK(chk.entries[1].residual == 0.0);
  for (const auto& entry : chk.entries) CHECK(entry.residual <= entry.bound);

  CHECK_THROWS_AS(
      shift_reset_semigroup_check(model, {{10, 10}}), IndexError);
}

TEST_CASE("shift-reset at d = 64 stays numerically tight") {
  const ShiftResetModel model = make_shift_reset(64);
  const ShiftResetCheck chk = shift_reset_semigroup_check(model, {{3, 4}});
  CHECK(chk.pass);
  CHECK(chk.max_residual <= 1e-10);
}

TEST_CASE("dense shift-reset map is a unital channel") {
  const Index d = 8;
  const ShiftResetModel model = make_shift_reset(d);
  const SuperOperator phi = shift_reset_map(model, 2);
  const CpVerdict v = is_completely_positive(phi, 1e-10);
  CHECK(v.completely_positive);
  CHECK(is_unital(phi, UnitalityMode::Semigroup, 1e-12));

  Rng rng(157);
  const Operator a = gaussian_operator(rng, d, d);
  CHECK((apply(phi, a) - shift_reset_apply(model, 2, a)).norm() <=
        1e-13 * std::max(1.0, a.norm()));
}
