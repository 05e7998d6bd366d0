#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qms/decompose.hpp"
#include "qms/models.hpp"
#include "qms/rng.hpp"
#include "test_support.hpp"

using namespace qms;
using namespace qms::testing;

namespace {

SuperOperator transpose_map(Index d) {
  Operator p = Operator::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) p(j + d * i, i + d * j) = 1.0;
  return SuperOperator(d, p);
}

}  // namespace

TEST_CASE("associate_vector on a rank-one projector") {
  const AssociatePair pair = associate_vector(matrix_unit(2, 0, 0));
  CHECK(pair.trace_total == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(pair.k.size() == 1);
  CHECK(pair.weights(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(pair.h(0) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(pair.h(1)) < 1e-13);
  CHECK(std::abs(inner(pair.h, pair.k[0]) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("associate_vector on diag(2, 0)") {
  Operator t(2, 2);
  t << 2, 0, 0, 0;
  const AssociatePair pair = associate_vector(t);
  CHECK(pair.trace_total == doctest::Approx(2.0).epsilon(1e-14));
  REQUIRE(pair.k.size() == 1);
  // ||k||^2 = trace, h = k / ||k||^2
  CHECK(std::abs(pair.k[0](0) - Complex(std::sqrt(2.0), 0)) < 1e-13);
  CHECK(std::abs(pair.h(0) - Complex(1.0 / std::sqrt(2.0), 0)) < 1e-13);
}

TEST_CASE("associate_vector on I/2 weights both directions equally") {
  const AssociatePair pair =
      associate_vector((0.5 * Operator::Identity(2, 2)).eval());
  CHECK(pair.trace_total == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(pair.k.size() == 2);
  CHECK(pair.weights(0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(pair.weights(1) == doctest::Approx(0.5).epsilon(1e-13));
  // h = e_0 + e_1 up to the deterministic eigenvector gauge
  CHECK(std::abs(pair.h(0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(pair.h(1) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("associate_vector reconstructs T and normalizes against h") {
  Rng rng(61);
  const Operator half = gaussian_operator(rng, 4, 2);
  const Operator t = (half * half.adjoint()).eval();  // rank <= 2
  const AssociatePair pair = associate_vector(t);
  CHECK(pair.k.size() == 2);

  Operator rebuilt = Operator::Zero(4, 4);
  for (std::size_t s = 0; s < pair.k.size(); ++s)
    rebuilt += pair.weights(static_cast<Index>(s)) *
               rank_one(pair.k[s], pair.k[s]);
  CHECK((rebuilt - t).norm() <= 1e-10 * std::max(1.0, t.norm()));

  double wsum = 0.0;
  for (Index s = 0; s < pair.weights.size(); ++s) wsum += pair.weights(s);
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  for (const Vector& k : pair.k) {
    CHECK(std::abs(inner(pair.h, k) - Complex(1, 0)) < 1e-12);
    CHECK(k.squaredNorm() ==
          doctest::Approx(pair.trace_total).epsilon(1e-12));
  }
}

TEST_CASE("associate_vector rejects bad inputs") {
  CHECK_THROWS_AS(associate_vector(Operator::Zero(3, 3)), ZeroOperatorError);
  Operator neg(2, 2);
  neg << 1, 0, 0, -1;
  CHECK_THROWS_AS(associate_vector(neg), NotPSDError);
}

TEST_CASE("extract_g of the zero generator is zero") {
  const AssociatePair pair = associate_vector(matrix_unit(2, 0, 0));
  CHECK(extract_g(zero_superop(2), pair).norm() == 0.0);
}

TEST_CASE("extract_g recovers the dephasing drift") {
  const SuperOperator l = dephasing_generator(pauli_z());
  const AssociatePair pair = associate_vector(matrix_unit(2, 0, 0));
  const Operator g = extract_g(l, pair);
  Operator expected(2, 2);
  expected << 0, 0, 0, -2;
  CHECK((g - expected).norm() < 1e-12);
}

TEST_CASE("extract_g on a conjugation generator") {
  Rng rng(67);
  const Operator g0 = gaussian_operator(rng, 3, 3);
  const SuperOperator l = conjugation_generator(g0);
  const AssociatePair pair = associate_vector(matrix_unit(3, 0, 0));
  const Operator g = extract_g(l, pair);
  // the formula pins the gauge: G = G0 - i Im(G0(0,0)) 1
  const Operator expected =
      g0 - Complex(0, 1) * g0(0, 0).imag() * Operator::Identity(3, 3);
  CHECK((g - expected).norm() <= 1e-12 * std::max(1.0, g0.norm()));
}

TEST_CASE("extract_phi cancels the multiplication part") {
  Rng rng(71);
  LindbladTerms terms;
  terms.g = gaussian_operator(rng, 3, 3);
  terms.kraus = {gaussian_operator(rng, 3, 3)};
  const SuperOperator l = from_lindblad_terms(terms);
  const SuperOperator phi = extract_phi(l, terms.g);
  CHECK((phi.matrix - sandwich(terms.kraus[0]).matrix).norm() <=
        1e-12 * std::max(1.0, l.matrix.norm()));
}

TEST_CASE("extract_phi of dephasing against its Kraus form") {
  const SuperOperator l = dephasing_generator(pauli_z());
  Operator g(2, 2);
  g << 0, 0, 0, -2;
  const SuperOperator phi = extract_phi(l, g);
  const Operator w = (pauli_z() - Operator::Identity(2, 2)).eval();
  CHECK((phi.matrix - sandwich(w).matrix).norm() < 1e-12);
}

TEST_CASE("lindblad_decompose on dephasing with the default reference") {
  const SuperOperator l = dephasing_generator(pauli_z());
  const LindbladDecomposition dec = lindblad_decompose(l);
  CHECK(dec.reconstruction_residual <= 1e-10);
  CHECK(dec.min_choi_eigenvalue >= -1e-12);
  CHECK((dec.g + Operator::Identity(2, 2)).norm() < 1e-12);  // G = -1
  CHECK(dec.kraus.ops.size() == 2);  // phi(A) = Z A Z + A has Choi rank 2

  // rebuild L from the pieces
  SuperOperator rebuilt = dec.phi + left_mult(dec.g) +
                          right_mult(dec.g.adjoint().eval());
  CHECK((rebuilt.matrix - l.matrix).norm() <= 1e-10);
}

TEST_CASE("lindblad_decompose of the zero generator") {
  const LindbladDecomposition dec = lindblad_decompose(zero_superop(2));
  CHECK(dec.g.norm() <= 1e-12);
  CHECK(dec.phi.matrix.norm() <= 1e-12);
  CHECK(dec.kraus.ops.empty());
  CHECK(dec.reconstruction_residual <= 1e-14);
}

TEST_CASE("lindblad_decompose on the heat flow generator") {
  const SuperOperator l = heat_flow_generator(8);
  const LindbladDecomposition dec = lindblad_decompose(l);
  CHECK(dec.reconstruction_residual <=
        1e-9 * std::max(1.0, l.matrix.norm()));
  CHECK(dec.min_choi_eigenvalue >=
        -1e-9 * std::max(1.0, l.matrix.norm()));
  // unital generator: phi(1) = -(G + G*)
  const Operator one = Operator::Identity(8, 8);
  const Operator phi_one = apply(dec.phi, one);
  CHECK(operator_norm((phi_one + dec.g + dec.g.adjoint()).eval()) <= 1e-8);
}

TEST_CASE("lindblad_decompose is reference-independent in L") {
  Rng rng(73);
  const SuperOperator l = from_lindblad_terms(random_unital_terms(rng, 3, 2));
  for (int trial = 0; trial < 5; ++trial) {
    const Operator t = random_psd(rng, 3);
    const LindbladDecomposition dec = lindblad_decompose(l, t);
    SuperOperator rebuilt = dec.phi + left_mult(dec.g) +
                            right_mult(dec.g.adjoint().eval());
    CHECK((rebuilt.matrix - l.matrix).norm() <=
          1e-9 * std::max(1.0, l.matrix.norm()));
    CHECK(dec.min_choi_eigenvalue >=
          -1e-9 * std::max(1.0, l.matrix.norm()));
  }
}

TEST_CASE("lindblad_decompose rejects the transpose map") {
  CHECK_THROWS_AS(lindblad_decompose(transpose_map(2)), PhiNotCPError);
}

TEST_CASE("stinespring dilation of a rank-one sandwich") {
  const Operator w = (pauli_z() - Operator::Identity(2, 2)).eval();
  const SuperOperator phi = sandwich(w);
  const StinespringDilation dil = stinespring_dilate(phi);
  CHECK(dil.dilation_dim == 2);  // d * choi rank = 2 * 1
  const StinespringChecks chk = verify_stinespring(phi, dil);
  CHECK(chk.reproduction_residual <= 1e-9);
  CHECK(chk.unitality_residual <= 1e-9);
  CHECK(chk.multiplicativity_residual <= 1e-9);
  CHECK(chk.adjoint_residual <= 1e-9);
  CHECK(chk.norm_excess <= 1e-9);
  CHECK(chk.minimal);
}

TEST_CASE("stinespring dilation of the zero map is empty") {
  const StinespringDilation dil = stinespring_dilate(zero_superop(2));
  CHECK(dil.dilation_dim == 0);
  const StinespringChecks chk = verify_stinespring(zero_superop(2), dil);
  CHECK(chk.reproduction_residual == 0.0);
  CHECK(chk.minimal);
}

TEST_CASE("stinespring dilation of the identity map") {
  const StinespringDilation dil = stinespring_dilate(identity_superop(2));
  CHECK(dil.dilation_dim == 2);
  const StinespringChecks chk = verify_stinespring(identity_superop(2), dil);
  CHECK(chk.reproduction_residual <= 1e-10);
  CHECK(chk.minimal);
}

TEST_CASE("stinespring dilation of random completely positive maps") {
  Rng rng(79);
  for (Index d : {Index(2), Index(3)}) {
    KrausSet k;
    k.dim = d;
    for (int j = 0; j < 2; ++j)
      k.ops.push_back(gaussian_operator(rng, d, d) /
                      std::sqrt(static_cast<double>(d)));
    const SuperOperator phi = superop_from_kraus(k);
    const StinespringDilation dil = stinespring_dilate(phi);
    const StinespringChecks chk = verify_stinespring(phi, dil);
    CHECK(chk.reproduction_residual <=
          1e-9 * std::max(1.0, phi.matrix.norm()));
    CHECK(chk.multiplicativity_residual <= 1e-9);
    CHECK(chk.adjoint_residual <= 1e-9);
    CHECK(chk.unitality_residual <= 1e-9);
    CHECK(chk.norm_excess <= 1e-9);
    CHECK(chk.minimal);
    CHECK(chk.minimality_rank == dil.dilation_dim);

    // pi is a homomorphism on random inputs too
    const Operator a = gaussian_operator(rng, d, d);
    const Operator b = gaussian_operator(rng, d, d);
    CHECK((apply_pi(dil, (a * b).eval()) -
           apply_pi(dil, a) * apply_pi(dil, b))
              .norm() <= 1e-9 * std::max(1.0, a.norm() * b.norm()));
    // and V* pi(A) V reproduces phi on random inputs
    CHECK((dil.v.adjoint() * apply_pi(dil, a) * dil.v - apply(phi, a))
              .norm() <= 1e-9 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("stinespring rejects maps that are not completely positive") {
  CHECK_THROWS_AS(stinespring_dilate(transpose_map(2)), GramNotPSDError);
}

TEST_CASE("unitality identity for the dephasing generator") {
  const SuperOperator l = dephasing_generator(pauli_z());
  const LindbladDecomposition dec = lindblad_decompose(l);
  const StinespringDilation dil = stinespring_dilate(dec.phi);
  const UnitalityIdentityReport rep = verify_unitality_identity(dec, dil);
  CHECK(rep.pass);
  CHECK(rep.residual <= 1e-10);
  // V*V = phi(1) = Z Z + 1 = 2, and -(G + G*) = 2 as well
  CHECK((rep.vstar_v - 2.0 * Operator::Identity(2, 2)).norm() <= 1e-9);
}

TEST_CASE("unitality identity for the heat flow generator") {
  const SuperOperator l = heat_flow_generator(4);
  const LindbladDecomposition dec = lindblad_decompose(l);
  const StinespringDilation dil = stinespring_dilate(dec.phi);
  const UnitalityIdentityReport rep = verify_unitality_identity(dec, dil);
  CHECK(rep.pass);
  CHECK(rep.residual <= 1e-10 * std::max(1.0, l.matrix.norm()));
}

TEST_CASE("unitality identity refuses non-unital generators") {
  const SuperOperator s = sandwich(pauli_z());  // s(1) = 1, but as a
  const LindbladDecomposition dec = lindblad_decompose(s);
  const StinespringDilation dil = stinespring_dilate(dec.phi);
  // generator it would need s(1) = 0
  CHECK_THROWS_AS(verify_unitality_identity(dec, dil), NotUnitalError);
}
