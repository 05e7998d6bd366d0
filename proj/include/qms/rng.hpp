// rng.hpp -- pinned pseudo-random source so seeded runs reproduce everywhere
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qms/linalg.hpp"

namespace qms {

// All randomness in the library flows through this wrapper. The algorithms
// are pinned: mt19937_64 (fully specified by the standard), 53-bit uniforms
// taken from the top bits, Gaussians by Box-Muller on two fresh uniforms.
// Distribution adapters from <random> are deliberately avoided because their
// algorithms vary between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform on (0, 1].
  double uniform() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (cosine branch only).
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  Complex cgaussian() { return Complex(gaussian(), gaussian()); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

inline Operator gaussian_operator(Rng& rng, Index rows, Index cols) {
  Operator a(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) a(i, j) = rng.cgaussian();
  return a;
}

inline Vector gaussian_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.cgaussian();
  return v;
}

inline Operator random_hermitian(Rng& rng, Index d) {
  const Operator a = gaussian_operator(rng, d, d);
  return ((a + a.adjoint()) / 2.0).eval();
}

inline Operator random_unitary(Rng& rng, Index d) {
  const Operator a = gaussian_operator(rng, d, d);
  Operator q = Eigen::HouseholderQR<Operator>(a).householderQ();
  return q;
}

}  // namespace qms
