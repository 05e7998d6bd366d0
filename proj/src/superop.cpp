// superop.cpp
#include "qms/superop.hpp"

#include <cstdlib>
#include <sstream>
#include <string>

namespace qms {

Index max_dim() {
  if (const char* env = std::getenv("QMS_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<Index>(v);
  }
  return 32;
}

namespace {

void check_dim(Index d, const char* who) {
  if (d <= 0) {
    std::ostringstream msg;
    msg << who << ": dimension must be positive, got " << d;
    throw DimensionError(msg.str());
  }
  if (d > max_dim()) {
    std::ostringstream msg;
    msg << who << ": dimension " << d << " exceeds the cap " << max_dim()
        << " (set QMS_MAX_DIM to raise it)";
    throw DimensionError(msg.str());
  }
}

void check_square(const Operator& a, const char* who) {
  if (a.rows() != a.cols()) {
    std::ostringstream msg;
    msg << who << ": expected a square matrix, got " << a.rows() << "x"
        << a.cols();
    throw DimensionError(msg.str());
  }
}

}  // namespace

Vector vec(const Operator& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Operator unvec(const Vector& v, Index d) {
  if (v.size() != d * d)
    throw DimensionError("unvec: vector length does not match dimension");
  return Eigen::Map<const Operator>(v.data(), d, d);
}

SuperOperator::SuperOperator(Index dim_, Operator matrix_)
    : dim(dim_), matrix(std::move(matrix_)) {
  check_dim(dim, "SuperOperator");
  if (matrix.rows() != dim * dim || matrix.cols() != dim * dim)
    throw DimensionError("SuperOperator: matrix must be d^2 x d^2");
  if (!all_finite(matrix))
    throw AccuracyError("SuperOperator: matrix has non-finite entries");
}

SuperOperator identity_superop(Index d) {
  check_dim(d, "identity_superop");
  return SuperOperator(d, Operator::Identity(d * d, d * d));
}

SuperOperator zero_superop(Index d) {
  check_dim(d, "zero_superop");
  return SuperOperator(d, Operator::Zero(d * d, d * d));
}

SuperOperator left_mult(const Operator& b) {
  check_square(b, "left_mult");
  const Index d = b.rows();
  return SuperOperator(d, kron(Operator::Identity(d, d), b));
}

SuperOperator right_mult(const Operator& b) {
  check_square(b, "right_mult");
  const Index d = b.rows();
  return SuperOperator(d, kron(b.transpose(), Operator::Identity(d, d)));
}

SuperOperator sandwich(const Operator& v) {
  check_square(v, "sandwich");
  return SuperOperator(v.rows(), kron(v.transpose(), v.adjoint()));
}

SuperOperator from_lindblad_terms(const LindbladTerms& terms) {
  check_square(terms.g, "from_lindblad_terms");
  const Index d = terms.g.rows();
  Operator m = left_mult(terms.g).matrix +
               right_mult(terms.g.adjoint()).matrix;
  for (const Operator& v : terms.kraus) {
    if (v.rows() != d || v.cols() != d)
      throw DimensionError(
          "from_lindblad_terms: Kraus operator dimension mismatch");
    m += sandwich(v).matrix;
  }
  return SuperOperator(d, std::move(m));
}

Operator ApplyFn::operator()(const SuperOperator& s, const Operator& a) const {
  check_square(a, "apply");
  if (a.rows() != s.dim)
    throw DimensionError("apply: operator dimension does not match");
  return unvec(s.matrix * vec(a), s.dim);
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim != b.dim) throw DimensionError("superop +: dimension mismatch");
  return SuperOperator(a.dim, a.matrix + b.matrix);
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim != b.dim) throw DimensionError("superop -: dimension mismatch");
  return SuperOperator(a.dim, a.matrix - b.matrix);
}

SuperOperator operator*(Complex c, const SuperOperator& s) {
  return SuperOperator(s.dim, c * s.matrix);
}

SuperOperator operator*(double c, const SuperOperator& s) {
  return SuperOperator(s.dim, c * s.matrix);
}

SuperOperator compose(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim != b.dim)
    throw DimensionError("compose: dimension mismatch");
  return SuperOperator(a.dim, a.matrix * b.matrix);
}

ChoiMatrix choi_of(const SuperOperator& s) {
  const Index d = s.dim;
  Operator c(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      // vec(E_ij) = e_{i + d*j}
      const Operator block = unvec(s.matrix.col(i + d * j), d);
      c.block(i * d, j * d, d, d) = block;
    }
  return ChoiMatrix{d, std::move(c)};
}

SuperOperator choi_to_superop(const ChoiMatrix& c) {
  const Index d = c.dim;
  if (c.matrix.rows() != d * d || c.matrix.cols() != d * d)
    throw DimensionError("choi_to_superop: matrix must be d^2 x d^2");
  Operator m(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      m.col(i + d * j) = vec(c.matrix.block(i * d, j * d, d, d).eval());
  return SuperOperator(d, std::move(m));
}

SuperOperator amplify(const SuperOperator& s, Index n) {
  if (n <= 0) throw DimensionError("amplify: n must be positive");
  const Index d = s.dim;
  const Index nd = n * d;
  check_dim(nd, "amplify");
  Operator big = Operator::Zero(nd * nd, nd * nd);
  // Entry convention: vec index of (row r, col c) in M_m is c*m + r.
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) {
          const Complex val = s.matrix(b * d + a, j * d + i);
          if (val == Complex(0.0, 0.0)) continue;
          for (Index c = 0; c < n; ++c)
            for (Index e = 0; e < n; ++e)
              big((b * n + e) * nd + (a * n + c),
                  (j * n + e) * nd + (i * n + c)) = val;
        }
  return SuperOperator(nd, std::move(big));
}

double hermiticity_preservation_defect(const SuperOperator& s) {
  const ChoiMatrix c = choi_of(s);
  // max over matrix units of ||S(E_ij*) - S(E_ij)*|| is bounded by the
  // Frobenius defect of the Choi matrix, which collects exactly those
  // differences blockwise.
  return (c.matrix - c.matrix.adjoint()).norm();
}

bool is_hermiticity_preserving(const SuperOperator& s, double tol) {
  return hermiticity_preservation_defect(s) <=
         tol * std::max(1.0, s.matrix.norm());
}

double unitality_residual(const SuperOperator& s, UnitalityMode mode) {
  const Operator one = Operator::Identity(s.dim, s.dim);
  const Operator img = apply(s, one);
  if (mode == UnitalityMode::Semigroup) return (img - one).norm();
  return img.norm();
}

bool is_unital(const SuperOperator& s, UnitalityMode mode, double tol) {
  return unitality_residual(s, mode) <= tol * static_cast<double>(s.dim);
}

}  // namespace qms
