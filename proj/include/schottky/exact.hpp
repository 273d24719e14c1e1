#pragma once

// Exact rational linear algebra and lattice enumeration for positive
// definite quadratic forms. No floating point is used anywhere here.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "schottky/matrix.hpp"

namespace schottky {

// Square-root-free factorization Q = L * diag(D) * L^t with L unit lower
// triangular.
struct LdlFactor {
  RatMatrix lower;
  RatVector diag;
};

// True iff every leading principal minor is positive. Throws
// StructuralError for non-square or non-symmetric input.
bool is_positive_definite(const RatMatrix& m);

// Throws NotPositiveDefinite naming the first non-positive leading minor.
LdlFactor ldl_decompose(const RatMatrix& m);

// Symmetric positive definite rational matrix. Validated on construction
// and immutable afterwards.
class QuadForm {
 public:
  explicit QuadForm(RatMatrix m);

  static QuadForm identity(std::size_t g = 4);

  std::size_t dim() const { return m_.rows(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const RatMatrix& matrix() const { return m_; }
  const LdlFactor& ldl() const { return ldl_; }

  Rational norm(std::span<const std::int64_t> v) const;
  Rational norm(std::span<const Rational> v) const;
  Rational inner(std::span<const std::int64_t> a, std::span<const std::int64_t> b) const;

  // X^t Q X.
  QuadForm transform(const IntMatrix& x) const;
  // c * Q for positive rational c.
  QuadForm scaled(const Rational& c) const;

  friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.m_ == b.m_; }

 private:
  RatMatrix m_;
  LdlFactor ldl_;
};

LdlFactor ldl_decompose(const QuadForm& q);

// All v in Z^g with v^t Q v <= bound, in lexicographic order.
std::vector<IntVector> enumerate_by_norm(const QuadForm& q, const Rational& bound);

// All v in Z^g with (v - center)^t Q (v - center) <= bound, lexicographic.
std::vector<IntVector> enumerate_shifted(const QuadForm& q,
                                         std::span<const Rational> center,
                                         const Rational& bound);

struct ClosestVector {
  IntVector point;
  Rational dist2;
};

// min over lattice points of (l - x)^t Q (l - x); ties resolved to the
// lexicographically smallest minimizer.
ClosestVector closest_vector(const QuadForm& q, std::span<const Rational> x);

// Some X in GL_g(Z) with X^t Q X = target, or nothing if none exists.
// Throws SearchSpaceExceeded when a candidate column list exceeds the cap.
std::optional<IntMatrix> gl_equivalence(const QuadForm& q, const QuadForm& target,
                                        std::size_t candidate_cap = 1'000'000);

}  // namespace schottky
