#pragma once

// Shared matrices and hand-rolled random generators for tests.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "schottky/exact.hpp"
#include "schottky/matrix.hpp"

namespace schottky::testing {

inline RatMatrix rat(std::size_t n, std::initializer_list<long> entries) {
  RatMatrix m(n, n);
  std::size_t k = 0;
  for (long e : entries) {
    m(k / n, k % n) = Rational(e);
    ++k;
  }
  return m;
}

inline IntMatrix ints(std::size_t r, std::size_t c, std::initializer_list<std::int64_t> entries) {
  IntMatrix m(r, c);
  std::size_t k = 0;
  for (auto e : entries) {
    m(k / c, k % c) = e;
    ++k;
  }
  return m;
}

// Not a Jacobian; Voronoi f-vector (62,142,104,24).
inline QuadForm example_non_jacobian() {
  return QuadForm(rat(4, {14, -9, 11, 0, -9, 11, -2, 1, 11, -2, 21, 11, 0, 1, 11, 14}));
}

// Riemann matrix of the triangular prism with lengths (7,9,9,2,3,8,2,4,12).
inline QuadForm example_prism() {
  return QuadForm(rat(4, {17, 5, 3, 5, 5, 19, 7, 11, 3, 7, 23, 16, 5, 11, 16, 29}));
}

// The same form in the basis given by prism_basis_change().
inline QuadForm example_prism_rebased() {
  return QuadForm(rat(4, {26, 9, -9, 0, 9, 20, 7, -2, -9, 7, 23, 3, 0, -2, 3, 17}));
}

inline IntMatrix prism_basis_change() {
  return ints(4, 4, {0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, -1, -1, 0, 0});
}

inline std::vector<Rational> prism_lengths() {
  return {7, 9, 9, 2, 3, 8, 2, 4, 12};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  Rational positive_rational(std::int64_t max_num = 20, std::int64_t max_den = 6) {
    Rational r(static_cast<long>(uniform(1, max_num)), static_cast<unsigned long>(uniform(1, max_den)));
    r.canonicalize();
    return r;
  }

  Rational rational(std::int64_t max_num = 20, std::int64_t max_den = 6) {
    Rational r(static_cast<long>(uniform(-max_num, max_num)), static_cast<unsigned long>(uniform(1, max_den)));
    r.canonicalize();
    return r;
  }

  // Product of random elementary column operations and sign flips.
  IntMatrix unimodular(std::size_t g, int steps = 8) {
    IntMatrix s = IntMatrix::identity(g);
    for (int k = 0; k < steps; ++k) {
      auto i = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(g) - 1));
      auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(g) - 1));
      if (i == j) {
        for (std::size_t r = 0; r < g; ++r) s(r, i) = -s(r, i);
        continue;
      }
      std::int64_t c = uniform(-1, 1);
      for (std::size_t r = 0; r < g; ++r) s(r, j) += c * s(r, i);
    }
    return s;
  }

  // A^t A + diag shift with small integer A: positive definite, entries
  // bounded by roughly 3 * spread^2 * g.
  QuadForm pd_form(std::size_t g, std::int64_t spread = 2, bool rational_scale = false) {
    while (true) {
      RatMatrix a(g, g);
      for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) a(i, j) = Rational(static_cast<long>(uniform(-spread, spread)));
      }
      RatMatrix m = a.transpose() * a;
      for (std::size_t i = 0; i < g; ++i) m(i, i) += Rational(static_cast<long>(uniform(0, 2)));
      if (rational_scale) {
        Rational c = positive_rational(5, 4);
        for (std::size_t i = 0; i < g; ++i) {
          for (std::size_t j = 0; j < g; ++j) m(i, j) *= c;
        }
      }
      if (is_positive_definite(m)) return QuadForm(m);
    }
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace schottky::testing
