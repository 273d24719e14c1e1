#include "schottky/tropical.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace schottky {

Label label_from_vector(std::span<const std::int64_t> v) {
  Label u = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] % 2 != 0) u |= (1U << i);
  }
  return u;
}

IntVector label_to_vector(Label u, std::size_t g) {
  IntVector v(g);
  for (std::size_t i = 0; i < g; ++i) v[i] = (u >> i) & 1U;
  return v;
}

std::string label_to_string(Label u, std::size_t g) {
  std::string s(g, '0');
  for (std::size_t i = 0; i < g; ++i) {
    if ((u >> i) & 1U) s[i] = '1';
  }
  return s;
}

Label parse_label(const std::string& bits) {
  if (bits.empty() || bits.size() > 31) throw ValidationError("bad label '" + bits + "'");
  Label u = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      u |= (1U << i);
    } else if (bits[i] != '0') {
      throw ValidationError("bad label '" + bits + "'");
    }
  }
  return u;
}

int label_dot(Label a, Label b) { return std::popcount(a & b) & 1; }

Rational tropical_theta(const QuadForm& q, std::span<const Rational> x) {
  return (q.norm(x) - closest_vector(q, x).dist2) / 2;
}

Rational trop_theta_constant(const QuadForm& q, std::span<const std::int64_t> u) {
  RatVector half(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) half[i] = -make_rational(static_cast<long>(u[i]), 2);
  return -closest_vector(q, half).dist2;
}

Rational trop_theta_constant(const QuadForm& q, Label u) {
  IntVector v = label_to_vector(u, q.dim());
  return trop_theta_constant(q, v);
}

std::vector<Rational> trop_theta_constants(const QuadForm& q) {
  const std::size_t n = std::size_t{1} << q.dim();
  std::vector<Rational> out(n);
  for (std::size_t u = 0; u < n; ++u) out[u] = trop_theta_constant(q, static_cast<Label>(u));
  return out;
}

Rational vartheta(std::span<const Rational> constants, Label v) {
  Rational s = 0;
  for (std::size_t u = 0; u < constants.size(); ++u) {
    if (label_dot(static_cast<Label>(u), v)) {
      s -= constants[u];
    } else {
      s += constants[u];
    }
  }
  return s;
}

Rational vartheta(const QuadForm& q, Label v) { return vartheta(trop_theta_constants(q), v); }

std::vector<Rational> vartheta_all(const QuadForm& q) {
  auto constants = trop_theta_constants(q);
  std::vector<Rational> out(constants.size());
  for (std::size_t v = 0; v < constants.size(); ++v) out[v] = vartheta(constants, static_cast<Label>(v));
  return out;
}

std::vector<Label> ThetaMatroid::labels() const {
  std::vector<Label> out;
  for (const auto& e : elements) out.push_back(e.label);
  return out;
}

ThetaMatroid theta_matroid(const QuadForm& q) {
  ThetaMatroid m;
  m.g = q.dim();
  auto values = vartheta_all(q);
  for (std::size_t v = 1; v < values.size(); ++v) {
    if (values[v] == 0) continue;
    MatroidElement e{static_cast<Label>(v), values[v]};
    m.elements.push_back(e);
    if (values[v] < 0) m.negative.push_back(e);
  }
  return m;
}

Rational edge_length_from_vartheta(const Rational& vartheta, std::size_t g) {
  Rational r = vartheta;
  if (g <= 3) {
    r *= Rational(Integer(1) << static_cast<unsigned>(3 - g));
  } else {
    r /= Rational(Integer(1) << static_cast<unsigned>(g - 3));
  }
  return r;
}

std::vector<IntVector> voronoi_relevant_vectors(const QuadForm& q) {
  const std::size_t g = q.dim();
  std::vector<IntVector> out;
  for (Label c = 1; c < (Label{1} << g); ++c) {
    // Members c + 2y of the coset; minimize (c + 2y)^t Q (c + 2y) = 4 (y + c/2)^t Q (y + c/2).
    IntVector cv = label_to_vector(c, g);
    RatVector center(g);
    for (std::size_t i = 0; i < g; ++i) center[i] = -make_rational(static_cast<long>(cv[i]), 2);
    auto best = closest_vector(q, center);
    auto minimizers = enumerate_shifted(q, center, best.dist2);
    if (minimizers.size() != 2) continue;
    for (const auto& y : minimizers) {
      IntVector x(g);
      for (std::size_t i = 0; i < g; ++i) x[i] = cv[i] + 2 * y[i];
      out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Polytope voronoi_polytope(const QuadForm& q) {
  const std::size_t g = q.dim();
  std::vector<Halfspace> hs;
  for (const auto& x : voronoi_relevant_vectors(q)) {
    RatVector normal(g);
    for (std::size_t i = 0; i < g; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < g; ++j) s += q(i, j) * Rational(static_cast<long>(x[j]));
      normal[i] = 2 * s;
    }
    hs.push_back({std::move(normal), q.norm(std::span<const std::int64_t>(x))});
  }
  return vertices_from_halfspaces(hs);
}

}  // namespace schottky
