#pragma once

// Tropical theta functions and theta constants, the signed sums vartheta_v,
// the theta matroid, and Voronoi cells of positive definite forms.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "schottky/exact.hpp"
#include "schottky/polytope.hpp"

namespace schottky {

// An element of (Z/2Z)^g stored as a bitmask; coordinate i is bit i.
using Label = std::uint32_t;

Label label_from_vector(std::span<const std::int64_t> v);
IntVector label_to_vector(Label u, std::size_t g);
// Coordinates written left to right, so "0001" has only the last coordinate set.
std::string label_to_string(Label u, std::size_t g);
Label parse_label(const std::string& bits);
int label_dot(Label a, Label b);  // a^t b mod 2

// max over lattice points l of l^t Q x - l^t Q l / 2.
Rational tropical_theta(const QuadForm& q, std::span<const Rational> x);

// Theta_u(Q) = -min_l (l + u/2)^t Q (l + u/2); depends on u mod 2 only.
Rational trop_theta_constant(const QuadForm& q, std::span<const std::int64_t> u);
Rational trop_theta_constant(const QuadForm& q, Label u);

// Indexed by Label, size 2^g.
std::vector<Rational> trop_theta_constants(const QuadForm& q);

// sum over u of (-1)^{u.v} Theta_u(Q).
Rational vartheta(const QuadForm& q, Label v);
Rational vartheta(std::span<const Rational> constants, Label v);
std::vector<Rational> vartheta_all(const QuadForm& q);

struct MatroidElement {
  Label label;
  Rational vartheta;
};

struct ThetaMatroid {
  std::size_t g = 0;
  std::vector<MatroidElement> elements;  // nonzero vartheta, increasing label
  std::vector<MatroidElement> negative;  // the subset with vartheta < 0

  bool realizable_by_graph() const { return negative.empty(); }
  std::vector<Label> labels() const;
};

ThetaMatroid theta_matroid(const QuadForm& q);

// Edge length 2^{3-g} * vartheta_v attached to a matroid element.
Rational edge_length_from_vartheta(const Rational& vartheta, std::size_t g);

// Vectors x that are, up to sign, the unique shortest members of x + 2Z^g.
// Sorted lexicographically; closed under negation.
std::vector<IntVector> voronoi_relevant_vectors(const QuadForm& q);

// { p : 2 p^t Q x <= x^t Q x for every relevant x }.
Polytope voronoi_polytope(const QuadForm& q);

}  // namespace schottky
