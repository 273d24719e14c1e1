#pragma once

// Exact convex polytopes in H- and V-representation.

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "schottky/matrix.hpp"

namespace schottky {

// { p : normal . p <= offset }
struct Halfspace {
  RatVector normal;
  Rational offset;
};

struct FVector {
  std::array<std::size_t, 4> counts{};

  std::size_t operator[](std::size_t k) const { return counts[k]; }
  bool satisfies_euler() const {
    return counts[0] + counts[2] == counts[1] + counts[3];
  }
  std::string to_string() const;

  friend auto operator<=>(const FVector&, const FVector&) = default;
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<Halfspace> facets;             // irredundant, primitive integer normals
  std::vector<RatVector> vertices;           // lexicographically sorted
  std::vector<std::vector<std::size_t>> facet_vertices;  // incidence, per facet
};

// Vertices of a bounded full-dimensional intersection of halfspaces.
// Throws UnboundedError / DegenerateError when the intersection is not a
// full-dimensional polytope.
Polytope vertices_from_halfspaces(std::span<const Halfspace> halfspaces);

// Face counts by dimension of a 4-polytope.
FVector face_lattice_fvector(const Polytope& p);

// Dimension of the affine hull (-1 for the empty set).
int affine_dimension(std::span<const RatVector> points);

// Minkowski sum of the segments [-b, b].
Polytope zonotope(std::span<const IntVector> generators);

}  // namespace schottky
