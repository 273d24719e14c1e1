#pragma once

// Metric graphs, their cycle bases and tropical Riemann matrices, and the
// catalog of the sixteen trivalent-or-higher genus 4 graphs.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schottky/exact.hpp"
#include "schottky/polytope.hpp"
#include "schottky/tropical.hpp"

namespace schottky {

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  Rational length = 1;

  bool is_loop() const { return tail == head; }
};

class MetricGraph {
 public:
  // Throws ValidationError on out-of-range endpoints or non-positive lengths.
  MetricGraph(std::size_t num_vertices, std::vector<Edge> edges,
              std::vector<std::uint32_t> weights = {});

  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint32_t>& weights() const { return weights_; }
  bool has_weights() const;
  bool is_connected() const;

  // |E| - |V| + 1 + sum of weights. Throws StructuralError when disconnected.
  std::size_t genus() const;

  std::vector<Rational> lengths() const;
  MetricGraph with_lengths(std::span<const Rational> lengths) const;

  std::size_t num_loops() const;
  // Number of edges sharing their endpoint pair with an earlier edge.
  std::size_t num_repeated_edges() const;

 private:
  std::size_t num_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> weights_;
};

// Rows are cycles, columns follow the edge order; entries in {-1, 0, 1}.
struct CycleBasis {
  IntMatrix matrix;
};

// Fundamental cycles of the BFS tree rooted at vertex 0, one row per
// non-tree edge in edge order. Unsupported for weighted graphs; rejects
// acyclic graphs.
CycleBasis cycle_basis(const MetricGraph& g);

// Every row is a cycle (signed incidences cancel at each vertex) and the rows
// have full rank equal to the cycle rank.
bool is_cycle_basis(const MetricGraph& g, const IntMatrix& b);

struct GraphRiemannMatrix {
  RatMatrix matrix;
  bool has_bridge = false;  // some edge lies on no cycle; matrix is then only semidefinite
};

// B diag(lengths) B^t.
GraphRiemannMatrix riemann_matrix(const MetricGraph& g, const CycleBasis& b);

struct CatalogEntry {
  int index = 0;  // 1..16
  std::string name;
  MetricGraph graph;
  CycleBasis basis;
  QuadForm q_rep;
  FVector f_vector;
  std::size_t cone_dim = 0;

  // Columns of the basis reduced mod 2.
  std::vector<Label> column_labels() const;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_entry_for(const FVector& f);

// Recomputes each representative's Voronoi f-vector and checks the stored data.
// Returns the indices of entries that disagree.
std::vector<int> catalog_self_check(bool recompute_polytopes);

// An invertible 4x4 matrix over F2, stored by columns.
struct F2Matrix {
  std::array<Label, 4> columns{};

  Label apply(Label v) const;
  static F2Matrix identity();
};

struct CographicMatch {
  const CatalogEntry* entry = nullptr;
  F2Matrix relabel;
  // edge_of[k] is the catalog edge matched with the k-th matroid element.
  std::vector<std::size_t> edge_of;
};

// Searches GL_4(F2) for S sending the matroid's labels onto the mod-2
// basis columns of some catalog entry of the same size.
std::optional<CographicMatch> match_cographic(const ThetaMatroid& m);

// All 20160 elements of GL_4(F2), identity first.
const std::vector<F2Matrix>& gl4_f2();

// Graphviz source with lengths as red edge labels.
std::string to_dot(const MetricGraph& g, const std::string& name = "G");

}  // namespace schottky
