#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "schottky/graphs.hpp"

namespace schottky {
namespace {

using testing::Rng;

MetricGraph rose(std::size_t petals) {
  std::vector<Edge> edges(petals, Edge{0, 0, 1});
  return MetricGraph(1, edges);
}

// Prism with the edge order and lengths of the worked example.
MetricGraph example_prism_graph() {
  const std::pair<std::size_t, std::size_t> ends[9] = {{0, 1}, {0, 2}, {0, 3}, {1, 5}, {1, 4},
                                                       {2, 3}, {2, 5}, {3, 4}, {5, 4}};
  auto lengths = testing::prism_lengths();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < 9; ++i) edges.push_back({ends[i].first, ends[i].second, lengths[i]});
  return MetricGraph(6, edges);
}

// Oracle: Kirchhoff's matrix-tree theorem on the Laplacian with loops dropped.
Integer spanning_trees(const MetricGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 1) return 1;
  IntMatrix lap(n - 1, n - 1);
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    for (auto [a, b] : {std::pair{e.tail, e.head}, std::pair{e.head, e.tail}}) {
      if (a > 0) lap(a - 1, a - 1) += 1;
      if (a > 0 && b > 0) lap(a - 1, b - 1) -= 1;
    }
  }
  return determinant(lap);
}

TEST(Genus, Examples) {
  EXPECT_EQ(rose(4).genus(), 4u);
  EXPECT_EQ(example_prism_graph().genus(), 4u);
  EXPECT_EQ(MetricGraph(1, {}, {4}).genus(), 4u);
  EXPECT_THROW(MetricGraph(2, {}).genus(), StructuralError);
}

TEST(MetricGraphValidation, RejectsBadInput) {
  EXPECT_THROW(MetricGraph(2, {Edge{0, 2, 1}}), ValidationError);
  EXPECT_THROW(MetricGraph(2, {Edge{0, 1, 0}}), ValidationError);
  EXPECT_THROW(MetricGraph(2, {Edge{0, 1, 1}}, {0}), ValidationError);
}

TEST(CycleBasis, RoseIsIdentity) {
  auto b = cycle_basis(rose(4));
  EXPECT_EQ(b.matrix, IntMatrix::identity(4));
}

TEST(CycleBasis, PrismEquivalentToTableRepresentative) {
  auto g = example_prism_graph().with_lengths(std::vector<Rational>(9, 1));
  auto b = cycle_basis(g);
  EXPECT_TRUE(is_cycle_basis(g, b.matrix));
  auto q = riemann_matrix(g, b);
  EXPECT_FALSE(q.has_bridge);
  auto x = gl_equivalence(QuadForm(q.matrix), catalog()[0].q_rep);
  ASSERT_TRUE(x);
  EXPECT_EQ(QuadForm(q.matrix).transform(*x), catalog()[0].q_rep);
}

TEST(CycleBasis, Rejections) {
  EXPECT_THROW(cycle_basis(MetricGraph(2, {Edge{0, 1, 1}})), DegenerateError);
  EXPECT_THROW(cycle_basis(MetricGraph(1, {Edge{0, 0, 1}}, {1})), UnsupportedError);
}

TEST(RiemannMatrix, RoseAndExampleBasis) {
  EXPECT_EQ(riemann_matrix(rose(4), cycle_basis(rose(4))).matrix, RatMatrix::identity(4));
  // Cycles e2+e6-e3, -e1-e4+e7+e2, -e1-e5+e8+e3, e4+e9-e5.
  IntMatrix b = testing::ints(4, 9, {0, 1, -1, 0, 0, 1, 0, 0, 0,    //
                                     -1, 1, 0, -1, 0, 0, 1, 0, 0,   //
                                     -1, 0, 1, 0, -1, 0, 0, 1, 0,   //
                                     0, 0, 0, 1, -1, 0, 0, 0, 1});
  auto g = example_prism_graph();
  EXPECT_TRUE(is_cycle_basis(g, b));
  EXPECT_EQ(riemann_matrix(g, CycleBasis{b}).matrix, testing::example_prism_rebased().matrix());
}

TEST(RiemannMatrix, BridgeIsFlagged) {
  MetricGraph g(2, {Edge{0, 0, 1}, Edge{0, 1, 1}});
  auto r = riemann_matrix(g, cycle_basis(g));
  EXPECT_TRUE(r.has_bridge);
}

TEST(RiemannMatrixProperty, LinearInLengthsAndCovariant) {
  Rng rng(8);
  for (const auto& entry : catalog()) {
    std::vector<Rational> len(entry.graph.num_edges());
    for (auto& l : len) l = rng.positive_rational();
    auto g = entry.graph.with_lengths(len);
    auto q = riemann_matrix(g, entry.basis).matrix;
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(len.size()) - 1));
    auto doubled = len;
    doubled[i] *= 2;
    auto q2 = riemann_matrix(entry.graph.with_lengths(doubled), entry.basis).matrix;
    auto bi = entry.basis.matrix.col(i);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t s = 0; s < 4; ++s) EXPECT_EQ(q2(r, s) - q(r, s), len[i] * static_cast<long>(bi[r] * bi[s]));
    }
    IntMatrix u = rng.unimodular(4);
    auto ub = CycleBasis{u * entry.basis.matrix};
    auto ur = to_rational(u);
    EXPECT_EQ(riemann_matrix(g, ub).matrix, ur * q * ur.transpose());
    auto own = cycle_basis(g);
    EXPECT_TRUE(is_cycle_basis(g, own.matrix));
  }
}

// Combinatorics read off the catalog drawings:
//   row  |V| |E| loops repeated-edges
//    1    6   9    0    0
//    2    6   9    0    0
//    3    5   8    0    1
//    4    5   8    0    0
//    5    4   7    0    1
//    6    4   7    0    3
//    7    4   7    0    2
//    8    4   7    1    0
//    9    3   6    0    3
//   10    3   6    0    3
//   11    3   6    1    2
//   12    3   6    0    4
//   13    2   5    0    4
//   14    2   5    1    3
//   15    2   5    2    3
//   16    1   4    4    3
TEST(Catalog, DataReview) {
  const std::size_t table[16][4] = {{6, 9, 0, 0}, {6, 9, 0, 0}, {5, 8, 0, 1}, {5, 8, 0, 0},
                                    {4, 7, 0, 1}, {4, 7, 0, 3}, {4, 7, 0, 2}, {4, 7, 1, 0},
                                    {3, 6, 0, 3}, {3, 6, 0, 3}, {3, 6, 1, 2}, {3, 6, 0, 4},
                                    {2, 5, 0, 4}, {2, 5, 1, 3}, {2, 5, 2, 3}, {1, 4, 4, 3}};
  ASSERT_EQ(catalog().size(), 16u);
  for (const auto& e : catalog()) {
    const auto* row = table[e.index - 1];
    EXPECT_EQ(e.graph.num_vertices(), row[0]) << e.index;
    EXPECT_EQ(e.graph.num_edges(), row[1]) << e.index;
    EXPECT_EQ(e.graph.num_loops(), row[2]) << e.index;
    EXPECT_EQ(e.graph.num_repeated_edges(), row[3]) << e.index;
  }
}

TEST(Catalog, Invariants) {
  EXPECT_TRUE(catalog_self_check(false).empty());
  std::set<FVector> fs;
  for (const auto& e : catalog()) {
    EXPECT_EQ(e.graph.genus(), 4u);
    EXPECT_EQ(e.graph.num_edges() + 1 - e.graph.num_vertices(), rank(to_rational(e.basis.matrix)));
    EXPECT_EQ(riemann_matrix(e.graph, e.basis).matrix, e.q_rep.matrix());
    // Lattice basis of the cycle space: Gram determinant counts spanning trees.
    EXPECT_EQ(determinant(e.q_rep.matrix()), Rational(spanning_trees(e.graph))) << e.index;
    std::set<Label> cols;
    for (auto c : e.column_labels()) {
      EXPECT_NE(c, 0u);
      cols.insert(c);
    }
    EXPECT_EQ(cols.size(), e.cone_dim) << e.index;
    fs.insert(e.f_vector);
  }
  EXPECT_EQ(fs.size(), 16u);
  EXPECT_EQ(catalog()[0].name, "triangular prism");
  EXPECT_EQ(catalog()[0].f_vector, (FVector{{96, 198, 130, 28}}));
  EXPECT_EQ(catalog()[15].q_rep, QuadForm::identity(4));
  EXPECT_EQ(catalog()[15].cone_dim, 4u);
}

TEST(Catalog, ZonotopeAgreesWithVoronoi) {
  for (const auto& e : catalog()) {
    std::vector<IntVector> gens;
    for (std::size_t j = 0; j < e.basis.matrix.cols(); ++j) gens.push_back(e.basis.matrix.col(j));
    EXPECT_EQ(face_lattice_fvector(zonotope(gens)), e.f_vector) << e.index;
    EXPECT_EQ(face_lattice_fvector(voronoi_polytope(e.q_rep)), e.f_vector) << e.index;
  }
}

TEST(Gl4F2, Size) {
  const auto& all = gl4_f2();
  EXPECT_EQ(all.size(), 20160u);
  EXPECT_EQ(all.front().columns, F2Matrix::identity().columns);
  std::set<std::array<Label, 4>> distinct;
  for (const auto& m : all) distinct.insert(m.columns);
  EXPECT_EQ(distinct.size(), 20160u);
}

TEST(MatchCographic, PrismAndRose) {
  auto m = theta_matroid(testing::example_prism());
  auto match = match_cographic(m);
  ASSERT_TRUE(match);
  EXPECT_EQ(match->entry->name, "triangular prism");
  EXPECT_EQ(match->edge_of.size(), 9u);
  std::set<std::size_t> edges(match->edge_of.begin(), match->edge_of.end());
  EXPECT_EQ(edges.size(), 9u);

  auto rose_match = match_cographic(theta_matroid(QuadForm::identity(4)));
  ASSERT_TRUE(rose_match);
  EXPECT_EQ(rose_match->entry->index, 16);
  // The identity relabeling already works for the rose.
  auto cols = catalog()[15].column_labels();
  std::set<Label> colset(cols.begin(), cols.end());
  for (auto v : theta_matroid(QuadForm::identity(4)).labels()) EXPECT_TRUE(colset.count(v));
}

// Oracle: brute force over every invertible S and every catalog entry of
// the same size, independent of match_cographic's search order.
std::set<int> brute_force_matches(const std::vector<Label>& labels) {
  std::set<int> hits;
  std::set<Label> want(labels.begin(), labels.end());
  for (const auto& e : catalog()) {
    if (e.cone_dim != labels.size()) continue;
    auto cols = e.column_labels();
    std::set<Label> colset(cols.begin(), cols.end());
    for (const auto& s : gl4_f2()) {
      std::set<Label> image;
      for (auto v : want) image.insert(s.apply(v));
      if (image == colset) hits.insert(e.index);
    }
  }
  return hits;
}

ThetaMatroid unit_matroid(const std::vector<Label>& labels) {
  ThetaMatroid m;
  m.g = 4;
  for (auto v : labels) m.elements.push_back({v, 2});
  return m;
}

TEST(MatchCographic, FiveElementSets) {
  // e1..e4 and their sum: the five-edge banana.
  std::vector<Label> banana{1, 2, 4, 8, 15};
  EXPECT_EQ(brute_force_matches(banana), std::set<int>{13});
  auto m = match_cographic(unit_matroid(banana));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry->index, 13);

  // Rank 3: no genus 4 graph.
  std::vector<Label> flat{1, 2, 3, 4, 5};
  EXPECT_TRUE(brute_force_matches(flat).empty());
  EXPECT_FALSE(match_cographic(unit_matroid(flat)));
}

TEST(MatchCographic, SixElementSets) {
  // Six points of a Fano plane span only a 3-space.
  std::vector<Label> fano_part{1, 2, 3, 4, 5, 6};
  EXPECT_TRUE(brute_force_matches(fano_part).empty());
  EXPECT_FALSE(match_cographic(unit_matroid(fano_part)));
  std::vector<Label> triangle{1, 2, 4, 8, 3, 12};
  auto hits = brute_force_matches(triangle);
  auto m = match_cographic(unit_matroid(triangle));
  ASSERT_EQ(hits.size(), 1u);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->entry->index, *hits.begin());
}

TEST(MatchCographic, NegativeWeightsAreNotMatched) {
  auto m = theta_matroid(testing::example_non_jacobian());
  EXPECT_FALSE(match_cographic(m));
}

TEST(Dot, ContainsRedLengths) {
  auto dot = to_dot(example_prism_graph(), "prism");
  EXPECT_NE(dot.find("graph prism {"), std::string::npos);
  EXPECT_NE(dot.find("label=\"12\", fontcolor=red"), std::string::npos);
}

}  // namespace
}  // namespace schottky
