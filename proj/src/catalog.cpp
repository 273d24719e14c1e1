#include <cstdint>
#include <initializer_list>

#include "schottky/graphs.hpp"

namespace schottky {

namespace {

struct RawEntry {
  const char* name;
  std::size_t num_vertices;
  std::initializer_list<std::pair<std::size_t, std::size_t>> edges;
  std::initializer_list<long> q_rep;
  std::initializer_list<std::int64_t> basis;  // 4 rows, one column per edge
  std::array<std::size_t, 4> f_vector;
};

// Edge orders and orientations are fixed here; every basis satisfies
// B B^t = Q_rep exactly with unit lengths.
const RawEntry kRaw[16] = {
    {"triangular prism",
     6,
     {{0, 1}, {0, 2}, {0, 3}, {1, 5}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {5, 4}},
     {3, 1, -1, 0,  1, 4, 1, 1,  -1, 1, 4, -1,  0, 1, -1, 3},
     { 0,  1, -1,  0,  0,  1,  0,  0,  0,
      -1,  1,  0, -1,  0,  0,  1,  0,  0,
      -1,  0,  1,  0, -1,  0,  0,  1,  0,
       0,  0,  0, -1,  1,  0,  0,  0, -1},
     {96, 198, 130, 28}},
    {"complete bipartite graph K3,3",
     6,
     {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}},
     {4, 2, -2, -1,  2, 4, -1, -2,  -2, -1, 4, 2,  -1, -2, 2, 4},
     {-1,  0,  1,  0,  0,  0,  1,  0, -1,
      -1,  0,  1,  1,  0, -1,  0,  0,  0,
       0,  1, -1,  0,  0,  0,  0, -1,  1,
       0,  1, -1,  0, -1,  1,  0,  0,  0},
     {102, 216, 144, 30}},
    {"five vertices with one double edge",
     5,
     {{0, 2}, {3, 1}, {1, 0}, {0, 4}, {4, 3}, {4, 1}, {2, 3}, {2, 3}},
     {2, 0, -1, 0,  0, 3, 1, 1,  -1, 1, 4, -1,  0, 1, -1, 3},
     { 0,  0,  0,  0,  0,  0, -1,  1,
       0, -1,  0,  0, -1,  1,  0,  0,
      -1, -1, -1,  0,  0,  0,  0, -1,
       0,  0,  1,  1,  0,  1,  0,  0},
     {72, 150, 102, 24}},
    {"wheel with four spokes",
     5,
     {{0, 2}, {2, 3}, {3, 1}, {1, 0}, {0, 4}, {4, 3}, {2, 4}, {4, 1}},
     {3, 2, 1, -1,  2, 4, 2, -1,  1, 2, 4, 1,  -1, -1, 1, 3},
     {-1,  0,  0,  0,  1,  0, -1,  0,
      -1, -1,  0,  0,  1,  1,  0,  0,
      -1, -1, -1, -1,  0,  0,  0,  0,
       0,  0,  0, -1, -1,  0,  0, -1},
     {78, 168, 116, 26}},
    {"K4 with one doubled edge",
     4,
     {{0, 2}, {0, 1}, {0, 3}, {2, 3}, {2, 3}, {1, 3}, {1, 2}},
     {3, 1, -1, -1,  1, 3, 1, 1,  -1, 1, 3, 2,  -1, 1, 2, 3},
     {-1,  1,  0,  0,  0,  0,  1,
       0,  1, -1,  0,  0,  1,  0,
       0,  0,  0, -1,  0,  1, -1,
       0,  0,  0,  0, -1,  1, -1},
     {60, 134, 98, 24}},
    {"four-cycle with three doubled edges",
     4,
     {{0, 2}, {2, 3}, {2, 3}, {1, 3}, {1, 3}, {0, 1}, {0, 1}},
     {2, 0, -1, -1,  0, 2, -1, -1,  -1, -1, 4, 3,  -1, -1, 3, 4},
     { 0, -1,  1,  0,  0,  0,  0,
       0,  0,  0, -1,  1,  0,  0,
      -1,  0, -1,  1,  0,  0,  1,
      -1,  0, -1,  1,  0,  1,  0},
     {54, 116, 84, 22}},
    {"K4 minus an edge, two edges doubled",
     4,
     {{0, 2}, {0, 1}, {0, 3}, {2, 3}, {2, 3}, {1, 3}, {1, 3}},
     {2, 0, -1, 0,  0, 2, 0, -1,  -1, 0, 3, 1,  0, -1, 1, 3},
     { 0,  0,  0, -1,  1,  0,  0,
       0,  0,  0,  0,  0, -1,  1,
      -1,  0,  1,  0, -1,  0,  0,
       0, -1,  1,  0,  0,  0, -1},
     {54, 114, 80, 20}},
    {"K4 with a loop",
     4,
     {{0, 2}, {0, 1}, {0, 3}, {2, 3}, {1, 3}, {1, 2}, {2, 2}},
     {3, 1, -1, 0,  1, 3, 1, 0,  -1, 1, 3, 0,  0, 0, 0, 1},
     {-1,  0,  1, -1,  0,  0,  0,
      -1,  1,  0,  0,  0,  1,  0,
       0,  0,  0,  1, -1,  1,  0,
       0,  0,  0,  0,  0,  0, -1},
     {48, 96, 64, 16}},
    {"triangle with every edge doubled",
     3,
     {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}, {1, 2}},
     {2, 0, -1, -1,  0, 2, 1, 1,  -1, 1, 3, 2,  -1, 1, 2, 3},
     {-1,  1,  0,  0,  0,  0,
       0,  0, -1,  1,  0,  0,
       0, -1,  0,  1, -1,  0,
       0, -1,  0,  1,  0, -1},
     {46, 108, 84, 22}},
    {"triangle with edge multiplicities 2, 3, 1",
     3,
     {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}, {0, 2}},
     {2, -1, -1, -1,  -1, 3, 2, 2,  -1, 2, 3, 2,  -1, 2, 2, 3},
     {-1,  1,  0,  0,  0,  0,
       0, -1,  0,  0, -1,  1,
       0, -1,  0,  1, -1,  0,
       0, -1,  1,  0, -1,  0},
     {42, 94, 72, 20}},
    {"triangle with two doubled edges and a loop",
     3,
     {{0, 1}, {0, 1}, {0, 2}, {0, 2}, {1, 2}, {0, 0}},
     {2, 1, 1, 0,  1, 3, 2, 0,  1, 2, 3, 0,  0, 0, 0, 1},
     {-1,  1,  0,  0,  0,  0,
      -1,  0,  0,  1, -1,  0,
      -1,  0,  1,  0, -1,  0,
       0,  0,  0,  0,  0, -1},
     {36, 74, 52, 14}},
    {"two triple edges in series",
     3,
     {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {1, 2}, {1, 2}},
     {2, 1, 0, 0,  1, 2, 0, 0,  0, 0, 2, 1,  0, 0, 1, 2},
     {-1,  0,  1,  0,  0,  0,
      -1,  1,  0,  0,  0,  0,
       0,  0,  0, -1,  0,  1,
       0,  0,  0, -1,  1,  0},
     {36, 72, 48, 12}},
    {"five parallel edges",
     2,
     {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}},
     {2, 1, 1, 1,  1, 2, 1, 1,  1, 1, 2, 1,  1, 1, 1, 2},
     {-1,  0,  0,  0,  1,
      -1,  0,  0,  1,  0,
      -1,  0,  1,  0,  0,
      -1,  1,  0,  0,  0},
     {30, 70, 60, 20}},
    {"four parallel edges and a loop",
     2,
     {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {1, 1}},
     {2, 1, 1, 0,  1, 2, 1, 0,  1, 1, 2, 0,  0, 0, 0, 1},
     {-1,  0,  0,  1,  0,
      -1,  0,  1,  0,  0,
      -1,  1,  0,  0,  0,
       0,  0,  0,  0, -1},
     {28, 62, 48, 14}},
    {"three parallel edges and two loops",
     2,
     {{0, 1}, {0, 1}, {0, 1}, {1, 1}, {1, 1}},
     {2, 1, 0, 0,  1, 2, 0, 0,  0, 0, 1, 0,  0, 0, 0, 1},
     {-1,  0,  1,  0,  0,
      -1,  1,  0,  0,  0,
       0,  0,  0, -1,  0,
       0,  0,  0,  0, -1},
     {24, 48, 34, 10}},
    {"rose with four petals",
     1,
     {{0, 0}, {0, 0}, {0, 0}, {0, 0}},
     {1, 0, 0, 0,  0, 1, 0, 0,  0, 0, 1, 0,  0, 0, 0, 1},
     {-1,  0,  0,  0,
       0, -1,  0,  0,
       0,  0, -1,  0,
       0,  0,  0, -1},
     {16, 32, 24, 8}},
};

CatalogEntry build(int index, const RawEntry& raw) {
  std::vector<Edge> edges;
  for (const auto& [t, h] : raw.edges) edges.push_back({t, h, 1});
  MetricGraph graph(raw.num_vertices, std::move(edges));
  const std::size_t m = graph.num_edges();
  IntMatrix basis(4, m, std::vector<std::int64_t>(raw.basis));
  RatMatrix q(4, 4);
  std::size_t k = 0;
  for (long x : raw.q_rep) {
    q(k / 4, k % 4) = x;
    ++k;
  }
  return CatalogEntry{index, raw.name, std::move(graph), CycleBasis{std::move(basis)}, QuadForm(std::move(q)),
                      FVector{raw.f_vector}, m};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (int i = 0; i < 16; ++i) out.push_back(build(i + 1, kRaw[i]));
    return out;
  }();
  return entries;
}

}  // namespace schottky
