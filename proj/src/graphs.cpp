#include "schottky/graphs.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace schottky {

MetricGraph::MetricGraph(std::size_t num_vertices, std::vector<Edge> edges,
                         std::vector<std::uint32_t> weights)
    : num_vertices_(num_vertices), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (weights_.empty()) weights_.assign(num_vertices_, 0);
  if (weights_.size() != num_vertices_) throw ValidationError("one weight per vertex required");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.tail >= num_vertices_ || e.head >= num_vertices_) {
      throw ValidationError("edge " + std::to_string(i + 1) + " has an endpoint out of range");
    }
    if (e.length <= 0) {
      throw ValidationError("edge " + std::to_string(i + 1) + " has non-positive length " + to_string(e.length));
    }
  }
}

bool MetricGraph::has_weights() const {
  return std::any_of(weights_.begin(), weights_.end(), [](std::uint32_t w) { return w != 0; });
}

bool MetricGraph::is_connected() const {
  if (num_vertices_ == 0) return false;
  std::vector<std::size_t> parent(num_vertices_);
  for (std::size_t v = 0; v < num_vertices_; ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = num_vertices_;
  for (const auto& e : edges_) {
    auto a = find(e.tail), b = find(e.head);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::size_t MetricGraph::genus() const {
  if (!is_connected()) throw StructuralError("genus is defined for connected graphs only");
  std::size_t w = 0;
  for (auto x : weights_) w += x;
  return edges_.size() + 1 + w - num_vertices_;
}

std::vector<Rational> MetricGraph::lengths() const {
  std::vector<Rational> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.length);
  return out;
}

MetricGraph MetricGraph::with_lengths(std::span<const Rational> lengths) const {
  if (lengths.size() != edges_.size()) throw ValidationError("one length per edge required");
  std::vector<Edge> edges = edges_;
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].length = lengths[i];
  return MetricGraph(num_vertices_, std::move(edges), weights_);
}

std::size_t MetricGraph::num_loops() const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); }));
}

std::size_t MetricGraph::num_repeated_edges() const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t repeats = 0;
  for (const auto& e : edges_) {
    auto key = std::minmax(e.tail, e.head);
    if (!seen.insert(key).second) ++repeats;
  }
  return repeats;
}

CycleBasis cycle_basis(const MetricGraph& g) {
  if (g.has_weights()) throw UnsupportedError("cycle bases of weighted graphs are not supported");
  const std::size_t genus = g.genus();
  if (genus == 0) throw DegenerateError("graph has no cycles");

  const auto& edges = g.edges();
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].is_loop()) continue;
    incident[edges[i].tail].push_back(i);
    incident[edges[i].head].push_back(i);
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent_edge(n, kNone), depth(n, 0);
  std::vector<bool> seen(n, false), tree(edges.size(), false);
  std::queue<std::size_t> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop();
    for (auto i : incident[v]) {
      std::size_t w = edges[i].tail == v ? edges[i].head : edges[i].tail;
      if (seen[w]) continue;
      seen[w] = true;
      tree[i] = true;
      parent_edge[w] = i;
      depth[w] = depth[v] + 1;
      queue.push(w);
    }
  }
  auto parent_of = [&](std::size_t v) {
    const auto& e = edges[parent_edge[v]];
    return e.tail == v ? e.head : e.tail;
  };

  IntMatrix b(genus, edges.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (tree[i]) continue;
    b(row, i) = 1;
    // Walk head -> tail through the tree: up from head, then down to tail.
    std::size_t up = edges[i].head, down = edges[i].tail;
    std::vector<std::size_t> descent;
    while (up != down) {
      if (depth[up] >= depth[down]) {
        const auto& e = edges[parent_edge[up]];
        b(row, parent_edge[up]) += e.tail == up ? 1 : -1;
        up = parent_of(up);
      } else {
        descent.push_back(down);
        down = parent_of(down);
      }
    }
    for (auto v : descent) {
      const auto& e = edges[parent_edge[v]];
      b(row, parent_edge[v]) += e.head == v ? 1 : -1;
    }
    ++row;
  }
  return {std::move(b)};
}

bool is_cycle_basis(const MetricGraph& g, const IntMatrix& b) {
  const auto& edges = g.edges();
  if (b.cols() != edges.size() || b.rows() != g.genus()) return false;
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::vector<std::int64_t> flow(g.num_vertices(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      flow[edges[i].tail] -= b(r, i);
      flow[edges[i].head] += b(r, i);
    }
    if (std::any_of(flow.begin(), flow.end(), [](std::int64_t f) { return f != 0; })) return false;
  }
  return rank(to_rational(b)) == b.rows();
}

GraphRiemannMatrix riemann_matrix(const MetricGraph& g, const CycleBasis& basis) {
  const IntMatrix& b = basis.matrix;
  if (b.cols() != g.num_edges()) throw StructuralError("cycle basis does not match the edge count");
  const auto& edges = g.edges();
  GraphRiemannMatrix out{RatMatrix(b.rows(), b.rows()), false};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    bool zero = true;
    for (std::size_t r = 0; r < b.rows(); ++r) {
      if (b(r, i) == 0) continue;
      zero = false;
      for (std::size_t s = 0; s < b.rows(); ++s) {
        if (b(s, i) != 0) out.matrix(r, s) += edges[i].length * static_cast<long>(b(r, i) * b(s, i));
      }
    }
    if (zero) out.has_bridge = true;
  }
  return out;
}

std::vector<Label> CatalogEntry::column_labels() const {
  std::vector<Label> out;
  for (std::size_t j = 0; j < basis.matrix.cols(); ++j) out.push_back(label_from_vector(basis.matrix.col(j)));
  return out;
}

const CatalogEntry* catalog_entry_for(const FVector& f) {
  for (const auto& e : catalog()) {
    if (e.f_vector == f) return &e;
  }
  return nullptr;
}

std::vector<int> catalog_self_check(bool recompute_polytopes) {
  std::vector<int> bad;
  for (const auto& e : catalog()) {
    bool ok = e.graph.genus() == 4 && is_cycle_basis(e.graph, e.basis.matrix) &&
              riemann_matrix(e.graph, e.basis).matrix == e.q_rep.matrix() &&
              e.cone_dim == e.graph.num_edges() && e.f_vector.satisfies_euler();
    if (ok && recompute_polytopes) ok = face_lattice_fvector(voronoi_polytope(e.q_rep)) == e.f_vector;
    if (!ok) bad.push_back(e.index);
  }
  return bad;
}

Label F2Matrix::apply(Label v) const {
  Label out = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    if ((v >> j) & 1U) out ^= columns[j];
  }
  return out;
}

F2Matrix F2Matrix::identity() { return F2Matrix{{1, 2, 4, 8}}; }

const std::vector<F2Matrix>& gl4_f2() {
  static const std::vector<F2Matrix> all = [] {
    std::vector<F2Matrix> out;
    out.push_back(F2Matrix::identity());
    for (Label c0 = 1; c0 < 16; ++c0) {
      for (Label c1 = 1; c1 < 16; ++c1) {
        if (c1 == c0) continue;
        for (Label c2 = 1; c2 < 16; ++c2) {
          if (c2 == c0 || c2 == c1 || c2 == (c0 ^ c1)) continue;
          Label span3[8] = {0, c0, c1, c0 ^ c1, c2, c2 ^ c0, c2 ^ c1, c2 ^ c0 ^ c1};
          for (Label c3 = 1; c3 < 16; ++c3) {
            if (std::find(std::begin(span3), std::end(span3), c3) != std::end(span3)) continue;
            F2Matrix m{{c0, c1, c2, c3}};
            if (m.columns != F2Matrix::identity().columns) out.push_back(m);
          }
        }
      }
    }
    return out;
  }();
  return all;
}

std::optional<CographicMatch> match_cographic(const ThetaMatroid& m) {
  if (m.g != 4) throw UnsupportedError("cographic matching is implemented for g = 4");
  if (!m.realizable_by_graph()) return std::nullopt;
  const auto labels = m.labels();
  for (const auto& entry : catalog()) {
    if (entry.cone_dim != labels.size()) continue;
    const auto columns = entry.column_labels();
    std::map<Label, std::size_t> edge_by_label;
    for (std::size_t j = 0; j < columns.size(); ++j) edge_by_label.emplace(columns[j], j);
    for (const auto& s : gl4_f2()) {
      CographicMatch match{&entry, s, {}};
      for (auto v : labels) {
        auto it = edge_by_label.find(s.apply(v));
        if (it == edge_by_label.end()) break;
        match.edge_of.push_back(it->second);
      }
      if (match.edge_of.size() == labels.size()) return match;
    }
  }
  return std::nullopt;
}

std::string to_dot(const MetricGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  out << "  node [shape=circle, style=filled, fillcolor=black, fontcolor=white, width=0.3];\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out << "  v" << v << " [label=\"" << v << "\"];\n";
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edges()[i];
    out << "  v" << e.tail << " -- v" << e.head << " [label=\"" << to_string(e.length)
        << "\", fontcolor=red, tooltip=\"e" << (i + 1) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace schottky
