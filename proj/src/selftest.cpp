#include <algorithm>
#include <random>
#include <sstream>

#include "schottky/cli.hpp"

namespace schottky::cli {

namespace {

RatMatrix integer_matrix(std::initializer_list<long> entries) {
  RatMatrix m(4, 4);
  std::size_t k = 0;
  for (long e : entries) {
    m(k / 4, k % 4) = Rational(e);
    ++k;
  }
  return m;
}

RiemannMatrix plane_curve() {
  using C = Complex;
  CMatrix t(4, 4);
  t << C(0.16913, 1.41714), C(-0.81736, -0.25138), C(-0.05626, -0.44830), C(0.24724, 0.36327),
      C(-0.81736, -0.25138), C(-0.31319, 0.67096), C(-0.02813, -0.57155), C(0.34132, 0.40334),
      C(-0.05626, -0.44830), C(-0.02813, -0.57155), C(0.32393, 1.44947), C(-0.96494, -0.63753),
      C(0.24724, 0.36327), C(0.34132, 0.40334), C(-0.96494, -0.63753), C(0.62362, 0.73694);
  return RiemannMatrix(t);
}

Rational random_positive(std::mt19937_64& gen, long max_num, unsigned long max_den) {
  Rational r(std::uniform_int_distribution<long>(1, max_num)(gen),
             std::uniform_int_distribution<unsigned long>(1, max_den)(gen));
  r.canonicalize();
  return r;
}

QuadForm random_form(std::mt19937_64& gen) {
  std::uniform_int_distribution<long> entry(-2, 2);
  while (true) {
    RatMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = Rational(entry(gen));
    }
    RatMatrix m = a.transpose() * a;
    Rational c = random_positive(gen, 5, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, i) += Rational(std::uniform_int_distribution<long>(0, 2)(gen));
      for (std::size_t j = 0; j < 4; ++j) m(i, j) *= c;
    }
    if (is_positive_definite(m)) return QuadForm(m);
  }
}

template <class F>
SelfTestCheck guarded(std::string name, F&& body) {
  SelfTestCheck check{std::move(name), false, {}};
  try {
    check.detail = body();
    check.passed = check.detail.empty();
    if (check.passed) check.detail = "ok";
  } catch (const std::exception& e) {
    check.detail = std::string("exception: ") + e.what();
  }
  return check;
}

std::string table_check() {
  auto bad = catalog_self_check(true);
  if (bad.empty()) return {};
  std::ostringstream out;
  out << "entries disagree:";
  for (int i : bad) out << ' ' << i;
  return out.str();
}

std::string non_jacobian_check() {
  QuadForm q(integer_matrix({14, -9, 11, 0, -9, 11, -2, 1, 11, -2, 21, 11, 0, 1, 11, 14}));
  auto d = decide_tropical(q);
  if (d.verdict != Verdict::not_jacobian) return "verdict " + to_string(d.verdict);
  if (d.f_vector.to_string() != "(62,142,104,24)") return "f-vector " + d.f_vector.to_string();
  return {};
}

std::string prism_check() {
  QuadForm q(integer_matrix({17, 5, 3, 5, 5, 19, 7, 11, 3, 7, 23, 16, 5, 11, 16, 29}));
  auto d = decide_tropical(q);
  if (d.verdict != Verdict::jacobian) return "verdict " + to_string(d.verdict);
  auto r = recover_tropical(q, true);
  if (r.entry->name != "triangular prism") return "matched " + r.entry->name;
  auto got = r.graph.lengths();
  std::vector<Rational> want{7, 9, 9, 2, 3, 8, 2, 4, 12};
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  if (got != want) return "edge lengths differ";
  auto target = riemann_matrix(r.graph, r.entry->basis).matrix;
  if (q.transform(*r.basis_change).matrix() != target) return "basis change does not reproduce B D B^t";
  return {};
}

std::string identity_check(int per_graph, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (const auto& entry : catalog()) {
    auto labels = entry.column_labels();
    for (int trial = 0; trial < per_graph; ++trial) {
      std::vector<Rational> lengths;
      for (std::size_t e = 0; e < entry.graph.num_edges(); ++e) lengths.push_back(random_positive(gen, 12, 4));
      auto graph = entry.graph.with_lengths(lengths);
      QuadForm q(riemann_matrix(graph, entry.basis).matrix);
      auto theta = trop_theta_constants(q);
      auto vt = vartheta_all(q);
      for (Label u = 0; u < 16; ++u) {
        Rational cut = 0, same = 0;
        for (std::size_t e = 0; e < lengths.size(); ++e) {
          if (label_dot(labels[e], u)) cut += lengths[e];
          if (labels[e] == u) same += lengths[e];
        }
        if (theta[u] != -cut / 4) return entry.name + ": theta constant " + label_to_string(u, 4);
        if (u != 0 && vt[u] != 2 * same) return entry.name + ": vartheta " + label_to_string(u, 4);
      }
      auto r = recover_tropical(q, false);
      auto got = r.graph.lengths();
      std::sort(got.begin(), got.end());
      std::sort(lengths.begin(), lengths.end());
      if (r.entry->index != entry.index || got != lengths) return entry.name + ": round trip";
    }
  }
  return {};
}

std::string igusa_check(int forms, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (int k = 0; k < forms; ++k) {
    QuadForm q = random_form(gen);
    for (Label v = 1; v < 16; ++v) {
      auto value = tropical_igusa_form(q, admissible_family_for(v));
      bool nonnegative = vartheta(q, v) >= 0;
      if (value.breakpoint != nonnegative) {
        return "form " + std::to_string(k) + ", v = " + label_to_string(v, 4);
      }
    }
  }
  return {};
}

std::string plane_curve_check() {
  auto tau = plane_curve();
  auto d = decide_classical(tau);
  if (d.relative >= 1e-3) return "relative value " + std::to_string(d.relative);
  double largest_even = 0, largest_odd = 0;
  CVector zero = CVector::Zero(4);
  for (const auto& m : all_characteristics()) {
    double a = std::abs(theta(m, tau, zero));
    double& slot = m.is_even() ? largest_even : largest_odd;
    slot = std::max(slot, a);
  }
  if (largest_odd >= 1e-10 * largest_even) return "odd theta constant " + std::to_string(largest_odd);
  return {};
}

std::string lemma_check(unsigned threads) {
  auto r = verify_azygetic_lemma(0, "", threads);
  if (!r.complete) return "enumeration incomplete";
  if (!r.counterexamples.empty()) return "counterexample: " + r.counterexamples.front();
  return {};
}

}  // namespace

std::vector<SelfTestCheck> run_selftest(bool slow, unsigned threads) {
  std::vector<SelfTestCheck> checks;
  checks.push_back(guarded("voronoi_catalog", table_check));
  checks.push_back(guarded("non_jacobian_example", non_jacobian_check));
  checks.push_back(guarded("prism_example", prism_check));
  checks.push_back(guarded("graph_theta_identities", [&] { return identity_check(slow ? 50 : 2, 4801); }));
  checks.push_back(guarded("igusa_breakpoints", [&] { return igusa_check(slow ? 100 : 10, 4902); }));
  checks.push_back(guarded("plane_curve_theta", plane_curve_check));
  if (slow) checks.push_back(guarded("coset_lemma", [&] { return lemma_check(threads); }));
  return checks;
}

json to_json(const std::vector<SelfTestCheck>& checks) {
  json out = json::array();
  bool all = true;
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    all = all && c.passed;
  }
  return {{"checks", out}, {"passed", all}};
}

}  // namespace schottky::cli
