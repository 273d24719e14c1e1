#include "schottky/schottky_trop.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <thread>

namespace schottky {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::jacobian:
      return "jacobian";
    case Verdict::not_jacobian:
      return "not_jacobian";
    case Verdict::undecided:
      break;
  }
  return "undecided";
}

namespace {

void require_genus_four(const QuadForm& q) {
  if (q.dim() != 4) throw UnsupportedError("the tropical Schottky test is implemented for g = 4 only");
}

std::vector<VarthetaCertificate> negative_certificates(const std::vector<Rational>& values, std::size_t g) {
  std::vector<VarthetaCertificate> out;
  for (std::size_t v = 1; v < values.size(); ++v) {
    if (values[v] < 0) {
      out.push_back({static_cast<Label>(v), values[v], edge_length_from_vartheta(values[v], g)});
    }
  }
  return out;
}

}  // namespace

TropDecision decide_tropical(const QuadForm& q) {
  require_genus_four(q);
  TropDecision d;
  d.f_vector = face_lattice_fvector(voronoi_polytope(q));
  if (const auto* entry = catalog_entry_for(d.f_vector)) {
    d.verdict = Verdict::jacobian;
    d.matched_entry = entry->index;
  } else {
    d.verdict = Verdict::not_jacobian;
  }
  d.negative = negative_certificates(vartheta_all(q), q.dim());
  d.theta_nonnegative = d.negative.empty();
  if (d.verdict == Verdict::jacobian && !d.theta_nonnegative) {
    d.diagnostics.push_back("f-vector matches the catalog but some vartheta is negative");
  }
  if (d.verdict == Verdict::not_jacobian && d.theta_nonnegative) {
    d.diagnostics.push_back("all vartheta are nonnegative although the f-vector is not in the catalog");
  }
  return d;
}

TropRecovery recover_tropical(const QuadForm& q, bool want_basis) {
  require_genus_four(q);
  const auto matroid = theta_matroid(q);
  if (!matroid.realizable_by_graph()) {
    const auto& bad = matroid.negative.front();
    throw NotJacobianError("vartheta_" + label_to_string(bad.label, 4) + " = " + to_string(bad.vartheta) +
                           " is negative");
  }
  auto match = match_cographic(matroid);
  if (!match) throw InconsistencyError("theta matroid is not the cographic matroid of a catalog graph");

  const CatalogEntry& entry = *match->entry;
  std::vector<Rational> lengths(entry.graph.num_edges());
  std::vector<Label> label_of_edge(entry.graph.num_edges());
  for (std::size_t k = 0; k < matroid.elements.size(); ++k) {
    const std::size_t edge = match->edge_of[k];
    lengths[edge] = edge_length_from_vartheta(matroid.elements[k].vartheta, 4);
    label_of_edge[edge] = matroid.elements[k].label;
  }
  TropRecovery r{&entry, entry.graph.with_lengths(lengths), std::move(label_of_edge), std::nullopt, std::nullopt};

  const QuadForm target(riemann_matrix(r.graph, entry.basis).matrix);
  auto x = gl_equivalence(q, target);
  if (!x) throw InconsistencyError("recovered metric graph does not reproduce the input matrix");
  if (!want_basis) return r;

  // Solve X^t Q X = sum_i l_i b_i b_i^t for the lengths.
  const RatMatrix lhs = q.transform(*x).matrix();
  const IntMatrix& b = entry.basis.matrix;
  const std::size_t m = b.cols();
  RatMatrix system(10, m);
  RatVector rhs(10);
  std::size_t row = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j, ++row) {
      for (std::size_t e = 0; e < m; ++e) system(row, e) = static_cast<long>(b(i, e) * b(j, e));
      rhs[row] = lhs(i, j);
    }
  }
  auto solved = solve_unique(system, rhs);
  if (!solved) throw InconsistencyError("edge lengths are not uniquely determined by the basis");
  for (std::size_t e = 0; e < m; ++e) {
    if ((*solved)[e] <= 0 || (*solved)[e] != lengths[e]) {
      throw InconsistencyError("solved length of edge " + std::to_string(e + 1) + " is " + to_string((*solved)[e]) +
                               ", expected " + to_string(lengths[e]));
    }
  }
  r.basis_change = std::move(x);
  r.solved_lengths = std::vector<Rational>(solved->begin(), solved->end());
  return r;
}

IgusaMembership igusa_locus_member(const QuadForm& q) {
  require_genus_four(q);
  IgusaMembership out;
  out.negative = negative_certificates(vartheta_all(q), 4);
  out.member = out.negative.empty();
  return out;
}

std::array<Characteristic, 8> IgusaChoice::coset(std::size_t i) const {
  std::array<Characteristic, 8> out;
  for (std::uint32_t s = 0; s < 8; ++s) {
    Characteristic c = m[i];
    for (std::size_t k = 0; k < 3; ++k) {
      if ((s >> k) & 1U) c = c + n[k];
    }
    out[s] = c;
  }
  return out;
}

namespace {

std::size_t rank_f2(std::vector<std::uint32_t> rows) {
  std::size_t r = 0;
  for (std::uint32_t bit = 1; bit != 0 && bit < (1U << 16); bit <<= 1) {
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [bit](std::uint32_t x) { return (x & bit) != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    }
    ++r;
  }
  return r;
}

// The 8 tops of N.
std::array<Label, 8> projected_group(const IgusaChoice& c) {
  std::array<Label, 8> out{};
  for (std::uint32_t s = 0; s < 8; ++s) {
    Label t = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if ((s >> k) & 1U) t ^= c.n[k].top;
    }
    out[s] = t;
  }
  return out;
}

}  // namespace

std::size_t projected_rank(const IgusaChoice& c) {
  return rank_f2({c.n[0].top, c.n[1].top, c.n[2].top});
}

bool in_projected_group(const IgusaChoice& c, Label u) {
  auto group = projected_group(c);
  return std::find(group.begin(), group.end(), u) != group.end();
}

std::vector<std::string> IgusaChoice::admissibility_failures() const {
  std::vector<std::string> out;
  if (rank_f2({n[0].packed(), n[1].packed(), n[2].packed()}) != 3) out.push_back("N does not have rank 3");
  if (!is_azygetic(m[0], m[1], m[2])) out.push_back("m1, m2, m3 are not azygetic");
  for (std::size_t i = 0; i < 3; ++i) {
    auto elems = coset(i);
    if (!std::all_of(elems.begin(), elems.end(), [](const Characteristic& c) { return c.is_even(); })) {
      out.push_back("m" + std::to_string(i + 1) + " + N contains an odd characteristic");
    }
  }
  auto r = projected_rank(*this);
  if (r != 3) out.push_back("N' has rank " + std::to_string(r) + ", not 3");
  return out;
}

AdmissibleChoice::AdmissibleChoice(IgusaChoice choice) : choice_(choice) {
  auto failures = choice_.admissibility_failures();
  if (!failures.empty()) {
    std::string msg = "choice is not admissible:";
    for (const auto& f : failures) msg += " " + f + ";";
    msg.pop_back();
    throw ValidationError(msg);
  }
  for (Label v = 1; v < 16; ++v) {
    if (label_dot(v, choice_.n[0].top) == 0 && label_dot(v, choice_.n[1].top) == 0 &&
        label_dot(v, choice_.n[2].top) == 0) {
      orthogonal_ = v;
      break;
    }
  }
}

namespace {

using Rows = std::array<std::array<int, 2>, 4>;

IgusaChoice make_choice(const std::array<Rows, 6>& rows) {
  IgusaChoice c;
  for (std::size_t i = 0; i < 3; ++i) {
    c.m[i] = Characteristic::from_rows(rows[i]);
    c.n[i] = Characteristic::from_rows(rows[i + 3]);
  }
  return c;
}

// Families for v = 1000, 1100, 1110, 1111; rows are (m'_i, m''_i).
const std::array<Rows, 6> kFamilies[4] = {
    {{{{{0, 1}, {0, 0}, {0, 0}, {0, 1}}},
      {{{1, 1}, {1, 0}, {1, 1}, {0, 1}}},
      {{{0, 1}, {0, 0}, {1, 0}, {1, 0}}},
      {{{0, 1}, {1, 0}, {0, 1}, {0, 1}}},
      {{{0, 1}, {0, 0}, {1, 0}, {1, 1}}},
      {{{0, 0}, {0, 1}, {1, 0}, {0, 0}}}}},
    {{{{{0, 1}, {0, 0}, {0, 0}, {0, 1}}},
      {{{1, 1}, {1, 0}, {1, 1}, {0, 0}}},
      {{{1, 0}, {0, 0}, {0, 0}, {0, 1}}},
      {{{1, 1}, {1, 1}, {0, 1}, {1, 0}}},
      {{{0, 0}, {0, 1}, {1, 0}, {0, 0}}},
      {{{0, 0}, {0, 1}, {0, 0}, {1, 1}}}}},
    {{{{{1, 0}, {0, 0}, {0, 0}, {1, 0}}},
      {{{0, 1}, {0, 1}, {0, 1}, {1, 0}}},
      {{{0, 0}, {0, 0}, {0, 0}, {1, 0}}},
      {{{0, 0}, {0, 0}, {0, 0}, {1, 1}}},
      {{{1, 0}, {0, 0}, {1, 0}, {1, 1}}},
      {{{1, 0}, {1, 0}, {0, 0}, {0, 0}}}}},
    {{{{{1, 0}, {0, 1}, {0, 1}, {0, 0}}},
      {{{0, 1}, {0, 1}, {1, 0}, {1, 0}}},
      {{{0, 1}, {0, 0}, {0, 1}, {0, 1}}},
      {{{1, 0}, {1, 1}, {0, 0}, {0, 1}}},
      {{{1, 0}, {0, 1}, {0, 1}, {1, 0}}},
      {{{1, 1}, {0, 1}, {1, 1}, {0, 0}}}}},
};

}  // namespace

IgusaChoice classical_igusa_choice() {
  return make_choice({{{{{1, 1}, {0, 0}, {1, 1}, {0, 0}}},
                       {{{0, 1}, {0, 0}, {0, 0}, {1, 0}}},
                       {{{0, 1}, {0, 0}, {1, 1}, {1, 1}}},
                       {{{0, 1}, {0, 1}, {0, 1}, {1, 0}}},
                       {{{0, 0}, {0, 0}, {1, 0}, {1, 1}}},
                       {{{0, 1}, {0, 0}, {1, 1}, {0, 1}}}}});
}

AdmissibleChoice admissible_family_for(Label v) {
  v &= 0xFU;
  if (v == 0) throw ValidationError("v must be nonzero");
  const int weight = std::popcount(v);
  IgusaChoice base = make_choice(kFamilies[weight - 1]);
  // Send coordinates 0..weight-1 onto the support of v, the rest onto its complement.
  std::array<int, 4> perm{};
  int inside = 0, outside = weight;
  for (int i = 0; i < 4; ++i) {
    if ((v >> i) & 1U) {
      perm[static_cast<std::size_t>(inside++)] = i;
    } else {
      perm[static_cast<std::size_t>(outside++)] = i;
    }
  }
  IgusaChoice c;
  for (std::size_t i = 0; i < 3; ++i) {
    c.m[i] = permute(base.m[i], perm);
    c.n[i] = permute(base.n[i], perm);
  }
  AdmissibleChoice out(c);
  if (out.orthogonal_vector() != v) {
    throw InconsistencyError("family for " + label_to_string(v, 4) + " is orthogonal to " +
                             label_to_string(out.orthogonal_vector(), 4));
  }
  return out;
}

TropicalIgusaValue tropical_igusa_form_unchecked(const QuadForm& q, const IgusaChoice& c) {
  require_genus_four(q);
  const auto theta = trop_theta_constants(q);
  TropicalIgusaValue out;
  for (std::size_t i = 0; i < 3; ++i) {
    Rational s = 0;
    for (const auto& m : c.coset(i)) s += theta[m.top];
    out.pi[i] = s;
  }
  bool first = true;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Rational v = out.pi[static_cast<std::size_t>(i)] + out.pi[static_cast<std::size_t>(j)];
      if (first || v > out.value) {
        out.value = v;
        out.argmax_pairs.clear();
        first = false;
      }
      if (v == out.value) out.argmax_pairs.emplace_back(i + 1, j + 1);
    }
  }
  out.breakpoint = out.argmax_pairs.size() >= 2;
  return out;
}

TropicalIgusaValue tropical_igusa_form(const QuadForm& q, const AdmissibleChoice& c) {
  return tropical_igusa_form_unchecked(q, c.choice());
}

std::vector<std::pair<int, int>> equal_projection_pairs(const IgusaChoice& c) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (in_projected_group(c, c.m[static_cast<std::size_t>(i)].top ^ c.m[static_cast<std::size_t>(j)].top)) {
        out.emplace_back(i + 1, j + 1);
      }
    }
  }
  return out;
}

IgusaChoice swap_halves(const IgusaChoice& c) {
  IgusaChoice out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.m[i] = {c.m[i].bottom, c.m[i].top};
    out.n[i] = {c.n[i].bottom, c.n[i].top};
  }
  return out;
}

namespace {

// Both coset properties for three cosets c_i + N, given through their tops and
// membership in N'.
template <class InGroup>
std::string coset_properties(const std::array<Label, 3>& tops, bool full_rank, InGroup&& in_group) {
  bool same[3][3] = {};
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      same[i][j] = in_group(tops[static_cast<std::size_t>(i)] ^ tops[static_cast<std::size_t>(j)]);
      if (i < j && same[i][j]) any = true;
    }
  }
  if (!any) return "no two cosets have equal projections";
  if (!full_rank) return "";
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      int c = 3 - a - b;
      if (same[a][b] && !same[a][c]) {
        if (!in_group(tops[static_cast<std::size_t>(a)]) || !in_group(tops[static_cast<std::size_t>(b)])) {
          return "cosets " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                 " share a projection outside N'";
        }
      }
    }
  }
  return "";
}

}  // namespace

std::string check_lemma_properties(const IgusaChoice& c) {
  return coset_properties({c.m[0].top, c.m[1].top, c.m[2].top}, projected_rank(c) == 3,
                          [&](Label u) { return in_projected_group(c, u); });
}

namespace {

// Rank-3 subgroups of (Z/2Z)^8 as reduced row echelon bases, in a fixed order.
const std::vector<std::array<std::uint32_t, 3>>& rank_three_subgroups() {
  static const std::vector<std::array<std::uint32_t, 3>> all = [] {
    std::vector<std::array<std::uint32_t, 3>> out;
    for (int p0 = 0; p0 < 8; ++p0) {
      for (int p1 = p0 + 1; p1 < 8; ++p1) {
        for (int p2 = p1 + 1; p2 < 8; ++p2) {
          const int pivots[3] = {p0, p1, p2};
          std::vector<int> free_bits[3];
          for (int r = 0; r < 3; ++r) {
            for (int b = pivots[r] + 1; b < 8; ++b) {
              if (b != p1 && b != p2) free_bits[r].push_back(b);
            }
          }
          const std::size_t f0 = free_bits[0].size(), f1 = free_bits[1].size(), f2 = free_bits[2].size();
          for (std::uint32_t a = 0; a < (1U << f0); ++a) {
            for (std::uint32_t b = 0; b < (1U << f1); ++b) {
              for (std::uint32_t c = 0; c < (1U << f2); ++c) {
                std::array<std::uint32_t, 3> rows{1U << p0, 1U << p1, 1U << p2};
                const std::uint32_t masks[3] = {a, b, c};
                for (int r = 0; r < 3; ++r) {
                  for (std::size_t k = 0; k < free_bits[r].size(); ++k) {
                    if ((masks[r] >> k) & 1U) rows[static_cast<std::size_t>(r)] |= 1U << free_bits[r][k];
                  }
                }
                out.push_back(rows);
              }
            }
          }
        }
      }
    }
    return out;
  }();
  return all;
}

bool packed_even(std::uint32_t bits) { return Characteristic::from_packed(bits).is_even(); }

void examine_subgroup(const std::array<std::uint32_t, 3>& gens, LemmaReport& report) {
  std::array<std::uint32_t, 8> group{};
  for (std::uint32_t s = 0; s < 8; ++s) {
    std::uint32_t x = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if ((s >> k) & 1U) x ^= gens[k];
    }
    group[s] = x;
  }
  bool top_group[16] = {};
  for (auto x : group) top_group[x & 0xFU] = true;
  const bool full_rank = std::count(std::begin(top_group), std::end(top_group), true) == 8;

  // Coset representatives (minimal element) and their parity type.
  std::vector<std::uint32_t> even_cosets;
  bool seen[256] = {};
  bool has_odd[256] = {};
  for (std::uint32_t c = 0; c < 256; ++c) {
    if (seen[c]) continue;
    bool all_even = true, any_odd = false;
    for (auto x : group) {
      seen[c ^ x] = true;
      bool even = packed_even(c ^ x);
      all_even = all_even && even;
      any_odd = any_odd || !even;
    }
    has_odd[c] = any_odd;
    if (all_even) even_cosets.push_back(c);
  }
  if (even_cosets.size() >= 3) ++report.matching_subgroups;

  auto coset_min = [&](std::uint32_t c) {
    std::uint32_t best = c;
    for (auto x : group) best = std::min(best, c ^ x);
    return best;
  };
  auto in_group = [&](Label u) { return top_group[u & 0xFU]; };

  for (std::size_t i = 0; i < even_cosets.size(); ++i) {
    for (std::size_t j = i + 1; j < even_cosets.size(); ++j) {
      for (std::size_t k = j + 1; k < even_cosets.size(); ++k) {
        const std::uint32_t a = even_cosets[i], b = even_cosets[j], c = even_cosets[k];
        if (!has_odd[coset_min(a ^ b ^ c)]) continue;
        ++report.azygetic_triples;
        const std::array<Label, 3> tops{a & 0xFU, b & 0xFU, c & 0xFU};
        if (full_rank) {
          for (int x = 0; x < 3; ++x) {
            for (int y = x + 1; y < 3; ++y) {
              int z = 3 - x - y;
              if (in_group(tops[static_cast<std::size_t>(x)] ^ tops[static_cast<std::size_t>(y)]) &&
                  !in_group(tops[static_cast<std::size_t>(x)] ^ tops[static_cast<std::size_t>(z)])) {
                ++report.property_two_cases;
              }
            }
          }
        }
        auto failure = coset_properties(tops, full_rank, in_group);
        if (!failure.empty() && report.counterexamples.size() < 20) {
          std::ostringstream msg;
          msg << "N = <" << gens[0] << "," << gens[1] << "," << gens[2] << ">, cosets " << a << "," << b << ","
              << c << ": " << failure;
          report.counterexamples.push_back(msg.str());
        }
      }
    }
  }
}

constexpr const char* kTokenPrefix = "azygetic-v1:";

}  // namespace

LemmaReport verify_azygetic_lemma(std::size_t budget, const std::string& resume_token, unsigned threads) {
  const auto& subgroups = rank_three_subgroups();
  LemmaReport report;
  report.subgroups_total = subgroups.size();

  std::size_t start = 0;
  if (!resume_token.empty()) {
    const std::string prefix(kTokenPrefix);
    if (resume_token.rfind(prefix, 0) != 0) throw ValidationError("unrecognized resume token");
    try {
      start = std::stoul(resume_token.substr(prefix.size()));
    } catch (const std::exception&) {
      throw ValidationError("unrecognized resume token");
    }
    if (start > subgroups.size()) throw ValidationError("resume token out of range");
  }
  std::size_t stop = subgroups.size();
  if (budget > 0) stop = std::min(stop, start + budget);

  threads = std::max(1U, threads);
  const std::size_t span = stop - start;
  std::vector<LemmaReport> parts(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = start + span * t / threads, hi = start + span * (t + 1) / threads;
    auto work = [&, lo, hi, t] {
      for (std::size_t i = lo; i < hi; ++i) examine_subgroup(subgroups[i], parts[t]);
    };
    if (threads == 1) {
      work();
    } else {
      workers.emplace_back(work);
    }
  }
  for (auto& w : workers) w.join();
  for (const auto& p : parts) {
    report.matching_subgroups += p.matching_subgroups;
    report.azygetic_triples += p.azygetic_triples;
    report.property_two_cases += p.property_two_cases;
    for (const auto& c : p.counterexamples) {
      if (report.counterexamples.size() < 20) report.counterexamples.push_back(c);
    }
  }
  report.subgroups_examined = span;
  report.complete = stop == subgroups.size();
  if (!report.complete) report.resume_token = kTokenPrefix + std::to_string(stop);
  return report;
}

}  // namespace schottky
