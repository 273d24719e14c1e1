#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "fixtures.hpp"
#include "schottky/schottky_trop.hpp"

namespace schottky {
namespace {

using testing::Rng;

RatMatrix graph_form(const CatalogEntry& e, const std::vector<Rational>& lengths) {
  return riemann_matrix(e.graph.with_lengths(lengths), e.basis).matrix;
}

std::vector<Rational> random_lengths(Rng& rng, std::size_t m) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(rng.positive_rational(12, 4));
  return out;
}

Label column_label(const IntMatrix& b, std::size_t e) {
  Label l = 0;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (b(i, e) % 2 != 0) l |= 1U << i;
  }
  return l;
}

TEST(DecideTropical, NonJacobianExample) {
  auto d = decide_tropical(testing::example_non_jacobian());
  EXPECT_EQ(d.verdict, Verdict::not_jacobian);
  EXPECT_EQ(d.f_vector.to_string(), "(62,142,104,24)");
  EXPECT_FALSE(d.matched_entry.has_value());
  EXPECT_FALSE(d.theta_nonnegative);
  auto it = std::find_if(d.negative.begin(), d.negative.end(),
                         [](const VarthetaCertificate& c) { return label_to_string(c.v, 4) == "0001"; });
  ASSERT_NE(it, d.negative.end());
  EXPECT_EQ(it->vartheta, Rational(-1));
  EXPECT_EQ(it->edge_scaled, make_rational(-1, 2));
  // Independent brute force over a box also finds 1010 and 1011 at -1.
  std::set<std::string> labels;
  for (const auto& c : d.negative) {
    labels.insert(label_to_string(c.v, 4));
    EXPECT_EQ(c.vartheta, -1);
  }
  EXPECT_EQ(labels, (std::set<std::string>{"0001", "1010", "1011"}));
  EXPECT_TRUE(d.diagnostics.empty());
}

TEST(DecideTropical, PrismIsJacobian) {
  auto d = decide_tropical(testing::example_prism());
  EXPECT_EQ(d.verdict, Verdict::jacobian);
  EXPECT_EQ(d.matched_entry, 1);
  EXPECT_TRUE(d.theta_nonnegative);
  EXPECT_EQ(to_string(d.verdict), "jacobian");
}

TEST(DecideTropical, RejectsOtherGenus) {
  EXPECT_THROW(decide_tropical(QuadForm(RatMatrix::identity(3))), UnsupportedError);
  EXPECT_THROW(recover_tropical(QuadForm(RatMatrix::identity(5)), false), UnsupportedError);
}

TEST(DecideTropical, VerdictIsInvariantUnderBasisChangeAndScaling) {
  Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    QuadForm q = rng.pd_form(4, 2);
    auto base = decide_tropical(q);
    auto moved = decide_tropical(q.transform(rng.unimodular(4)));
    auto scaled = decide_tropical(q.scaled(rng.positive_rational(7, 3)));
    EXPECT_EQ(base.verdict, moved.verdict);
    EXPECT_EQ(base.f_vector, moved.f_vector);
    EXPECT_EQ(base.verdict, scaled.verdict);
    EXPECT_EQ(base.theta_nonnegative, moved.theta_nonnegative);
  }
}

TEST(DecideTropical, JacobianImpliesNonnegativeVartheta) {
  Rng rng(42);
  int jacobians = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto d = decide_tropical(rng.pd_form(4, 2));
    if (d.verdict == Verdict::jacobian) {
      ++jacobians;
      EXPECT_TRUE(d.theta_nonnegative);
    }
  }
  SUCCEED() << jacobians << " random Jacobians";
}

TEST(RecoverTropical, PrismExample) {
  auto r = recover_tropical(testing::example_prism(), true);
  ASSERT_NE(r.entry, nullptr);
  EXPECT_EQ(r.entry->index, 1);
  auto lengths = r.graph.lengths();
  auto sorted = lengths;
  auto expected = testing::prism_lengths();
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(sorted, expected);
  ASSERT_TRUE(r.solved_lengths.has_value());
  EXPECT_EQ(*r.solved_lengths, lengths);
  ASSERT_TRUE(r.basis_change.has_value());
  EXPECT_EQ(std::abs(determinant(*r.basis_change).get_si()), 1);
  EXPECT_EQ(testing::example_prism().transform(*r.basis_change).matrix(), graph_form(*r.entry, lengths));
}

TEST(RecoverTropical, RoseFromIdentity) {
  for (long c : {1L, 3L}) {
    RatMatrix m = RatMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = c;
    auto r = recover_tropical(QuadForm(m), true);
    EXPECT_EQ(r.entry->index, 16);
    for (const auto& l : r.graph.lengths()) EXPECT_EQ(l, Rational(c));
  }
}

TEST(RecoverTropical, NonJacobianThrows) {
  EXPECT_THROW(recover_tropical(testing::example_non_jacobian(), false), NotJacobianError);
}

TEST(RecoverTropical, RoundTripOverCatalog) {
  Rng rng(43);
  for (const auto& entry : catalog()) {
    for (int trial = 0; trial < 4; ++trial) {
      auto lengths = random_lengths(rng, entry.graph.num_edges());
      QuadForm q(graph_form(entry, lengths));
      q = q.transform(rng.unimodular(4));
      auto r = recover_tropical(q, trial == 0);
      ASSERT_EQ(r.entry->index, entry.index);
      // Lengths agree up to a graph automorphism; the Riemann matrices agree exactly up to GL.
      auto got = r.graph.lengths();
      auto want = lengths;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      EXPECT_EQ(got, want) << entry.name;
      EXPECT_TRUE(gl_equivalence(q, QuadForm(graph_form(entry, r.graph.lengths()))).has_value());
      if (trial == 0) EXPECT_EQ(*r.solved_lengths, r.graph.lengths());
      auto d = decide_tropical(q);
      EXPECT_EQ(d.verdict, Verdict::jacobian);
      EXPECT_EQ(d.matched_entry, entry.index);
    }
  }
}

// Oracle from the structure of graph forms: Theta_u(B D B^t) = -1/4 * sum of
// lengths over edges whose basis column has odd product with u.
TEST(GraphForms, ThetaConstantsFromLengths) {
  Rng rng(44);
  for (const auto& entry : catalog()) {
    auto lengths = random_lengths(rng, entry.graph.num_edges());
    QuadForm q(graph_form(entry, lengths));
    auto theta = trop_theta_constants(q);
    auto vt = vartheta_all(q);
    for (Label u = 0; u < 16; ++u) {
      Rational cut = 0, same = 0;
      for (std::size_t e = 0; e < lengths.size(); ++e) {
        Label col = column_label(entry.basis.matrix, e);
        if (label_dot(col, u)) cut += lengths[e];
        if (col == u) same += lengths[e];
      }
      EXPECT_EQ(theta[u], -cut / 4) << entry.name << " u=" << u;
      if (u != 0) EXPECT_EQ(vt[u], 2 * same) << entry.name << " v=" << u;
    }
  }
}

TEST(Characteristics, ParityCounts) {
  EXPECT_EQ(all_characteristics().size(), 256u);
  EXPECT_EQ(even_characteristics().size(), 136u);
  EXPECT_EQ(odd_characteristics().size(), 120u);
  for (std::uint32_t bits = 0; bits < 256; ++bits) {
    auto m = Characteristic::from_packed(bits);
    EXPECT_EQ(m.packed(), bits);
  }
}

TEST(Characteristics, RowsAndStrings) {
  auto m = Characteristic::from_rows({{{1, 0}, {0, 1}, {1, 1}, {0, 0}}});
  EXPECT_EQ(m.to_string(), "1010|0110");
  EXPECT_TRUE(m.is_odd());
  auto p = permute(m, {3, 2, 1, 0});
  EXPECT_EQ(p.to_string(), "0101|0110");
}

TEST(Characteristics, AzygeticDefinition) {
  // Oracle: e(a)e(b)e(c)e(a+b+c) = -1, checked by explicit dot products.
  Rng rng(45);
  for (int t = 0; t < 500; ++t) {
    auto pick = [&] { return Characteristic::from_packed(static_cast<std::uint32_t>(rng.uniform(0, 255))); };
    auto a = pick(), b = pick(), c = pick();
    auto dot = [](const Characteristic& m) { return std::popcount(m.top & m.bottom) % 2; };
    auto s = a + b + c;
    EXPECT_EQ(is_azygetic(a, b, c), (dot(a) + dot(b) + dot(c) + dot(s)) % 2 == 1);
  }
}

TEST(IgusaChoices, ClassicalChoiceStructure) {
  auto c = classical_igusa_choice();
  EXPECT_EQ(projected_rank(c), 2u);
  EXPECT_TRUE(is_azygetic(c.m[0], c.m[1], c.m[2]));
  auto pairs = equal_projection_pairs(c);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0], std::make_pair(2, 3));
  EXPECT_THROW(AdmissibleChoice{c}, ValidationError);

  auto s = swap_halves(c);
  EXPECT_EQ(projected_rank(s), 3u);
  EXPECT_TRUE(in_projected_group(s, s.m[0].top));
  EXPECT_TRUE(in_projected_group(s, s.m[2].top));
  EXPECT_FALSE(in_projected_group(s, s.m[1].top));
  EXPECT_EQ(check_lemma_properties(s), "");
  EXPECT_EQ(check_lemma_properties(c), "");
}

TEST(IgusaChoices, EveryFamilyIsAdmissible) {
  for (Label v = 1; v < 16; ++v) {
    auto a = admissible_family_for(v);
    EXPECT_EQ(a.orthogonal_vector(), v);
    EXPECT_TRUE(a.choice().admissibility_failures().empty());
    for (std::size_t i = 0; i < 3; ++i) {
      for (const auto& m : a.choice().coset(i)) EXPECT_TRUE(m.is_even());
    }
  }
  EXPECT_THROW(admissible_family_for(0), ValidationError);
}

TEST(IgusaChoices, FailuresAreListed) {
  IgusaChoice c = admissible_family_for(1).choice();
  c.n[2] = c.n[0] + c.n[1];
  auto f = c.admissibility_failures();
  EXPECT_FALSE(f.empty());
  EXPECT_EQ(f.front(), "N does not have rank 3");
}

TEST(TropicalIgusa, BreakpointIffVarthetaNonnegative) {
  Rng rng(46);
  for (int trial = 0; trial < 12; ++trial) {
    QuadForm q = rng.pd_form(4, 2, trial % 3 == 0);
    auto vt = vartheta_all(q);
    auto theta = trop_theta_constants(q);
    for (Label v = 1; v < 16; ++v) {
      auto val = tropical_igusa_form(q, admissible_family_for(v));
      EXPECT_EQ(val.breakpoint, vt[v] >= 0) << "v=" << v;
      // Each pi is one of the two coset sums over N' and its complement.
      Rational inside = 0, outside = 0;
      for (Label u = 0; u < 16; ++u) (label_dot(u, v) ? outside : inside) += theta[u];
      for (const auto& p : val.pi) EXPECT_TRUE(p == inside || p == outside);
      EXPECT_EQ(inside - outside, vt[v]);
    }
  }
}

TEST(TropicalIgusa, LocusContainment) {
  Rng rng(47);
  for (const auto& entry : catalog()) {
    QuadForm q(graph_form(entry, random_lengths(rng, entry.graph.num_edges())));
    EXPECT_TRUE(igusa_locus_member(q).member) << entry.name;
  }
  auto m = igusa_locus_member(testing::example_non_jacobian());
  EXPECT_FALSE(m.member);
  EXPECT_EQ(m.negative.size(), decide_tropical(testing::example_non_jacobian()).negative.size());
}

TEST(TropicalIgusa, ArgmaxPairsAreConsistent) {
  auto q = testing::example_prism();
  auto val = tropical_igusa_form(q, admissible_family_for(parse_label("1000")));
  for (auto [i, j] : val.argmax_pairs) {
    EXPECT_LE(i, j);
    EXPECT_EQ(val.pi[static_cast<std::size_t>(i - 1)] + val.pi[static_cast<std::size_t>(j - 1)], val.value);
  }
}

// Totals frozen from an independent enumeration of subgroups as point sets.
TEST(AzygeticLemma, ExhaustiveRun) {
  auto r = verify_azygetic_lemma(0, "", 2);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.resume_token.empty());
  EXPECT_EQ(r.subgroups_examined, 97155u);
  EXPECT_EQ(r.matching_subgroups, 11475u);
  EXPECT_EQ(r.azygetic_triples, 11475u);
  EXPECT_EQ(r.property_two_cases, 7680u);
  EXPECT_TRUE(r.counterexamples.empty());
}

TEST(AzygeticLemma, ResumeMatchesSingleRun) {
  auto first = verify_azygetic_lemma(400);
  EXPECT_EQ(first.subgroups_total, 97155u);
  EXPECT_EQ(first.subgroups_examined, 400u);
  EXPECT_FALSE(first.complete);
  auto second = verify_azygetic_lemma(400, first.resume_token);
  auto both = verify_azygetic_lemma(800, "", 3);
  EXPECT_EQ(first.azygetic_triples + second.azygetic_triples, both.azygetic_triples);
  EXPECT_EQ(first.matching_subgroups + second.matching_subgroups, both.matching_subgroups);
  EXPECT_TRUE(both.counterexamples.empty());
  EXPECT_THROW(verify_azygetic_lemma(1, "bogus"), ValidationError);
}

}  // namespace
}  // namespace schottky
