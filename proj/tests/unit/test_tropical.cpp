#include <gtest/gtest.h>

#include <map>
#include <set>

#include "fixtures.hpp"
#include "schottky/tropical.hpp"

namespace schottky {
namespace {

using testing::Rng;

const char* const kLabels[15] = {"0001", "0010", "0011", "0100", "0101", "0110", "0111", "1000",
                                 "1001", "1010", "1011", "1100", "1101", "1110", "1111"};

// Oracle: max over a box of l^t Q x - l^t Q l / 2.
Rational theta_by_scan(const QuadForm& q, const RatVector& x, std::int64_t r) {
  Rational best;
  bool first = true;
  IntVector l(4, -r);
  while (true) {
    Rational lx = 0;
    RatVector lq(4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) lq[i] += Rational(static_cast<long>(l[j])) * q(j, i);
    }
    Rational ll = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      lx += lq[i] * x[i];
      ll += lq[i] * Rational(static_cast<long>(l[i]));
    }
    Rational v = lx - ll / 2;
    if (first || v > best) best = v;
    first = false;
    std::size_t k = 4;
    while (k > 0 && l[k - 1] == r) l[--k] = -r;
    if (k == 0) break;
    ++l[k - 1];
  }
  return best;
}

TEST(Labels, StringConvention) {
  EXPECT_EQ(parse_label("0001"), 8u);
  EXPECT_EQ(label_to_string(8, 4), "0001");
  EXPECT_EQ(label_to_vector(parse_label("1100"), 4), (IntVector{1, 1, 0, 0}));
  EXPECT_THROW(parse_label("012"), ValidationError);
}

TEST(TropicalTheta, Trivial) {
  auto q = testing::example_prism();
  EXPECT_EQ(tropical_theta(q, RatVector(4, 0)), 0);
  EXPECT_EQ(tropical_theta(QuadForm::identity(4), RatVector{Rational(1, 2), 0, 0, 0}), 0);
}

TEST(TropicalTheta, BridgeToThetaConstant) {
  auto q = testing::example_prism();
  IntVector u{0, 0, 1, 1};
  RatVector half{0, 0, Rational(1, 2), Rational(1, 2)};
  Rational lhs = tropical_theta(q, half);
  Rational rhs = (q.norm(std::span<const std::int64_t>(u)) / 4 + trop_theta_constant(q, u)) / 2;
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs, theta_by_scan(q, half, 3));
}

TEST(TropicalThetaProperty, MatchesBoxScan) {
  Rng rng(3);
  for (int t = 0; t < 15; ++t) {
    auto q = rng.pd_form(4, 1);
    RatVector x(4);
    for (auto& c : x) c = rng.rational(3, 4);
    EXPECT_EQ(tropical_theta(q, x), theta_by_scan(q, x, 4)) << "trial " << t;
  }
}

TEST(ThetaConstants, PrismTable) {
  const Rational expected[15] = {Rational(-29, 4), Rational(-23, 4), -5, Rational(-19, 4), Rational(-13, 2),
                                 -7, Rational(-31, 4), Rational(-17, 4), -9, Rational(-17, 2),
                                 Rational(-33, 4), Rational(-13, 2), Rational(-43, 4), Rational(-41, 4),
                                 Rational(-21, 2)};
  auto q = testing::example_prism();
  auto all = trop_theta_constants(q);
  EXPECT_EQ(all[0], 0);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(all[parse_label(kLabels[i])], expected[i]) << kLabels[i];
}

TEST(Vartheta, PrismHalfValues) {
  const long expected_half[15] = {9, 7, 9, 8, 2, 0, 4, 12, 0, 0, 0, 0, 2, 0, 3};
  auto q = testing::example_prism();
  auto all = vartheta_all(q);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(all[parse_label(kLabels[i])] / 2, expected_half[i]) << kLabels[i];
  EXPECT_EQ(vartheta(q, parse_label("1000")), 24);
}

// Independent box-scan oracle gives -1; the length-scaled value is -1/2.
TEST(Vartheta, NonJacobianHasNegativeValue) {
  auto v = vartheta(testing::example_non_jacobian(), parse_label("0001"));
  EXPECT_EQ(v, -1);
  EXPECT_EQ(edge_length_from_vartheta(v, 4), Rational(-1, 2));
}

// Direct 16-term summation for the identity form: Theta_u = -|u|/4.
TEST(Vartheta, IdentityDirectSum) {
  auto q = QuadForm::identity(4);
  for (Label v = 1; v < 16; ++v) {
    Rational sum = 0;
    for (Label u = 0; u < 16; ++u) {
      Rational theta(-std::popcount(u), 4);
      theta.canonicalize();
      EXPECT_EQ(trop_theta_constant(q, u), theta);
      sum += label_dot(u, v) ? -theta : theta;
    }
    EXPECT_EQ(vartheta(q, v), sum);
    EXPECT_EQ(sum, std::popcount(v) == 1 ? Rational(2) : Rational(0));
  }
  EXPECT_EQ(edge_length_from_vartheta(2, 4), 1);
}

TEST(ThetaMatroid, Examples) {
  auto prism = theta_matroid(testing::example_prism());
  EXPECT_EQ(prism.elements.size(), 9u);
  EXPECT_TRUE(prism.realizable_by_graph());
  std::map<std::string, Rational> weights;
  for (const auto& e : prism.elements) weights[label_to_string(e.label, 4)] = e.vartheta / 2;
  std::map<std::string, Rational> want{{"0001", 9}, {"0010", 7}, {"0011", 9}, {"0100", 8}, {"0101", 2},
                                       {"0111", 4}, {"1000", 12}, {"1101", 2}, {"1111", 3}};
  EXPECT_EQ(weights, want);

  auto rose = theta_matroid(QuadForm::identity(4));
  EXPECT_EQ(rose.labels(), (std::vector<Label>{1, 2, 4, 8}));

  auto bad = theta_matroid(testing::example_non_jacobian());
  EXPECT_FALSE(bad.realizable_by_graph());
}

TEST(ThetaConstantProperty, NonPositiveAndPeriodic) {
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    auto q = rng.pd_form(4, 2, true);
    for (Label u = 0; u < 16; ++u) {
      auto theta = trop_theta_constant(q, u);
      if (u == 0) {
        EXPECT_EQ(theta, 0);
      } else {
        EXPECT_LT(theta, 0);
      }
      IntVector shifted = label_to_vector(u, 4);
      for (auto& c : shifted) c += 2 * rng.uniform(-3, 3);
      EXPECT_EQ(trop_theta_constant(q, shifted), theta);
    }
  }
}

// Theta_u(S^t Q S) = Theta_{Su}(Q), hence vartheta_{S^t w}(S^t Q S) = vartheta_w(Q).
Label image(const IntMatrix& s, Label w) {
  IntVector wv = label_to_vector(w, 4);
  IntVector sw(4, 0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) sw[i] += s(i, j) * wv[j];
  }
  return label_from_vector(sw);
}

TEST(ThetaMatroidProperty, GlInvariance) {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    auto q = rng.pd_form(4);
    auto s = rng.unimodular(4);
    auto qs = q.transform(s);
    auto ta = trop_theta_constants(q);
    auto tb = trop_theta_constants(qs);
    for (Label u = 0; u < 16; ++u) EXPECT_EQ(tb[u], ta[image(s, u)]);
    auto a = vartheta_all(q);
    auto b = vartheta_all(qs);
    auto st = s.transpose();
    for (Label w = 0; w < 16; ++w) EXPECT_EQ(b[image(st, w)], a[w]) << "trial " << t << " w " << w;
    EXPECT_EQ(theta_matroid(q).elements.size(), theta_matroid(qs).elements.size());
  }
}

TEST(Relevant, IdentityAndBounds) {
  auto rel = voronoi_relevant_vectors(QuadForm::identity(4));
  EXPECT_EQ(rel.size(), 8u);
  EXPECT_EQ(face_lattice_fvector(voronoi_polytope(QuadForm::identity(4))), (FVector{{16, 32, 24, 8}}));
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    auto r = voronoi_relevant_vectors(rng.pd_form(4));
    EXPECT_LE(r.size(), 30u);
    std::set<IntVector> s(r.begin(), r.end());
    for (auto v : r) {
      for (auto& c : v) c = -c;
      EXPECT_TRUE(s.count(v));
    }
  }
  EXPECT_LE(voronoi_relevant_vectors(testing::example_prism()).size(), 30u);
}

}  // namespace
}  // namespace schottky
