#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "schottky/exact.hpp"

namespace schottky {
namespace {

using testing::Rng;
using testing::rat;

// Brute-force oracle: every integer point in the box |v_i| <= radius.
std::vector<IntVector> box_scan(const QuadForm& q, const Rational& bound, std::int64_t radius,
                                const RatVector* center = nullptr) {
  const std::size_t g = q.dim();
  std::vector<IntVector> out;
  IntVector v(g, -radius);
  while (true) {
    RatVector w(g);
    for (std::size_t i = 0; i < g; ++i) {
      w[i] = Rational(static_cast<long>(v[i])) - (center ? (*center)[i] : Rational(0));
    }
    if (q.norm(std::span<const Rational>(w)) <= bound) out.push_back(v);
    std::size_t k = g;
    while (k > 0 && v[k - 1] == radius) {
      v[k - 1] = -radius;
      --k;
    }
    if (k == 0) break;
    ++v[k - 1];
  }
  return out;
}

// Integer box radius guaranteed to contain every v with v^t Q v <= bound:
// |v_i|^2 <= bound * (Q^-1)_ii, bounded using the adjugate.
std::int64_t safe_radius(const QuadForm& q, const Rational& bound) {
  const std::size_t g = q.dim();
  Rational det = determinant(q.matrix());
  std::int64_t r = 0;
  for (std::size_t i = 0; i < g; ++i) {
    RatMatrix minor(g - 1, g - 1);
    for (std::size_t a = 0, ra = 0; a < g; ++a) {
      if (a == i) continue;
      for (std::size_t b = 0, cb = 0; b < g; ++b) {
        if (b == i) continue;
        minor(ra, cb++) = q(a, b);
      }
      ++ra;
    }
    Rational inv_ii = determinant(minor) / det;
    Rational s = bound * inv_ii;
    std::int64_t k = 0;
    while (Rational(static_cast<long>(k * k)) <= s) ++k;
    r = std::max(r, k);
  }
  return r;
}

TEST(PositiveDefinite, KnownCases) {
  EXPECT_TRUE(is_positive_definite(RatMatrix::identity(4)));
  EXPECT_TRUE(is_positive_definite(testing::example_prism().matrix()));
  EXPECT_FALSE(is_positive_definite(rat(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0})));
  EXPECT_FALSE(is_positive_definite(rat(2, {1, 2, 2, 1})));
}

TEST(PositiveDefinite, RejectsNonSymmetric) {
  EXPECT_THROW(is_positive_definite(rat(2, {1, 2, 3, 4})), StructuralError);
  EXPECT_THROW(is_positive_definite(RatMatrix(2, 3)), StructuralError);
}

TEST(Ldl, IdentityAndDiagonal) {
  auto f = ldl_decompose(RatMatrix::identity(4));
  EXPECT_EQ(f.lower, RatMatrix::identity(4));
  EXPECT_EQ(f.diag, (RatVector{1, 1, 1, 1}));
  auto d = ldl_decompose(rat(4, {2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 5, 0, 0, 0, 0, 7}));
  EXPECT_EQ(d.lower, RatMatrix::identity(4));
  EXPECT_EQ(d.diag, (RatVector{2, 3, 5, 7}));
}

RatMatrix remultiply(const LdlFactor& f) {
  const std::size_t g = f.diag.size();
  RatMatrix ld(g, g);
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) ld(i, j) = f.lower(i, j) * f.diag[j];
  }
  return ld * f.lower.transpose();
}

TEST(Ldl, RemultipliesExactly) {
  auto q = testing::example_prism();
  EXPECT_EQ(remultiply(ldl_decompose(q)), q.matrix());
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto r = rng.pd_form(4, 3, true);
    EXPECT_EQ(remultiply(ldl_decompose(r)), r.matrix());
  }
}

TEST(Ldl, NamesFailingMinor) {
  try {
    ldl_decompose(rat(3, {1, 0, 0, 0, 1, 0, 0, 0, -1}));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.failing_minor(), 3u);
  }
}

TEST(Enumerate, IdentityBounds) {
  auto q = QuadForm::identity(4);
  EXPECT_EQ(enumerate_by_norm(q, 1).size(), 9u);
  auto zero = enumerate_by_norm(q, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], (IntVector{0, 0, 0, 0}));
}

TEST(Enumerate, MatchesBoxScanOnPrism) {
  auto q = testing::example_prism();
  auto got = enumerate_by_norm(q, 17);
  auto want = box_scan(q, 17, 5);
  EXPECT_EQ(got, want);
  EXPECT_GT(got.size(), 1u);
}

TEST(EnumerateProperty, MatchesBoxScanOnRandomForms) {
  Rng rng(2024);
  for (int t = 0; t < 40; ++t) {
    auto q = rng.pd_form(4, 2, t % 3 == 0);
    Rational bound(static_cast<long>(rng.uniform(0, 40)));
    auto radius = safe_radius(q, bound);
    if (radius > 9) continue;
    auto got = enumerate_by_norm(q, bound);
    EXPECT_EQ(got, box_scan(q, bound, radius)) << "trial " << t;
  }
}

TEST(EnumerateProperty, MonotoneSymmetricContainsZero) {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    auto q = rng.pd_form(4);
    Rational b1(static_cast<long>(rng.uniform(0, 15)));
    Rational b2 = b1 + Rational(static_cast<long>(rng.uniform(0, 15)));
    auto small = enumerate_by_norm(q, b1);
    auto large = enumerate_by_norm(q, b2);
    EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    std::set<IntVector> s(small.begin(), small.end());
    EXPECT_TRUE(s.count(IntVector(4, 0)));
    for (const auto& v : small) {
      IntVector neg(v);
      for (auto& x : neg) x = -x;
      EXPECT_TRUE(s.count(neg));
    }
  }
}

TEST(ClosestVector, TrivialCases) {
  auto q = QuadForm::identity(4);
  RatVector half{Rational(1, 2), 0, 0, 0};
  EXPECT_EQ(closest_vector(q, half).dist2, Rational(1, 4));
  EXPECT_EQ(closest_vector(q, half).point, (IntVector{0, 0, 0, 0}));
  auto origin = closest_vector(q, RatVector(4, 0));
  EXPECT_EQ(origin.dist2, 0);
  EXPECT_EQ(origin.point, IntVector(4, 0));
}

TEST(ClosestVector, PrismHalfLatticePoint) {
  RatVector x{0, 0, 0, Rational(1, 2)};
  EXPECT_EQ(closest_vector(testing::example_prism(), x).dist2, Rational(29, 4));
}

TEST(ClosestVectorProperty, AgreesWithScanAndIsTranslationInvariant) {
  Rng rng(99);
  for (int t = 0; t < 30; ++t) {
    auto q = rng.pd_form(4);
    RatVector x(4);
    for (auto& c : x) c = rng.rational(6, 4);
    auto cv = closest_vector(q, x);
    EXPECT_EQ(q.norm(std::span<const Rational>([&] {
                RatVector d(4);
                for (std::size_t i = 0; i < 4; ++i) d[i] = Rational(static_cast<long>(cv.point[i])) - x[i];
                return d;
              }())),
              cv.dist2);
    // Oracle: scan a box around the rounded center for anything strictly closer.
    RatVector c(x);
    auto radius = safe_radius(q, cv.dist2) + 2;
    if (radius <= 6) {
      auto near = box_scan(q, cv.dist2, radius, &c);
      for (const auto& v : near) {
        RatVector d(4);
        for (std::size_t i = 0; i < 4; ++i) d[i] = Rational(static_cast<long>(v[i])) - x[i];
        EXPECT_GE(q.norm(std::span<const Rational>(d)), cv.dist2);
      }
    }
    RatVector shifted(x);
    for (auto& s : shifted) s += Rational(static_cast<long>(rng.uniform(-5, 5)));
    EXPECT_EQ(closest_vector(q, shifted).dist2, cv.dist2);
  }
}

TEST(GlEquivalence, SelfEquivalence) {
  auto q = testing::example_prism();
  auto x = gl_equivalence(q, q);
  ASSERT_TRUE(x);
  EXPECT_EQ(q.transform(*x), q);
}

TEST(GlEquivalence, PrismRebasedWitness) {
  auto q = testing::example_prism();
  auto target = testing::example_prism_rebased();
  EXPECT_EQ(q.transform(testing::prism_basis_change()), target);
  auto x = gl_equivalence(q, target);
  ASSERT_TRUE(x);
  EXPECT_EQ(q.transform(*x), target);
  EXPECT_EQ(abs(determinant(*x)), 1);
}

TEST(GlEquivalence, InequivalentForms) {
  auto x = gl_equivalence(QuadForm::identity(4),
                          QuadForm(rat(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2})));
  EXPECT_FALSE(x);
}

TEST(GlEquivalence, CapIsEnforced) {
  EXPECT_THROW(gl_equivalence(QuadForm::identity(4), QuadForm::identity(4).scaled(50), 10),
               SearchSpaceExceeded);
}

TEST(GlEquivalenceProperty, RandomBasisChanges) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto q = rng.pd_form(4);
    auto s = rng.unimodular(4);
    auto target = q.transform(s);
    auto x = gl_equivalence(q, target);
    ASSERT_TRUE(x) << "trial " << t;
    EXPECT_EQ(q.transform(*x), target);
    EXPECT_EQ(abs(determinant(*x)), 1);
  }
}

TEST(RationalIo, RoundTrip) {
  EXPECT_EQ(to_string(Rational(-3, 6)), "-1/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}

}  // namespace
}  // namespace schottky
