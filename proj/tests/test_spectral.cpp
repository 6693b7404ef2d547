#include <gtest/gtest.h>

#include "flagctrl/error.hpp"
#include "flagctrl/sl/spectral.hpp"
#include "flagctrl/weyl_group.hpp"
#include "support.hpp"

using namespace flagctrl;
using namespace flagctrl::sl;

namespace {

Matrix diag(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v.asDiagonal();
}

// S D S^-1 with a well-conditioned random S.
Matrix conjugated(std::mt19937_64& rng, const Matrix& d) {
  Matrix s = testkit::random_rotation(rng, static_cast<int>(d.rows())) +
             0.3 * testkit::gaussian(rng, static_cast<int>(d.rows()), static_cast<int>(d.rows()));
  return s * d * s.inverse();
}

bool spans_line(const FlagPoint& p, int coord) {
  return std::abs(std::abs(p.rep()(coord, 0)) - 1.0) <= 1e-12;
}

}  // namespace

TEST(SplitPart, Examples) {
  auto s = split_part(diag({1, -1}));
  EXPECT_NEAR(s.h(0), 1.0, 1e-15);
  EXPECT_NEAR(s.h(1), -1.0, 1e-15);
  EXPECT_TRUE(s.theta.empty());

  s = split_part(diag({1, 1, -2}));
  EXPECT_EQ(s.theta, SimpleRootSet::of({0}));
  EXPECT_NEAR(s.h(0), 1.0, 1e-14);
  EXPECT_NEAR(s.h(2), -2.0, 1e-14);

  Matrix rot = Matrix::Zero(3, 3);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  s = split_part(rot);
  EXPECT_EQ(s.theta, SimpleRootSet::all(2));
  EXPECT_LE(s.h.norm(), 1e-14);
}

TEST(SplitPart, DescendingOrderAndEigenbasis) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix d = diag({1.5, 0.4, -0.3, -1.6});
    const Matrix x = conjugated(rng, d);
    const auto s = split_part(x);
    EXPECT_TRUE(s.theta.empty());
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(s.h(i), d(i, i), 1e-9);
      EXPECT_LE((x * s.basis.col(i) - s.h(i) * s.basis.col(i)).norm(), 1e-9);
    }
  }
}

TEST(SplitPart, ComplexPairGroupsWithEqualRealParts) {
  Matrix x = Matrix::Zero(3, 3);
  x(0, 0) = x(1, 1) = 0.5;
  x(0, 1) = 2.0;
  x(1, 0) = -2.0;
  x(2, 2) = -1.0;
  const auto s = split_part(x);
  EXPECT_EQ(s.theta, SimpleRootSet::of({0}));
  EXPECT_NEAR(s.h(0), 0.5, 1e-14);
  EXPECT_NEAR(s.h(2), -1.0, 1e-14);
}

TEST(SplitPart, AmbiguousGapRejected) {
  const Matrix x = diag({1.0 + 5e-7, 1.0, -2.0 - 5e-7});
  try {
    split_part(x);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("tolerance"), std::string::npos);
  }
  // An explicit smaller tolerance resolves the gap.
  EXPECT_TRUE(split_part(x, 1e-7).theta.empty());
}

TEST(SplitPart, JordanBlockRejected) {
  Matrix j = Matrix::Zero(2, 2);
  j(0, 1) = 1.0;
  EXPECT_THROW(split_part(j), InputError);
  Matrix j3 = diag({1, 1, -2});
  j3(0, 1) = 1.0;
  EXPECT_THROW(split_part(j3), InputError);
}

TEST(PermutationOf, MatchesWordAction) {
  const auto w = WeylGroup::generate(RootSystem::build(Family::A, 3));
  for (const auto& e : w.elements()) {
    const auto pi = permutation_of(e);
    std::vector<int> sorted = pi;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 4; ++i) EXPECT_EQ(sorted[i], i);
    // Inversions of pi are the length.
    int inv = 0;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) inv += pi[a] > pi[b];
    }
    EXPECT_EQ(inv, e.length());
  }
}

TEST(FixedFlags, ProjectiveLine) {
  const auto w = WeylGroup::generate(RootSystem::build(Family::A, 1));
  const Matrix x = diag({1, -1});
  EXPECT_TRUE(spans_line(fixed_flags(x, SimpleRootSet(), w.identity()).point, 0));
  EXPECT_TRUE(spans_line(fixed_flags(x, SimpleRootSet(), w.longest()).point, 1));
}

TEST(FixedFlags, ProjectivePlaneEigenlines) {
  const auto w = WeylGroup::generate(RootSystem::build(Family::A, 2));
  const Matrix x = diag({2, 0, -2});
  const SimpleRootSet theta = SimpleRootSet::of({1});
  const auto cosets = w.double_cosets(SimpleRootSet(), theta);
  ASSERT_EQ(cosets.size(), 3u);
  for (int c = 0; c < 3; ++c) {
    const auto f = fixed_flags(x, theta, w.element(cosets[c].rep));
    EXPECT_TRUE(spans_line(f.point, c)) << f.point.rep();
    for (double t : {0.0, 0.5, 1.0, 2.5, 5.0}) {
      EXPECT_LE(f.point.moved(testkit::expm(x, t)).distance(f.point), 1e-10);
    }
  }
}

TEST(FixedFlags, InvariantForConjugatedDrift) {
  std::mt19937_64 rng(73);
  const auto w = WeylGroup::generate(RootSystem::build(Family::A, 3));
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = conjugated(rng, diag({0.9, 0.3, -0.2, -1.0}));
    for (const auto& theta : testkit::all_subsets(3)) {
      for (const auto& e : w.elements()) {
        const auto f = fixed_flags(x, theta, e);
        EXPECT_LE((f.frame - f.point.rep() * f.r0).norm(), 1e-10);
        for (double t : {1.0, 5.0}) EXPECT_LE(f.point.moved(testkit::expm(x, t)).distance(f.point), 1e-9);
      }
    }
  }
}

TEST(RealizeFunctional, Examples) {
  EXPECT_EQ(realize_functional(RationalVector{1}, 2), (Vector(2) << 1, -1).finished());
  EXPECT_EQ(realize_functional(RationalVector{2, 2}, 3), (Vector(3) << 2, 0, -2).finished());
  EXPECT_EQ(realize_functional(RationalVector{0, 0, 0}, 4), Vector::Zero(4));
  EXPECT_THROW(realize_functional(RootSystem::build(Family::B, 2), RationalVector{1, 0}), InputError);
}

TEST(RealizeFunctional, AgreesWithAbstractEvaluation) {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> coef(-6, 6);
  for (int n = 1; n <= 6; ++n) {
    const auto rs = RootSystem::build(Family::A, n);
    for (int trial = 0; trial < 40; ++trial) {
      RationalVector sigma(n);
      AVector h = AVector::zero(n);
      for (int i = 0; i < n; ++i) {
        sigma[i] = Rational(coef(rng), 2);
        h.coords[i] = Rational(coef(rng), 3);
      }
      const double abstract = static_cast<double>(rs.evaluate(sigma, h));
      const Vector hd = realize_avector(h);
      EXPECT_NEAR(hd.sum(), 0.0, 1e-12);
      EXPECT_NEAR(realize_functional(rs, sigma).dot(hd), abstract, 1e-12);
    }
  }
}
