#include <bit>

#include <gtest/gtest.h>

#include "flagctrl/error.hpp"
#include "flagctrl/sl/cocycle.hpp"
#include "flagctrl/sl/flag_point.hpp"
#include "support.hpp"

using namespace flagctrl;
using namespace flagctrl::sl;

namespace {

Matrix diag2(double t) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(t);
  m(1, 1) = std::exp(-t);
  return m;
}

Matrix rotation2(double th) {
  Matrix r(2, 2);
  r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return r;
}

Matrix block_rotation(std::mt19937_64& rng, int d, const std::vector<int>& blocks) {
  Matrix k = Matrix::Zero(d, d);
  int off = 0;
  for (int b : blocks) {
    k.block(off, off, b, b) = b == 1 ? Matrix::Identity(1, 1) : testkit::random_rotation(rng, b);
    off += b;
  }
  return k;
}

}  // namespace

TEST(ACocycle, Examples) {
  const auto flag = FlagPoint::standard(2, {1, 1});
  EXPECT_EQ(a_cocycle(Matrix::Identity(2, 2), flag), Vector::Zero(2));
  const double t = 0.8;
  const Vector a = a_cocycle(diag2(t), flag);
  EXPECT_NEAR(a(0), t, 1e-14);
  EXPECT_NEAR(a(1), -t, 1e-14);
  const FlagPoint rotated(rotation2(M_PI / 2), {1, 1});
  const Vector b = a_cocycle(diag2(t), rotated);
  EXPECT_NEAR(b(0), -t, 1e-14);
  EXPECT_NEAR(b(1), t, 1e-14);
}

TEST(ACocycle, SignChangesAreExact) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix psi = testkit::random_sl(rng, 4);
    const FlagPoint flag(testkit::random_rotation(rng, 4), {1, 1, 1, 1});
    const Vector a = a_cocycle(psi, flag);
    for (int mask = 0; mask < 16; ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) % 2) continue;  // det +1
      Vector s = Vector::Ones(4);
      for (int i = 0; i < 4; ++i) {
        if (mask & (1 << i)) s(i) = -1.0;
      }
      EXPECT_EQ(a_cocycle(psi, flag.right_multiplied(s.asDiagonal())), a);
    }
  }
}

TEST(Additivity, AutonomousDiagonalFlowIsExact) {
  Matrix x = Matrix::Zero(3, 3);
  x.diagonal() << 1.0, 0.25, -1.25;
  const auto spec = ControlSystemSpec::autonomous(x);
  const auto flag = FlagPoint::standard(3, {1, 1, 1});
  EXPECT_LE(cocycle_additivity_residual(spec, ControlSignal::constant(Vector(0)), 4.0, flag, 1.0), 1e-10);
}

TEST(Additivity, RandomSystems) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 3; ++trial) {
    const auto spec = testkit::random_system(rng, 3, 2);
    const auto u = ControlSignal::random(spec, 0.5, 6.0, 7 + trial);
    const FlagPoint flag(testkit::random_rotation(rng, 3), {1, 1, 1});
    EXPECT_LE(cocycle_additivity_residual(spec, u, 6.0, flag, 1.0), 1e-6);
  }
}

TEST(TimeReversal, DiagonalFlowClosedForm) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 0) = 1.0;
  x(1, 1) = -1.0;
  const auto spec = ControlSystemSpec::autonomous(x);
  const FlagPoint flag(rotation2(0.3), {1, 1});
  EXPECT_LE(time_reversal_residual(spec, ControlSignal::constant(Vector(0)), 3.0, flag, 0.5), 1e-12);
  EXPECT_EQ(time_reversal_residual(spec, ControlSignal::constant(Vector(0)), 0.0, flag, 0.5), 0.0);
}

TEST(TimeReversal, RandomSystem) {
  std::mt19937_64 rng(47);
  const auto spec = testkit::random_system(rng, 3, 2);
  const auto u = ControlSignal::random(spec, 0.5, 5.0, 3);
  const FlagPoint flag(testkit::random_rotation(rng, 3), {1, 1, 1});
  EXPECT_LE(time_reversal_residual(spec, u, 5.0, flag, 1.0), 1e-6);
}

TEST(KTheta, Examples) {
  std::mt19937_64 rng(53);
  const Matrix psi = testkit::random_sl(rng, 3);
  const FlagPoint flag(testkit::random_rotation(rng, 3), {1, 1, 1});
  const RationalVector beta{1, 2};
  const SimpleRootSet theta = SimpleRootSet::of({0});
  EXPECT_EQ(ktheta_invariance_residual(psi, flag, theta, beta, Matrix::Identity(3, 3)), 0.0);
  const Matrix k = block_rotation(rng, 3, blocks_for(theta, 3));
  EXPECT_LE(ktheta_invariance_residual(psi, flag, theta, beta, k), 1e-8);
  // Theta empty: k in M (diagonal signs), any beta.
  Matrix m = Matrix::Identity(3, 3);
  m(0, 0) = m(2, 2) = -1.0;
  EXPECT_LE(ktheta_invariance_residual(psi, flag, SimpleRootSet(), RationalVector{3, -5}, m), 1e-12);
}

TEST(KTheta, Rejections) {
  std::mt19937_64 rng(59);
  const Matrix psi = testkit::random_sl(rng, 3);
  const FlagPoint flag = FlagPoint::standard(3, {1, 1, 1});
  const SimpleRootSet theta = SimpleRootSet::of({0});
  EXPECT_THROW(ktheta_invariance_residual(psi, flag, theta, RationalVector{1, 0}, Matrix::Identity(3, 3)),
               InputError);
  // Full rotation is not in K_theta.
  EXPECT_THROW(ktheta_invariance_residual(psi, flag, theta, RationalVector{1, 2}, testkit::random_rotation(rng, 3)),
               InputError);
}

TEST(KTheta, RandomTriplesDimensionFour) {
  std::mt19937_64 rng(61);
  const SimpleRootSet theta = SimpleRootSet::of({1, 2});  // blocks 1 + 3
  // beta vanishing on H_2, H_3 in A_3: alpha(H_j) = (P beta)_j, solve for multiples of the fundamental weight.
  const RationalVector beta{3, 2, 1};
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix psi = testkit::random_sl(rng, 4);
    const FlagPoint flag(testkit::random_rotation(rng, 4), {1, 1, 1, 1});
    const Matrix k = block_rotation(rng, 4, blocks_for(theta, 4));
    EXPECT_LE(ktheta_invariance_residual(psi, flag, theta, beta, k), 1e-8);
  }
}
