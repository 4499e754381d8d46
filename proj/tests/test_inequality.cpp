#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ewopt/errors.hpp"
#include "ewopt/inequality.hpp"
#include "ewopt/random.hpp"

using namespace ewopt;

namespace {

Triple random_constraint_point(Rng& rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  const double u1 = u(rng);
  const double u2 = u(rng);
  return {std::exp(u1), std::exp(u2), std::exp(-u1 - u2)};
}

}  // namespace

TEST(GValue, VanishesAtUnitPointForEveryT) {
  for (int k = 1; k <= 9; ++k) EXPECT_EQ(g_value(k / 10.0, {1.0, 1.0, 1.0}), 0.0);
}

TEST(GValue, HandEvaluatedPoint) {
  EXPECT_NEAR(g_value(0.5, {2.0, 1.0, 0.5}), 0.625, 1e-15);
  EXPECT_NEAR(g_value(ConstraintPoint::make(0.5, {2.0, 1.0, 0.5})), 0.625, 1e-15);
}

TEST(GValue, SymmetricInFirstTwoCoordinates) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto rng = make_rng(1, k);
    std::uniform_real_distribution<double> u(0.01, 5.0);
    const double a = u(rng), b = u(rng), c = u(rng), t = u(rng) / 5.0;
    EXPECT_NEAR(g_value(t, {a, b, c}), g_value(t, {b, a, c}), 1e-12);
  }
}

TEST(FValue, ExactRationalValueAndDegeneratePoint) {
  // With b_i = 1/(2.5 + 0.5 x_i) the ratio at (2, 1, 1/2) is exactly 4/3.
  EXPECT_NEAR(f_value(0.5, {2.0, 1.0, 0.5}), 4.0 / 3.0, 1e-13);
  EXPECT_GE(f_value(0.5, {2.0, 1.0, 0.5}), 0.5);
  EXPECT_THROW(f_value(0.5, {1.0, 1.0, 1.0}), DegeneratePoint);
  EXPECT_GT(f_denominator(0.5, {2.0, 1.0, 0.5}), 0.0);
}

TEST(FValue, SignAgreesWithGOffTheUnitPoint) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      auto rng = make_rng(2 + k, i);
      const auto x = random_constraint_point(rng, 3.0);
      const double g = g_value(t, x);
      const double gap = f_value(t, x) - (1.0 - t);
      EXPECT_GE(gap, -1e-9);
      if (std::abs(g) > 1e-12) {
        EXPECT_EQ(gap >= 0.0, g >= 0.0);
      }
    }
  }
}

TEST(ConstrainedScan, NonNegativeOnTheWholeGrid) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    const auto r = constrained_scan(t, 100000, 3.0, 7);
    EXPECT_GE(r.min_g, -1e-9) << "t=" << t;
    EXPECT_GE(r.min_f_gap, -1e-9) << "t=" << t;
    EXPECT_EQ(r.sign_mismatches, 0u) << "t=" << t;
    EXPECT_EQ(r.samples, 100000u);
  }
}

TEST(ConstrainedScan, ArgminApproachesUnitPointWithDenserSampling) {
  auto distance = [](const Triple& x) {
    return std::max({std::abs(x[0] - 1.0), std::abs(x[1] - 1.0), std::abs(x[2] - 1.0)});
  };
  double previous = std::numeric_limits<double>::infinity();
  for (double width : {3.0, 0.3, 0.03}) {
    const auto r = constrained_scan(0.5, 20000, width, 3);
    const double d = distance(r.argmin);
    EXPECT_LT(d, previous);
    previous = d;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(ConstrainedScan, ExclusionCountsPointsNearUnit) {
  const auto r = constrained_scan(0.5, 1000, 1e-8, 1, 1e-6);
  EXPECT_EQ(r.excluded, 1000u);
  EXPECT_THROW(constrained_scan(1.0, 10, 1.0, 1), InvalidArgument);
  EXPECT_THROW(constrained_scan(0.5, 10, 0.0, 1), InvalidArgument);
}

TEST(Lagrange, UnitPointIsStationaryWithDerivedMultiplier) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    const double lambda = stationary_multiplier(t);
    EXPECT_NEAR(lambda, t * t - 2.0 * t - 1.0, 1e-15);
    for (double r : lagrange_residual(t, {1.0, 1.0, 1.0}, lambda)) EXPECT_LE(std::abs(r), 1e-12);
  }
}

TEST(Lagrange, GenericPointIsNotStationary) {
  const auto r = lagrange_residual(0.5, {2.0, 1.0, 0.5}, 0.0);
  EXPECT_GT(std::abs(r[0]), 1e-3);
  EXPECT_NEAR(r[3], 0.0, 1e-15);
}

TEST(Lagrange, OtherBranchIsInfeasible) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    EXPECT_LT((t - 1.0) / t, 0.0);
  }
}

TEST(Lagrange, GradientMatchesCentralDifferences) {
  const double h = 1e-6;
  for (std::uint64_t k = 0; k < 100; ++k) {
    auto rng = make_rng(9, k);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    const Triple x{u(rng), u(rng), u(rng)};
    const double t = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto grad = g_gradient(t, x);
    for (std::size_t i = 0; i < 3; ++i) {
      Triple up = x, down = x;
      up[i] += h;
      down[i] -= h;
      const double numeric = (g_value(t, up) - g_value(t, down)) / (2.0 * h);
      EXPECT_NEAR(numeric, grad[i], 1e-5 * std::max(1.0, std::abs(grad[i])));
    }
    // The stationarity equations are the gradient plus lambda times the constraint gradient.
    const auto res = lagrange_residual(t, x, 0.0);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(res[i], grad[i]);
  }
}

TEST(Quartic, FactorizationIdentityAndPositiveBracket) {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    auto rng = make_rng(10, k);
    const double t = std::uniform_real_distribution<double>(1e-3, 1.0 - 1e-3)(rng);
    const double x1 = std::exp(std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    const auto q = quartic_factor_check(t, x1);
    EXPECT_NEAR(q.lhs, q.expanded, 1e-10);
    EXPECT_GT(q.bracket, 0.0);
  }
  EXPECT_EQ(quartic_factor_check(0.4, 1.0).lhs, 0.0);
}

TEST(SubcaseBounds, BoundarySubcasesAlwaysAdmitOneMinusT) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      auto rng = make_rng(11 + k, i);
      const double r = std::exp(std::uniform_real_distribution<double>(-4.0, 4.0)(rng));
      for (auto which : {BoundCase::S3, BoundCase::S4, BoundCase::S5}) {
        const auto b = subcase_bound(which, t, {r, r, r});
        EXPECT_TRUE(b.ge_1mt) << to_string(which) << " t=" << t << " r=" << r;
      }
    }
  }
}

TEST(SubcaseBounds, GenericBoundIsTheRatioAtReciprocals) {
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      auto rng = make_rng(30 + k, i);
      const auto r = random_constraint_point(rng, 3.0);
      const auto b = subcase_bound(BoundCase::S2, t, r);
      const double f = f_value(t, {1.0 / r[0], 1.0 / r[1], 1.0 / r[2]});
      EXPECT_NEAR(b.c2_bound, f, 1e-10 * std::max(1.0, std::abs(f)));
      EXPECT_GE(b.c2_bound, (1.0 - t) - 1e-9);
    }
  }
}

TEST(SubcaseBounds, Errors) {
  EXPECT_THROW(subcase_bound(BoundCase::S2, 0.5, {1.0, 1.0, 1.0}), DegeneratePoint);
  EXPECT_THROW(subcase_bound(BoundCase::S2, 0.5, {2.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(subcase_bound(BoundCase::S3, 1.5, {1.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(subcase_bound(BoundCase::S4, 0.5, {1.0, 1.0, -1.0}), InvalidArgument);
  EXPECT_STREQ(to_string(BoundCase::S5), "S5");
}

TEST(ConstraintPointType, Validation) {
  EXPECT_NO_THROW(ConstraintPoint::make(0.5, {2.0, 0.25, 2.0}));
  EXPECT_THROW(ConstraintPoint::make(0.5, {2.0, 1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(ConstraintPoint::make(0.5, {-1.0, -1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(ConstraintPoint::make(1.0, {1.0, 1.0, 1.0}), InvalidArgument);
}
