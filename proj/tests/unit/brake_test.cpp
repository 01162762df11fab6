#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "mash/brake.hpp"
#include "mash/errors.hpp"
#include "support.hpp"

namespace mash {
namespace {

// Hand evaluation of mu eps_r eps_0 A U^2 / (2 d^2).
double force_oracle(double eps_r, double area, double mu, double gap, double u) {
  return mu * eps_r * 8.8541878128e-12 * area * u * u / (2.0 * gap * gap);
}

TEST(BrakingForce, DefaultsHoldTwoHundredGrams) {
  const BrakeParams p;
  const double f = braking_force(p, 2000.0);
  EXPECT_NEAR(f, force_oracle(3.4, 3.175e-4, 0.2, 44.14e-6, 2000.0), 1e-12);
  EXPECT_LT(test::relative_error(f, 0.2 * 9.81), 5e-3);
}

TEST(BrakingForce, ZeroVoltageIsZero) { EXPECT_EQ(braking_force(BrakeParams{}, 0.0), 0.0); }

TEST(BrakingForce, HalfVoltageQuartersForce) {
  const BrakeParams p;
  EXPECT_NEAR(braking_force(p, 1000.0), 0.4905, 0.4905 * 5e-3);
  EXPECT_NEAR(braking_force(p, 1000.0), braking_force(p, 2000.0) / 4.0, 1e-15);
}

TEST(BrakingForce, RejectsUnsafeDrive) {
  const BrakeParams p;
  EXPECT_THROW(braking_force(p, -1.0), DomainError);
  EXPECT_THROW(braking_force(p, 2000.1), DomainError);
}

TEST(BrakeParams, ViolationsListEveryField) {
  BrakeParams p;
  p.eps_r = 0;
  p.area = -1;
  p.gap = 0;
  p.mu = 2.0;
  p.tau = 0;
  p.u_max = 0;
  EXPECT_EQ(violations(p).size(), 6u);
  EXPECT_THROW(validate(p), ValidationError);
  EXPECT_TRUE(violations(BrakeParams{}).empty());
}

TEST(RequiredGap, InvertsReferenceLoad) {
  const BrakeParams p;
  EXPECT_NEAR(required_gap_for_force(p, 2000.0, 1.962) * 1e6, 44.14, 0.01);
  EXPECT_NEAR(required_gap_for_force(p, 2000.0, 0.4905) * 1e6, 88.3, 0.05);
}

TEST(RequiredGap, NoSolutionWithoutDriveOrLoad) {
  const BrakeParams p;
  EXPECT_THROW(required_gap_for_force(p, 0.0, 1.0), NoSolutionError);
  EXPECT_THROW(required_gap_for_force(p, 2000.0, 0.0), NoSolutionError);
}

TEST(EngagementStep, AnalyticStepResponse) {
  const BrakeParams p;
  EXPECT_NEAR(engagement_step({0.0, 0.0}, 2000.0, 0.08, p).engagement, 1.0 - std::exp(-1.0), 1e-12);
  EXPECT_NEAR(engagement_step({2000.0, 1.0}, 0.0, 0.08, p).engagement, std::exp(-1.0), 1e-12);
}

TEST(EngagementStep, ZeroDtKeepsState) {
  const BrakeState s{1500.0, 0.37};
  const auto next = engagement_step(s, 0.0, 0.0, BrakeParams{});
  EXPECT_EQ(next.engagement, s.engagement);
  EXPECT_EQ(next.voltage, s.voltage);
}

TEST(EngagementStep, NegativeDtIsDomainError) {
  EXPECT_THROW(engagement_step({}, 2000.0, -0.001, BrakeParams{}), DomainError);
}

TEST(EngagementStep, ComposesLikeOneLongStep) {
  const BrakeParams p;
  BrakeState s;
  for (int i = 0; i < 80; ++i) s = engagement_step(s, 2000.0, 0.001, p);
  EXPECT_NEAR(s.engagement, 1.0 - std::exp(-1.0), 1e-12);
}

TEST(AvailableForce, ScalesWithEngagement) {
  const BrakeParams p;
  EXPECT_NEAR(available_force({2000.0, 0.5}, p), 0.5 * braking_force(p, 2000.0), 1e-15);
}

TEST(Filter, DirectFormula) {
  EXPECT_DOUBLE_EQ(limited_recursive_average(unlimited_filter(0.5), 10.0).filtered, 5.0);
  EXPECT_DOUBLE_EQ(limited_recursive_average({0.0, 0.5, 1.0}, 10.0).filtered, 1.0);
  EXPECT_DOUBLE_EQ(limited_recursive_average({3.25, 0.2, 0.05}, 3.25).filtered, 3.25);
}

TEST(BrakeProperty, QuadraticInVoltage) {
  auto g = test::rng(11);
  const BrakeParams p;
  for (int i = 0; i < 500; ++i) {
    const double u = test::uniform(g, 0.0, p.u_max / 2.0);
    const double f1 = braking_force(p, u);
    const double f2 = braking_force(p, 2.0 * u);
    EXPECT_NEAR(f2, 4.0 * f1, 1e-12 * std::max(1.0, f2));
    EXPECT_LE(braking_force(p, u), braking_force(p, std::min(p.u_max, u + 1.0)));
  }
}

TEST(BrakeProperty, InverseSquareInGap) {
  auto g = test::rng(12);
  for (int i = 0; i < 20; ++i) {
    BrakeParams p;
    p.eps_r = test::uniform(g, 1.5, 8.0);
    p.area = test::uniform(g, 1e-5, 1e-3);
    p.mu = test::uniform(g, 0.05, 1.5);
    p.gap = test::uniform(g, 5e-6, 2e-4);
    const double u = test::uniform(g, 1.0, p.u_max);
    BrakeParams half = p;
    half.gap = p.gap / 2.0;
    EXPECT_NEAR(braking_force(half, u), 4.0 * braking_force(p, u), 1e-12 * braking_force(half, u));
  }
}

TEST(BrakeProperty, GapRoundTrip) {
  auto g = test::rng(13);
  for (int i = 0; i < 200; ++i) {
    BrakeParams p;
    p.gap = test::uniform(g, 5e-6, 2e-4);
    const double u = test::uniform(g, 10.0, p.u_max);
    const double f = braking_force(p, u);
    BrakeParams q = p;
    q.gap = required_gap_for_force(p, u, f);
    EXPECT_LE(test::relative_error(braking_force(q, u), f), 1e-10);
  }
}

TEST(BrakeProperty, EngagementStaysInUnitInterval) {
  auto g = test::rng(14);
  const BrakeParams p;
  BrakeState s;
  for (int i = 0; i < 10000; ++i) {
    const double u = test::uniform(g, 0.0, 1.0) < 0.5 ? 0.0 : test::uniform(g, 0.0, p.u_max);
    s = engagement_step(s, u, test::uniform(g, 0.0, 0.5), p);
    ASSERT_GE(s.engagement, 0.0);
    ASSERT_LE(s.engagement, 1.0);
  }
}

TEST(BrakeProperty, RiseTimeInsideMeasuredWindow) {
  const BrakeParams p;
  const double dt = 1e-4;
  BrakeState s;
  double t10 = -1, t90 = -1;
  for (int k = 1; k <= 10000 && t90 < 0; ++k) {
    const double before = s.engagement;
    s = engagement_step(s, p.u_max, dt, p);
    const double t = k * dt;
    if (t10 < 0 && s.engagement >= 0.1) t10 = t - dt * (s.engagement - 0.1) / (s.engagement - before);
    if (s.engagement >= 0.9) t90 = t - dt * (s.engagement - 0.9) / (s.engagement - before);
  }
  EXPECT_GE(t90 - t10, 0.150);
  EXPECT_LE(t90 - t10, 0.200);
  EXPECT_NEAR(t90 - t10, p.tau * std::log(9.0), 1e-6);
}

TEST(BrakeProperty, FilterStepNeverExceedsLimit) {
  auto g = test::rng(15);
  FilterState f{0.0, 0.2, 0.05};
  for (int i = 0; i < 5000; ++i) {
    const double before = f.value;
    const auto out = limited_recursive_average(f, test::uniform(g, -5.0, 5.0));
    ASSERT_LE(std::abs(out.filtered - before), f.max_step * (1.0 + 1e-12));
    f = out.state;
  }
}

TEST(BrakeProperty, UnlimitedFilterIsExponentialAverage) {
  auto g = test::rng(16);
  const double alpha = 0.3;
  FilterState f = unlimited_filter(alpha);
  double ema = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = test::uniform(g, -100.0, 100.0);
    ema = ema + alpha * (x - ema);
    const auto out = limited_recursive_average(f, x);
    f = out.state;
    ASSERT_EQ(out.filtered, ema);
  }
}

}  // namespace
}  // namespace mash
