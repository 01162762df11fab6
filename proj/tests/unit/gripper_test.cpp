#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>

#include "mash/errors.hpp"
#include "mash/gripper.hpp"
#include "support.hpp"

namespace mash {
namespace {

const ExtensionLaw kLaw = ExtensionLaw::measured_default();

ObjectModel sphere(double r, double z, double mass = 0.02) {
  ObjectModel o;
  o.name = "ball";
  o.shape = Sphere{r};
  o.center = {0.0, 0.0, z};
  o.mass = mass;
  o.surface_mu = 0.6;
  return o;
}

ObjectModel tape() {
  ObjectModel o;
  o.name = "tape";
  o.shape = Annulus{75.0, 38.0, 50.0};
  o.center = {0.0, 0.0, 100.0};
  o.mass = 0.12;
  o.surface_mu = 0.6;
  return o;
}

std::array<FingerState, kFingers> at_rest() {
  std::array<FingerState, kFingers> f{};
  for (auto& s : f) s.pose = arc_from(0.0, 104.0);
  return f;
}

// Inward-closing pressure at which finger 0's pad first touches the object,
// found by bisection on the pose alone. NaN when the pad never reaches it.
double touch_pressure(const GripperConfig& cfg, const ObjectModel& o) {
  auto gap = [&](double p) {
    return signed_distance(o, contact_point(cfg, 0, actuator_pose(cfg.actuator(0), kLaw, {p, 1.0, 0.0})));
  };
  double lo = 0.0;
  while (gap(lo + 0.01) > 0.0) {
    lo += 0.01;
    if (lo + 0.01 > 100.0) return std::numeric_limits<double>::quiet_NaN();
  }
  double hi = lo + 0.01;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return hi;
}

std::array<FingerState, kFingers> closed_on(const GripperConfig& cfg, const ObjectModel& o, double residual) {
  const double pc = touch_pressure(cfg, o);
  std::array<FingerState, kFingers> f{};
  for (std::size_t i = 0; i < kFingers; ++i) {
    f[i].pose = actuator_pose(cfg.actuator(i), kLaw, {pc, 1.0, 0.0});
    f[i].actuation = {pc + residual, 1.0, 0.0};
    f[i].contact_pressure = pc;
  }
  return f;
}

TEST(Layout, FourFingersInTwoOpposedOrthogonalPairs) {
  EXPECT_EQ(pair_of(0), PairId::A);
  EXPECT_EQ(pair_of(3), PairId::B);
  EXPECT_NEAR(std::abs(azimuth(0) - azimuth(1)), std::numbers::pi, 1e-15);
  EXPECT_NEAR(std::abs(azimuth(2) - azimuth(3)), std::numbers::pi, 1e-15);
  EXPECT_NEAR(std::abs(std::remainder(azimuth(2) - azimuth(0), std::numbers::pi)), std::numbers::pi / 2, 1e-15);
  EXPECT_EQ(fingers_of(PairId::B)[1], 3u);
}

TEST(PairAperture, RestIsMountSeparation) {
  const GripperConfig cfg;
  for (auto mode : {ApertureMode::Neutral, ApertureMode::Outward, ApertureMode::Inward}) {
    EXPECT_NEAR(pair_aperture(cfg, kLaw, PairId::A, 0.0, mode, 1.0), 85.3, 1e-12);
  }
}

TEST(PairAperture, CalibratedGapReachesTwoFiftySix) {
  const auto cfg = test::calibrated_gripper();
  EXPECT_NEAR(pair_aperture(cfg, kLaw, PairId::A, 30.0, ApertureMode::Outward, 1.0), 256.0, 5.0);
}

TEST(PairAperture, UnbrakedStaysAtMountSeparation) {
  const GripperConfig cfg;
  for (double p : {10.0, 55.0, 100.0}) {
    EXPECT_NEAR(pair_aperture(cfg, kLaw, PairId::B, p, ApertureMode::Outward, 0.0), 85.3, 1e-12);
  }
}

TEST(PairAperture, OverPressureIsRangeError) {
  EXPECT_THROW(pair_aperture(GripperConfig{}, kLaw, PairId::A, 101.0, ApertureMode::Outward, 1.0), RangeError);
}

TEST(PairAperture, InwardFloorsAtZero) {
  const auto cfg = test::calibrated_gripper();
  EXPECT_GE(pair_aperture(cfg, kLaw, PairId::A, 60.0, ApertureMode::Inward, 1.0), 0.0);
}

TEST(GripRadius, NeutralEnvelopeIsThirtyMillimetres) {
  const GripperConfig cfg;
  EXPECT_NEAR(grip_radius(cfg, kLaw, ApertureMode::Neutral, 0.0, 0.0), 30.0, 1e-9);
  EXPECT_NEAR(grip_radius(cfg, kLaw, ApertureMode::Outward, 0.0, 0.0), 30.0, 1e-9);
}

TEST(GripRadius, ExpansionCoversTape) {
  const auto cfg = test::calibrated_gripper();
  EXPECT_GE(grip_radius(cfg, kLaw, ApertureMode::Outward, 30.0, 1.0), 75.0);
  EXPECT_NEAR(75.0 / grip_radius(cfg, kLaw, ApertureMode::Neutral, 0.0, 0.0), 2.5, 1e-9);
}

TEST(GripCheck, SmallBallIsGripped) {
  const auto cfg = test::calibrated_gripper();
  const auto ball = sphere(20.0, 104.0);
  const auto fingers = closed_on(cfg, ball, 10.0);
  const auto out = grip_check(cfg, kLaw, fingers, ball);
  EXPECT_EQ(out.status, GripStatus::Gripped);
  EXPECT_EQ(out.contacts.size(), 4u);
  // Four pads at 0.05 N/kPa x 10 kPa, friction limited by the ball.
  EXPECT_NEAR(out.payload_margin, 4 * 0.5 * 0.6 / 9.81 / 0.02, 1e-9);
}

TEST(GripCheck, TapeWithoutExpansionIsOutOfRange) {
  const auto cfg = test::calibrated_gripper();
  auto fingers = at_rest();
  for (std::size_t i = 0; i < kFingers; ++i) {
    fingers[i].actuation = {10.0, 1.0, 0.0};
    fingers[i].pose = actuator_pose(cfg.actuator(i), kLaw, fingers[i].actuation);
  }
  EXPECT_EQ(grip_check(cfg, kLaw, fingers, tape()).status, GripStatus::OutOfRange);
}

TEST(GripCheck, NoPressureNoContact) {
  const GripperConfig cfg;
  for (const auto& o : {sphere(20.0, 104.0), sphere(5.0, 300.0), tape()}) {
    EXPECT_EQ(grip_check(cfg, kLaw, at_rest(), o).status, GripStatus::NoContact);
  }
}

TEST(GripCheck, SinglePairOnlyNeedsItsOwnFingers) {
  const auto cfg = test::calibrated_gripper();
  auto ball = sphere(20.0, 104.0);
  ball.pairs = PairMask::A;
  auto fingers = closed_on(cfg, ball, 10.0);
  fingers[2] = fingers[3] = at_rest()[0];
  const auto out = grip_check(cfg, kLaw, fingers, ball);
  EXPECT_EQ(out.status, GripStatus::Gripped);
  EXPECT_EQ(out.contacts.size(), 2u);
}

TEST(GripCheck, OneSidedContactSlips) {
  const auto cfg = test::calibrated_gripper();
  const auto ball = sphere(20.0, 104.0);
  auto fingers = closed_on(cfg, ball, 10.0);
  fingers[1] = fingers[3] = at_rest()[0];
  fingers[1].actuation.pressure = fingers[3].actuation.pressure = 1.0;
  EXPECT_EQ(grip_check(cfg, kLaw, fingers, ball).status, GripStatus::Slipped);
}

TEST(GripCheck, ZeroResidualHoldsNothing) {
  const auto cfg = test::calibrated_gripper();
  const auto ball = sphere(20.0, 104.0);
  const auto out = grip_check(cfg, kLaw, closed_on(cfg, ball, 0.0), ball);
  EXPECT_EQ(out.status, GripStatus::Slipped);
  EXPECT_EQ(out.payload_margin, 0.0);
}

TEST(NormalForce, LinearInResidual) {
  const GripperConfig cfg;
  EXPECT_DOUBLE_EQ(normal_force(cfg, 20.0, 1.0), 1.0);
  EXPECT_EQ(normal_force(cfg, -5.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(normal_force(cfg, 20.0, 0.5), 0.5);
}

TEST(Objects, SignedDistance) {
  const auto ball = sphere(20.0, 100.0);
  EXPECT_NEAR(signed_distance(ball, {30.0, 0.0, 100.0}), 10.0, 1e-12);
  EXPECT_NEAR(signed_distance(ball, {0.0, 0.0, 100.0}), -20.0, 1e-12);
  const auto t = tape();
  EXPECT_NEAR(signed_distance(t, {30.0, 0.0, 100.0}), 8.0, 1e-12);   // in the hole
  EXPECT_NEAR(signed_distance(t, {80.0, 0.0, 100.0}), 5.0, 1e-12);   // outside the rim
  EXPECT_NEAR(signed_distance(t, {50.0, 0.0, 100.0}), -12.0, 1e-12); // inside the wall
  EXPECT_NEAR(signed_distance(t, {50.0, 0.0, 135.0}), 10.0, 1e-12);  // above
  EXPECT_EQ(radial_extent(t), 75.0);
}

TEST(Objects, Violations) {
  ObjectModel o = tape();
  o.shape = Annulus{30.0, 40.0, 0.0};
  o.mass = -1.0;
  EXPECT_GE(violations(o).size(), 3u);
  EXPECT_TRUE(violations(sphere(1.0, 0.0)).empty());
}

TEST(Config, Violations) {
  GripperConfig cfg;
  cfg.mount_separation = 0.0;
  cfg.fingertip_mu = 0.0;
  EXPECT_GE(violations(cfg).size(), 2u);
  EXPECT_TRUE(violations(GripperConfig{}).empty());
}

TEST(GripperProperty, ApertureSymmetricUnderSwap) {
  auto g = test::rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    GripperConfig cfg;
    cfg.pair_a[0].layer_gap = test::uniform(g, 12.5, 40.0);
    cfg.pair_a[1].layer_gap = test::uniform(g, 12.5, 40.0);
    GripperConfig swapped = cfg;
    std::swap(swapped.pair_a[0], swapped.pair_a[1]);
    const double p = test::uniform(g, 0.0, 100.0);
    const double e = test::uniform(g, 0.0, 1.0);
    const auto mode = trial % 2 ? ApertureMode::Outward : ApertureMode::Inward;
    ASSERT_EQ(pair_aperture(cfg, kLaw, PairId::A, p, mode, e), pair_aperture(swapped, kLaw, PairId::A, p, mode, e));
  }
}

TEST(GripperProperty, ApertureRatioNearThree) {
  const auto cfg = test::calibrated_gripper();
  const double ratio = pair_aperture(cfg, kLaw, PairId::A, 30.0, ApertureMode::Outward, 1.0) /
                       pair_aperture(cfg, kLaw, PairId::A, 0.0, ApertureMode::Outward, 1.0);
  EXPECT_GE(ratio, 2.8);
  EXPECT_LE(ratio, 3.2);
}

TEST(GripperProperty, MoreResidualNeverLosesGrip) {
  auto g = test::rng(42);
  const auto cfg = test::calibrated_gripper();
  for (int trial = 0; trial < 100; ++trial) {
    auto ball = sphere(test::uniform(g, 8.0, 28.0), test::uniform(g, 90.0, 120.0), test::uniform(g, 0.001, 0.3));
    bool gripped = false;
    const double pc = touch_pressure(cfg, ball);
    if (std::isnan(pc)) continue;
    for (int k = 0; k <= 40 && pc + k <= 100.0; ++k) {
      const auto status = grip_check(cfg, kLaw, closed_on(cfg, ball, k * 1.0), ball).status;
      if (gripped) {
        ASSERT_NE(status, GripStatus::Slipped) << "residual " << k;
      }
      gripped = gripped || status == GripStatus::Gripped;
    }
  }
}

TEST(GripperProperty, MarginIsExactlyTheHoldableMass) {
  auto g = test::rng(43);
  const auto cfg = test::calibrated_gripper();
  for (int trial = 0; trial < 200; ++trial) {
    auto ball = sphere(test::uniform(g, 8.0, 28.0), 104.0, test::uniform(g, 0.001, 0.05));
    const auto fingers = closed_on(cfg, ball, test::uniform(g, 0.0, 30.0));
    const auto out = grip_check(cfg, kLaw, fingers, ball);
    if (out.status != GripStatus::Gripped) continue;
    ASSERT_GE(out.payload_margin, 1.0);
    ball.mass *= out.payload_margin * (1.0 + 1e-9);
    ASSERT_EQ(grip_check(cfg, kLaw, fingers, ball).status, GripStatus::Slipped);
  }
}

TEST(GripperProperty, ExpansionNeverShrinksGripRadius) {
  auto g = test::rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    GripperConfig cfg;
    set_layer_gap(cfg, test::uniform(g, 12.5, 40.0));
    const double p = test::uniform(g, 0.0, 100.0);
    const double e = test::uniform(g, 0.0, 1.0);
    ASSERT_GE(grip_radius(cfg, kLaw, ApertureMode::Outward, p, e),
              grip_radius(cfg, kLaw, ApertureMode::Neutral, p, e));
  }
}

TEST(GripperProperty, GripRadiusAgreesWithGripCheck) {
  const auto cfg = test::calibrated_gripper();
  const double r = grip_radius(cfg, kLaw, ApertureMode::Neutral, 0.0, 0.0);
  auto closing = at_rest();
  for (auto& f : closing) f.actuation = {1.0, 0.0, 0.0};
  // Slightly smaller spheres fit and can be reached; larger ones collide at rest.
  EXPECT_EQ(grip_check(cfg, kLaw, closing, sphere(r - 1.0, 104.0)).status, GripStatus::NoContact);
  EXPECT_EQ(grip_check(cfg, kLaw, closing, sphere(r + 1.0, 104.0)).status, GripStatus::OutOfRange);
}

TEST(GripperProperty, GripRadiusMonotoneUnderExpansion) {
  const auto cfg = test::calibrated_gripper();
  double prev = 0.0;
  for (int k = 0; k <= 300; ++k) {
    const double r = grip_radius(cfg, kLaw, ApertureMode::Outward, k * 0.1, 1.0);
    ASSERT_GE(r, prev - 1e-12);
    prev = r;
  }
}

}  // namespace
}  // namespace mash
