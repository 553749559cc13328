#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "socnav/geometry.hpp"

using namespace socnav;
using socnav::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest positive root of |o + t d - c|^2 = r^2 for unit d, by the textbook formula.
std::optional<double> quadratic_hit(Vec2 o, Vec2 d, Circle c, double max_range) {
  const double ox = o.x - c.center.x, oy = o.y - c.center.y;
  const double A = d.x * d.x + d.y * d.y;
  const double B = 2.0 * (ox * d.x + oy * d.y);
  const double C = ox * ox + oy * oy - c.radius * c.radius;
  const double disc = B * B - 4 * A * C;
  if (disc < 0) return std::nullopt;
  const double t1 = (-B - std::sqrt(disc)) / (2 * A);
  const double t2 = (-B + std::sqrt(disc)) / (2 * A);
  double t;
  if (t1 > 0) t = t1;
  else if (t2 > 0) t = t2;
  else return std::nullopt;
  if (t > max_range) return std::nullopt;
  return t;
}

}  // namespace

TEST(Rotate, QuarterTurnAndIdentity) {
  EXPECT_EQ(rotate({1, 0}, 0.0), Vec2(1, 0));
  const Vec2 q = rotate({1, 0}, kPi / 2);
  EXPECT_NEAR(q.x, 0.0, 1e-15);
  EXPECT_NEAR(q.y, 1.0, 1e-15);
}

TEST(Rotate, MatchesScalarTrig) {
  const double c = std::cos(0.7), s = std::sin(0.7);
  const Vec2 r = rotate({0.3, -0.4}, 0.7);
  EXPECT_NEAR(r.x, 0.3 * c + 0.4 * s, 1e-15);
  EXPECT_NEAR(r.y, 0.3 * s - 0.4 * c, 1e-15);
}

TEST(Rotate, PreservesNorm) {
  Gen g(1);
  for (int i = 0; i < 10000; ++i) {
    const Vec2 v = g.point(100.0);
    const double th = g.real(-50.0, 50.0);
    ASSERT_NEAR(norm(rotate(v, th)), norm(v), 1e-12);
  }
}

TEST(Frames, FixedExamples) {
  const Vec2 a = world_to_frame({5, 5}, Pose2{{5, 5}, 2.3});
  EXPECT_NEAR(a.x, 0.0, 1e-15);
  EXPECT_NEAR(a.y, 0.0, 1e-15);
  const Vec2 b = world_to_frame({1, 0}, Pose2{{0, 0}, kPi / 2});
  EXPECT_NEAR(b.x, 0.0, 1e-15);
  EXPECT_NEAR(b.y, -1.0, 1e-15);
  EXPECT_EQ(frame_to_world({0, 0}, Pose2{{2, 3}, 1.1}), Vec2(2, 3));
  EXPECT_EQ(frame_to_world({1, 0}, Pose2{{0, 0}, 0.0}), Vec2(1, 0));
}

TEST(Frames, RoundTripBothWays) {
  Gen g(2);
  for (int i = 0; i < 10000; ++i) {
    const Pose2 f = g.pose();
    const Vec2 p = g.point();
    const Vec2 a = frame_to_world(world_to_frame(p, f), f);
    const Vec2 b = world_to_frame(frame_to_world(p, f), f);
    ASSERT_NEAR(a.x, p.x, 1e-12);
    ASSERT_NEAR(a.y, p.y, 1e-12);
    ASSERT_NEAR(b.x, p.x, 1e-12);
    ASSERT_NEAR(b.y, p.y, 1e-12);
  }
}

TEST(NormalizeAngle, RangeAndPeriodicity) {
  EXPECT_DOUBLE_EQ(normalize_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(-kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(0.0), 0.0);
  Gen g(3);
  for (int i = 0; i < 10000; ++i) {
    const double th = g.angle();
    const double n = normalize_angle(th);
    ASSERT_GT(n, -kPi);
    ASSERT_LE(n, kPi);
    for (int k = -3; k <= 3; ++k) {
      const double shifted = normalize_angle(th + 2.0 * kPi * k);
      // Both ends of the interval are the same direction.
      const double diff = std::abs(shifted - n);
      ASSERT_TRUE(diff < 1e-12 || std::abs(diff - 2.0 * kPi) < 1e-12) << th << " k=" << k;
    }
  }
}

TEST(Pose2, ConstructorWrapsHeading) {
  EXPECT_NEAR(Pose2({0, 0}, 3 * kPi / 2).heading, -kPi / 2, 1e-15);
}

TEST(RayCircle, AxisHitAndMiss) {
  const auto hit = ray_circle_hit({0, 0}, {1, 0}, {{5, 0}, 1}, 10);
  ASSERT_TRUE(hit);
  EXPECT_DOUBLE_EQ(*hit, 4.0);
  EXPECT_FALSE(ray_circle_hit({0, 0}, {0, 1}, {{5, 0}, 1}, 10));
}

TEST(RayCircle, OffsetCircleMatchesQuadratic) {
  // Line y = 0 against circle at (5, 2) radius 1 never meets.
  EXPECT_FALSE(ray_circle_hit({0, 0}, {1, 0}, {{5, 2}, 1}, 10));
  EXPECT_FALSE(quadratic_hit({0, 0}, {1, 0}, {{5, 2}, 1}, 10));
  // Radius 2.5 does: t = 5 - sqrt(2.5^2 - 2^2) = 3.5.
  const auto hit = ray_circle_hit({0, 0}, {1, 0}, {{5, 2}, 2.5}, 10);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(*hit, 3.5, 1e-12);
  EXPECT_NEAR(*hit, *quadratic_hit({0, 0}, {1, 0}, {{5, 2}, 2.5}, 10), 1e-12);
}

TEST(RayCircle, BehindInsideAndRange) {
  EXPECT_FALSE(ray_circle_hit({0, 0}, {-1, 0}, {{5, 0}, 1}, 10));
  EXPECT_EQ(ray_circle_hit({5, 0}, {1, 0}, {{5, 0}, 1}, 10), 0.0);
  EXPECT_FALSE(ray_circle_hit({0, 0}, {1, 0}, {{5, 0}, 1}, 3.9));
  EXPECT_TRUE(ray_circle_hit({0, 0}, {1, 0}, {{5, 0}, 1}, 4.0));
}

TEST(RayCircle, RandomAgainstQuadraticOracle) {
  Gen g(4);
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    const Vec2 o = g.point(5.0);
    const double a = g.angle();
    const Vec2 d{std::cos(a), std::sin(a)};
    const Circle c{g.point(5.0), g.real(0.1, 2.0)};
    if (norm(o - c.center) < c.radius) continue;  // inside returns 0 by contract
    const auto got = ray_circle_hit(o, d, c, 10.0);
    const auto want = quadratic_hit(o, d, c, 10.0);
    ASSERT_EQ(got.has_value(), want.has_value()) << i;
    if (!got) continue;
    ++hits;
    ASSERT_NEAR(*got, *want, 1e-9);
    ASSERT_NEAR(norm(o + *got * d - c.center) - c.radius, 0.0, 1e-9);
  }
  EXPECT_GT(hits, 1000);
}
