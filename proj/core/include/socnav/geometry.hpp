#pragma once

#include <cmath>
#include <numbers>
#include <optional>

namespace socnav {

/// 2D vector in meters. All simulation state is built from these.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
/// 2D cross product (z component of a x b).
constexpr double det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
constexpr double norm_sq(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline Vec2 normalized(const Vec2& v) { return v / norm(v); }
/// Counter-clockwise perpendicular.
constexpr Vec2 perp_left(const Vec2& v) { return {-v.y, v.x}; }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Wraps an angle into (-pi, pi].
inline double normalize_angle(double theta) {
  double r = std::remainder(theta, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

/// Planar pose: world-frame position plus heading in (-pi, pi].
struct Pose2 {
  Vec2 position;
  double heading = 0.0;

  constexpr Pose2() = default;
  Pose2(Vec2 p, double theta) : position(p), heading(normalize_angle(theta)) {}

  bool operator==(const Pose2&) const = default;
};

inline bool is_finite(const Pose2& p) { return is_finite(p.position) && std::isfinite(p.heading); }

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Rotation R(theta) with cached sine/cosine, for transforming many points by one angle.
class Rotation {
 public:
  explicit Rotation(double theta) : c_(std::cos(theta)), s_(std::sin(theta)) {}

  Vec2 apply(const Vec2& v) const { return {c_ * v.x - s_ * v.y, s_ * v.x + c_ * v.y}; }
  Vec2 apply_inverse(const Vec2& v) const { return {c_ * v.x + s_ * v.y, -s_ * v.x + c_ * v.y}; }

 private:
  double c_;
  double s_;
};

/// A pose prepared for repeated local<->world transforms.
class Frame {
 public:
  explicit Frame(const Pose2& pose) : origin_(pose.position), rot_(pose.heading) {}

  Vec2 to_world(const Vec2& local) const { return origin_ + rot_.apply(local); }
  Vec2 to_local(const Vec2& world) const { return rot_.apply_inverse(world - origin_); }

 private:
  Vec2 origin_;
  Rotation rot_;
};

inline Vec2 rotate(const Vec2& v, double theta) { return Rotation(theta).apply(v); }

/// R(theta)^-1 (p_world - frame.position).
inline Vec2 world_to_frame(const Vec2& p_world, const Pose2& frame) {
  return Frame(frame).to_local(p_world);
}

/// frame.position + R(theta) p_local.
inline Vec2 frame_to_world(const Vec2& p_local, const Pose2& frame) {
  return Frame(frame).to_world(p_local);
}

/// Distance along a unit-length ray to the first intersection with a circle
/// within (0, max_range]. An origin strictly inside the circle yields 0.
std::optional<double> ray_circle_hit(const Vec2& origin, const Vec2& direction,
                                     const Circle& circle, double max_range);

}  // namespace socnav
