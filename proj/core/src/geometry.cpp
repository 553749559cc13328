#include "socnav/geometry.hpp"

namespace socnav {

std::optional<double> ray_circle_hit(const Vec2& origin, const Vec2& direction,
                                     const Circle& circle, double max_range) {
  // |o + t d - c|^2 = r^2 with |d| = 1  ->  t^2 + 2 b t + c0 = 0
  const Vec2 rel = origin - circle.center;
  const double c0 = norm_sq(rel) - circle.radius * circle.radius;
  if (c0 < 0.0) return 0.0;

  const double b = dot(rel, direction);
  if (b >= 0.0) return std::nullopt;  // circle behind or tangent at origin
  const double disc = b * b - c0;
  if (disc < 0.0) return std::nullopt;

  // Near root, written to avoid cancellation: t = c0 / (-b + sqrt(disc)).
  const double q = -b + std::sqrt(disc);
  double t = c0 / q;
  if (t <= 0.0) t = q;  // origin on the boundary: the far root is the only positive one
  if (t > max_range) return std::nullopt;
  return t;
}

}  // namespace socnav
