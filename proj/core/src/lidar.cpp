#include "socnav/lidar.hpp"

#include <algorithm>
#include <cmath>

namespace socnav {
namespace {

constexpr double kBeamStep = 2.0 * std::numbers::pi / static_cast<double>(kNumBeams);

const std::array<Vec2, kNumBeams>& beam_directions() {
  static const auto table = [] {
    std::array<Vec2, kNumBeams> t{};
    for (std::size_t i = 0; i < kNumBeams; ++i) {
      const double a = beam_angle(i);
      t[i] = {std::cos(a), std::sin(a)};
    }
    return t;
  }();
  return table;
}

}  // namespace

double beam_angle(std::size_t i) {
  return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(kNumBeams);
}

double LidarScan::min_range() const { return *std::min_element(ranges.begin(), ranges.end()); }

LidarScan cast_scan(const Pose2& ego, std::span<const Circle> circles, double max_range) {
  LidarScan scan;
  scan.capture_pose = ego;
  scan.max_range = max_range;
  scan.ranges.assign(kNumBeams, max_range);

  const Rotation rot(ego.heading);
  const auto& dirs = beam_directions();
  const auto n = static_cast<long>(kNumBeams);

  for (const Circle& c : circles) {
    const Vec2 rel = c.center - ego.position;
    const double d = norm(rel);
    if (d - c.radius > max_range) continue;
    if (d < c.radius) {
      std::fill(scan.ranges.begin(), scan.ranges.end(), kMinRange);
      continue;
    }
    // Only beams inside the circle's angular footprint can hit it; widen by one
    // beam on each side and let the exact intersection test decide.
    const double half_width = std::asin(std::min(1.0, c.radius / d));
    const double bearing = std::atan2(rel.y, rel.x) - ego.heading;
    const long first = static_cast<long>(std::floor((bearing - half_width) / kBeamStep)) - 1;
    const long last = static_cast<long>(std::ceil((bearing + half_width) / kBeamStep)) + 1;
    for (long k = first; k <= std::min(last, first + n - 1); ++k) {
      const auto i = static_cast<std::size_t>(((k % n) + n) % n);
      const auto hit = ray_circle_hit(ego.position, rot.apply(dirs[i]), c, max_range);
      if (hit) scan.ranges[i] = std::min(scan.ranges[i], std::max(*hit, kMinRange));
    }
  }
  return scan;
}

std::vector<Vec2> scan_points_local(const LidarScan& scan) {
  const auto& dirs = beam_directions();
  std::vector<Vec2> pts(scan.ranges.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = scan.ranges[i] * dirs[i];
  return pts;
}

std::vector<double> reproject_scan(const LidarScan& old, const Pose2& current_pose) {
  const Frame then(old.capture_pose);
  const Frame now(current_pose);
  const auto& dirs = beam_directions();
  std::vector<double> out(old.ranges.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Vec2 global = then.to_world(old.ranges[i] * dirs[i]);
    const double r = norm(now.to_local(global));
    out[i] = std::clamp(r, kMinRange, old.max_range);
  }
  return out;
}

void ScanStack::reset(const LidarScan& first) {
  scans_.assign(depth_, first);
}

void ScanStack::push(LidarScan scan) {
  if (scans_.empty()) {
    reset(scan);
    return;
  }
  scans_.pop_front();
  scans_.push_back(std::move(scan));
}

TransformedStack build_observation(const ScanStack& stack, const Pose2& current_pose) {
  TransformedStack out;
  out.rows = stack.depth();
  out.cols = kNumBeams;
  out.values.reserve(out.rows * out.cols);
  const auto& scans = stack.scans();
  for (std::size_t k = 0; k + 1 < scans.size(); ++k) {
    const auto row = reproject_scan(scans[k], current_pose);
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  const auto& newest = scans.back().ranges;
  out.values.insert(out.values.end(), newest.begin(), newest.end());
  return out;
}

}  // namespace socnav
