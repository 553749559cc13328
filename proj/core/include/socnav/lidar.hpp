#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "socnav/geometry.hpp"

namespace socnav {

inline constexpr std::size_t kNumBeams = 1800;
inline constexpr std::size_t kStackDepth = 6;
inline constexpr double kDefaultMaxRange = 10.0;  // m
inline constexpr double kMinRange = 1e-3;         // m

/// Beam i points at angle 2*pi*i/N in the sensor frame.
double beam_angle(std::size_t i);

/// One 360 degree sweep with the pose it was captured from.
struct LidarScan {
  std::vector<double> ranges;  // kNumBeams entries in (0, max_range]
  Pose2 capture_pose;
  double max_range = kDefaultMaxRange;

  double min_range() const;
};

/// Raycast every beam from the ego center against the given bodies.
/// The ego itself must not be in `circles`.
LidarScan cast_scan(const Pose2& ego, std::span<const Circle> circles,
                    double max_range = kDefaultMaxRange);

/// Hit points in the capture frame: (r cos a_i, r sin a_i).
std::vector<Vec2> scan_points_local(const LidarScan& scan);

/// Re-expresses each beam's hit point in `current_pose`'s frame and returns its
/// distance, clamped to [kMinRange, max_range]. Output index i is still old beam i;
/// the bearing is not re-binned.
std::vector<double> reproject_scan(const LidarScan& old, const Pose2& current_pose);

/// K x N matrix, row-major, oldest first. Rows 0..K-2 are re-projected history,
/// row K-1 is the newest raw scan.
struct TransformedStack {
  std::size_t rows = kStackDepth;
  std::size_t cols = kNumBeams;
  std::vector<double> values;

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols, cols);
  }
};

/// Rolling buffer of the last K scans. Before K scans have been pushed the
/// oldest one is replicated, so the stack is always full.
class ScanStack {
 public:
  explicit ScanStack(std::size_t depth = kStackDepth) : depth_(depth) {}

  void reset(const LidarScan& first);
  void push(LidarScan scan);

  std::size_t depth() const { return depth_; }
  bool empty() const { return scans_.empty(); }
  const LidarScan& newest() const { return scans_.back(); }
  const std::deque<LidarScan>& scans() const { return scans_; }

 private:
  std::size_t depth_;
  std::deque<LidarScan> scans_;
};

TransformedStack build_observation(const ScanStack& stack, const Pose2& current_pose);

}  // namespace socnav
