// Copyright 2026 The ACT-Bench Tools Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace actbench::traj {

// Ego convention: +x right, +y forward, heading measured from +y and
// increasing toward +x. Global poses use the same handedness.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, normalized to (-pi, pi]
  double t = 0.0;        // seconds from trajectory start

  bool operator==(const Pose2D&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Unit forward vector of a heading.
Vec2 forward_of(double heading);

enum class FrameKind { kGlobal, kEgo };

std::string_view to_string(FrameKind kind);
FrameKind frame_kind_from_string(std::string_view name);

/// Coordinate frame tag. Ego frames remember the global pose they are
/// anchored at so the transform can be undone.
struct Frame {
  FrameKind kind = FrameKind::kEgo;
  Pose2D anchor{};

  static Frame global() { return {FrameKind::kGlobal, {}}; }
  static Frame ego(const Pose2D& anchor = {}) { return {FrameKind::kEgo, anchor}; }

  bool operator==(const Frame&) const = default;
};

/// Timestamped 2-D poses in one frame. Construction validates the invariants:
/// at least one point, finite values, t >= 0 and strictly increasing.
/// Headings are normalized on construction.
class Trajectory {
 public:
  Trajectory(Frame frame, std::vector<Pose2D> points, double fps);

  const Frame& frame() const { return frame_; }
  std::span<const Pose2D> points() const { return points_; }
  double fps() const { return fps_; }
  std::size_t size() const { return points_.size(); }
  const Pose2D& front() const { return points_.front(); }
  const Pose2D& back() const { return points_.back(); }
  const Pose2D& operator[](std::size_t i) const { return points_[i]; }

  std::vector<double> timestamps() const;
  std::vector<Vec2> positions() const;

  /// Contiguous sub-range [first, first + count).
  Trajectory slice(std::size_t first, std::size_t count) const;

  bool operator==(const Trajectory&) const = default;

 private:
  Frame frame_;
  std::vector<Pose2D> points_;
  double fps_;
};

/// Re-expresses a global trajectory relative to `anchor`: forward maps to +y,
/// headings are rebased, timestamps are preserved.
Trajectory to_local_frame(const Trajectory& traj, const Pose2D& anchor);

/// Inverse of to_local_frame using the anchor stored in the ego frame tag.
Trajectory to_global_frame(const Trajectory& traj);

/// Pose-level forms of the same SE(2) transform.
Pose2D pose_to_local(const Pose2D& p, const Pose2D& anchor);
Pose2D pose_to_global(const Pose2D& p, const Pose2D& anchor);

/// Linear position and shortest-arc heading interpolation at the given
/// strictly increasing timestamps. Exact at original timestamps.
Trajectory resample_by_time(const Trajectory& traj, std::span<const double> timestamps);

/// Pose at a single time, same interpolation rules as resample_by_time.
Pose2D pose_at(const Trajectory& traj, double t);

/// Speed between the first two points, in km/h.
double initial_speed_kmh(const Trajectory& traj);

/// Sum of segment lengths in meters.
double arc_length(const Trajectory& traj);

}  // namespace actbench::traj
