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

#include "actbench/traj_core/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "actbench/error.hpp"

namespace actbench::traj {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Timestamps this close outside the trajectory span are clamped to it.
constexpr double kTimeSlack = 1e-9;

bool finite_pose(const Pose2D& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.heading) &&
         std::isfinite(p.t);
}

Pose2D interpolate(const Pose2D& a, const Pose2D& b, double t) {
  const double f = (t - a.t) / (b.t - a.t);
  Pose2D out;
  out.x = a.x + f * (b.x - a.x);
  out.y = a.y + f * (b.y - a.y);
  out.heading = normalize_angle(a.heading + f * normalize_angle(b.heading - a.heading));
  out.t = t;
  return out;
}

}  // namespace

double normalize_angle(double angle) {
  double a = std::remainder(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

Vec2 forward_of(double heading) { return {std::sin(heading), std::cos(heading)}; }

std::string_view to_string(FrameKind kind) {
  return kind == FrameKind::kGlobal ? "global" : "ego";
}

FrameKind frame_kind_from_string(std::string_view name) {
  if (name == "global") return FrameKind::kGlobal;
  if (name == "ego") return FrameKind::kEgo;
  throw Error(ErrorCode::kSchema, "unknown frame '" + std::string(name) + "'");
}

Trajectory::Trajectory(Frame frame, std::vector<Pose2D> points, double fps)
    : frame_(frame), points_(std::move(points)), fps_(fps) {
  if (points_.empty()) {
    throw Error(ErrorCode::kInvalidInput, "trajectory needs at least one point");
  }
  if (!std::isfinite(fps_) || fps_ <= 0.0) {
    throw Error(ErrorCode::kInvalidInput, "fps must be positive and finite");
  }
  if (!finite_pose(frame_.anchor)) {
    throw Error(ErrorCode::kInvalidInput, "frame anchor is not finite");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    Pose2D& p = points_[i];
    if (!finite_pose(p)) {
      throw Error(ErrorCode::kInvalidInput, "point " + std::to_string(i) + " is not finite");
    }
    if (p.t < 0.0) {
      throw Error(ErrorCode::kInvalidInput, "point " + std::to_string(i) + " has negative t");
    }
    if (i > 0 && !(p.t > points_[i - 1].t)) {
      throw Error(ErrorCode::kInvalidInput,
                  "timestamps not strictly increasing at point " + std::to_string(i));
    }
    p.heading = normalize_angle(p.heading);
  }
}

std::vector<double> Trajectory::timestamps() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.t);
  return out;
}

std::vector<Vec2> Trajectory::positions() const {
  std::vector<Vec2> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back({p.x, p.y});
  return out;
}

Trajectory Trajectory::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > points_.size()) {
    throw Error(ErrorCode::kRange, "slice out of range");
  }
  return Trajectory(frame_,
                    std::vector<Pose2D>(points_.begin() + static_cast<std::ptrdiff_t>(first),
                                        points_.begin() + static_cast<std::ptrdiff_t>(first + count)),
                    fps_);
}

Pose2D pose_to_local(const Pose2D& p, const Pose2D& anchor) {
  const double dx = p.x - anchor.x;
  const double dy = p.y - anchor.y;
  const double s = std::sin(anchor.heading);
  const double c = std::cos(anchor.heading);
  // right = (c, -s), forward = (s, c)
  return {dx * c - dy * s, dx * s + dy * c, normalize_angle(p.heading - anchor.heading), p.t};
}

Pose2D pose_to_global(const Pose2D& p, const Pose2D& anchor) {
  const double s = std::sin(anchor.heading);
  const double c = std::cos(anchor.heading);
  return {anchor.x + p.x * c + p.y * s, anchor.y - p.x * s + p.y * c,
          normalize_angle(p.heading + anchor.heading), p.t};
}

Trajectory to_local_frame(const Trajectory& traj, const Pose2D& anchor) {
  if (!finite_pose(anchor)) {
    throw Error(ErrorCode::kInvalidInput, "anchor pose is not finite");
  }
  if (traj.frame().kind != FrameKind::kGlobal) {
    throw Error(ErrorCode::kFrame, "to_local_frame expects a global trajectory");
  }
  std::vector<Pose2D> out;
  out.reserve(traj.size());
  for (const auto& p : traj.points()) out.push_back(pose_to_local(p, anchor));
  Pose2D stored = anchor;
  stored.heading = normalize_angle(anchor.heading);
  return Trajectory(Frame::ego(stored), std::move(out), traj.fps());
}

Trajectory to_global_frame(const Trajectory& traj) {
  if (traj.frame().kind != FrameKind::kEgo) {
    throw Error(ErrorCode::kFrame, "to_global_frame expects an ego trajectory");
  }
  const Pose2D& anchor = traj.frame().anchor;
  std::vector<Pose2D> out;
  out.reserve(traj.size());
  for (const auto& p : traj.points()) out.push_back(pose_to_global(p, anchor));
  return Trajectory(Frame::global(), std::move(out), traj.fps());
}

Pose2D pose_at(const Trajectory& traj, double t) {
  const auto pts = traj.points();
  if (!std::isfinite(t) || t < pts.front().t - kTimeSlack || t > pts.back().t + kTimeSlack) {
    throw Error(ErrorCode::kRange, "timestamp " + std::to_string(t) + " outside [" +
                                       std::to_string(pts.front().t) + ", " +
                                       std::to_string(pts.back().t) + "]");
  }
  t = std::clamp(t, pts.front().t, pts.back().t);
  auto it = std::lower_bound(pts.begin(), pts.end(), t,
                             [](const Pose2D& p, double v) { return p.t < v; });
  if (it->t == t) {
    return *it;
  }
  return interpolate(*(it - 1), *it, t);
}

Trajectory resample_by_time(const Trajectory& traj, std::span<const double> timestamps) {
  if (timestamps.empty()) {
    throw Error(ErrorCode::kRange, "no timestamps to resample at");
  }
  std::vector<Pose2D> out;
  out.reserve(timestamps.size());
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (i > 0 && !(timestamps[i] > timestamps[i - 1])) {
      throw Error(ErrorCode::kRange, "resample timestamps must be strictly increasing");
    }
    Pose2D p = pose_at(traj, timestamps[i]);
    p.t = timestamps[i];
    out.push_back(p);
  }
  return Trajectory(traj.frame(), std::move(out), traj.fps());
}

double initial_speed_kmh(const Trajectory& traj) {
  if (traj.size() < 2) {
    throw Error(ErrorCode::kInsufficientPoints, "initial speed needs two points");
  }
  const Pose2D& a = traj[0];
  const Pose2D& b = traj[1];
  const double dt = b.t - a.t;
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "zero time gap between first two points");
  }
  return std::hypot(b.x - a.x, b.y - a.y) / dt * 3.6;
}

double arc_length(const Trajectory& traj) {
  double total = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    total += std::hypot(traj[i].x - traj[i - 1].x, traj[i].y - traj[i - 1].y);
  }
  return total;
}

}  // namespace actbench::traj
