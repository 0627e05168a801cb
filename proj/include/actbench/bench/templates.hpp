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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "actbench/labeler/action_label.hpp"
#include "actbench/labeler/rule_config.hpp"
#include "actbench/traj_core/trajectory.hpp"

namespace actbench::bench {

using labeler::BenchCategory;

/// Parametric description of one instruction template. Which fields matter
/// depends on the category:
///
///   straight / curving / shifting   speed_kmh (+ radius, or lateral_offset
///                                   and shift_length)
///   starting                        dwell_s, accel > 0, speed_kmh == 0
///   stopping                        speed_kmh, accel < 0, stops in window
///   accelerating / decelerating     speed_kmh, accel (sign by category)
///
/// Speeds follow a constant-acceleration ramp clamped at zero; geometry is a
/// chain of straight and constant-curvature pieces with heading equal to the
/// path tangent.
struct TemplateParams {
  std::string id;
  BenchCategory category = BenchCategory::kStraightConstantSpeed;
  double speed_kmh = 0.0;       // initial speed
  double accel = 0.0;           // m/s^2, signed
  double radius = 0.0;          // m, curving
  double lateral_offset = 0.0;  // m, shifting
  double shift_length = 0.0;    // m, longitudinal extent of the lane change
  double dwell_s = 0.0;         // stationary lead-in, starting only
  double duration_s = 4.4;      // instruction window
  double lookahead_s = 3.0;     // extra path for per-frame instructions
  double fps = 10.0;

  bool operator==(const TemplateParams&) const = default;
};

/// One instruction template. `path` covers the instruction window plus the
/// look-ahead in the template's own ego frame (first pose at the origin,
/// facing +y). `per_frame[k]` is the instruction issued at window frame k,
/// expressed in the frame of the ideal pose at that time.
struct TrajectoryTemplate {
  BenchCategory category;
  std::string variant_id;
  double nominal_speed_kmh = 0.0;  // initial_speed_kmh(path)
  traj::Trajectory path;
  std::size_t window_points = 0;
  std::vector<double> schedule;  // look-ahead offsets of per_frame points, s
  std::vector<traj::Trajectory> per_frame;

  /// The first window_points poses of `path`: the full intended trajectory.
  traj::Trajectory instruction() const;
};

/// Default per-frame look-ahead offsets (six points, 0.45 s .. 2.95 s).
std::vector<double> default_schedule();

/// Builds the path and per-frame instructions. Throws kParameter when the
/// parameters do not fit the category, or when the instruction window does
/// not label into `category` under `rules`.
TrajectoryTemplate generate_template(const TemplateParams& params,
                                     const labeler::RuleConfig& rules = {},
                                     std::span<const double> schedule = {});

/// For each frame k in [0, round(horizon_s * fps)), samples the path at
/// t_k + t_l and re-expresses the samples in the frame of the pose at t_k,
/// with timestamps t_l. Throws kCoverage when the path ends too early.
/// Samples between path points are interpolated; generate_template fills
/// per_frame the same way but from the exact geometry.
std::vector<traj::Trajectory> per_frame_instructions(const TrajectoryTemplate& tmpl,
                                                     double horizon_s,
                                                     std::span<const double> schedule);

/// The shipped 36-template library: four variations for each of the nine
/// categories.
std::vector<TemplateParams> default_template_params();

/// INI form: one [section] per template id with keys named like the
/// TemplateParams fields; `category` uses the human-readable names.
std::vector<TemplateParams> parse_template_params(std::istream& in);
std::vector<TemplateParams> load_template_params(const std::string& path);
std::string write_template_params(std::span<const TemplateParams> params);

}  // namespace actbench::bench
