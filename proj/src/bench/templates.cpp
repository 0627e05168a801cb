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


#include "actbench/bench/templates.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "actbench/codec/interleave.hpp"
#include "actbench/error.hpp"
#include "actbench/labeler/labeler.hpp"

namespace actbench::bench {
namespace {

using traj::Frame;
using traj::Pose2D;
using traj::Trajectory;

constexpr double kKmhToMs = 1.0 / 3.6;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Constant curvature piece; positive curvature turns right.
struct Piece {
  double length;
  double curvature;
};

Pose2D advance(const Pose2D& p, double ds, double curvature) {
  if (curvature == 0.0) {
    return {p.x + ds * std::sin(p.heading), p.y + ds * std::cos(p.heading), p.heading, 0.0};
  }
  const double h = p.heading + curvature * ds;
  return {p.x + (std::cos(p.heading) - std::cos(h)) / curvature,
          p.y + (std::sin(h) - std::sin(p.heading)) / curvature, h, 0.0};
}

// The final piece extends past its nominal length.
Pose2D pose_along(const std::vector<Piece>& pieces, double s) {
  Pose2D p{};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const bool last = i + 1 == pieces.size();
    if (last || s <= pieces[i].length) return advance(p, s, pieces[i].curvature);
    p = advance(p, pieces[i].length, pieces[i].curvature);
    s -= pieces[i].length;
  }
  return p;
}

double distance_at(const TemplateParams& p, double t) {
  const double tau = t - p.dwell_s;
  if (tau <= 0.0) return 0.0;
  const double v0 = p.speed_kmh * kKmhToMs;
  if (p.accel < 0.0) {
    const double t_stop = v0 / -p.accel;
    if (tau >= t_stop) return v0 * v0 / (2.0 * -p.accel);
  }
  return v0 * tau + 0.5 * p.accel * tau * tau;
}

double speed_at(const TemplateParams& p, double t) {
  const double tau = t - p.dwell_s;
  const double v0 = p.speed_kmh * kKmhToMs;
  if (tau <= 0.0) return 0.0;
  return std::max(0.0, v0 + p.accel * tau);
}

[[noreturn]] void bad(const TemplateParams& p, const std::string& what) {
  throw Error(ErrorCode::kParameter, "template '" + p.id + "': " + what);
}

std::size_t count_points(double seconds, double fps) {
  return static_cast<std::size_t>(std::lround(seconds * fps));
}

void check_params(const TemplateParams& p) {
  for (double v : {p.speed_kmh, p.accel, p.radius, p.lateral_offset, p.shift_length, p.dwell_s,
                   p.duration_s, p.lookahead_s, p.fps}) {
    if (!std::isfinite(v)) bad(p, "non-finite parameter");
  }
  if (p.id.empty()) bad(p, "empty id");
  if (!(p.fps > 0.0)) bad(p, "fps must be positive");
  if (count_points(p.duration_s, p.fps) < 2) bad(p, "window shorter than two frames");
  if (p.lookahead_s < 0.0 || p.speed_kmh < 0.0 || p.dwell_s < 0.0) {
    bad(p, "negative speed, dwell or look-ahead");
  }
  if (p.dwell_s > 0.0 && p.category != BenchCategory::kStarting) {
    bad(p, "dwell is only meaningful for starting");
  }
  const double span = static_cast<double>(count_points(p.duration_s, p.fps) - 1) / p.fps;
  switch (p.category) {
    case BenchCategory::kCurvingToLeft:
    case BenchCategory::kCurvingToRight:
      if (!(p.radius > 0.0)) bad(p, "curving needs a positive radius");
      if (!(speed_at(p, span) > 0.0) || p.speed_kmh == 0.0) bad(p, "curving must keep moving");
      break;
    case BenchCategory::kShiftingTowardsLeft:
    case BenchCategory::kShiftingTowardsRight:
      if (!(p.lateral_offset > 0.0) || !(p.shift_length > 0.0)) {
        bad(p, "shifting needs positive lateral_offset and shift_length");
      }
      if (p.accel != 0.0 || p.speed_kmh == 0.0) bad(p, "shifting is at constant non-zero speed");
      break;
    case BenchCategory::kStarting:
      if (p.speed_kmh != 0.0 || !(p.accel > 0.0)) bad(p, "starting needs speed 0 and accel > 0");
      if (!(p.dwell_s < span)) bad(p, "dwell covers the whole window");
      break;
    case BenchCategory::kStopping:
      if (p.speed_kmh == 0.0 || !(p.accel < 0.0)) bad(p, "stopping needs speed > 0, accel < 0");
      if (p.speed_kmh * kKmhToMs / -p.accel > span) bad(p, "does not stop inside the window");
      break;
    case BenchCategory::kAccelerating:
      if (p.speed_kmh == 0.0 || !(p.accel > 0.0)) bad(p, "accelerating needs speed > 0, accel > 0");
      break;
    case BenchCategory::kDecelerating:
      if (p.speed_kmh == 0.0 || !(p.accel < 0.0)) bad(p, "decelerating needs speed > 0, accel < 0");
      if (!(speed_at(p, span) > 0.0)) bad(p, "decelerating stops inside the window");
      break;
    case BenchCategory::kStraightConstantSpeed:
      if (p.speed_kmh == 0.0 || p.accel != 0.0) bad(p, "constant speed needs speed > 0, accel 0");
      break;
  }
}

std::vector<Piece> geometry(const TemplateParams& p) {
  switch (p.category) {
    case BenchCategory::kCurvingToRight: return {{kInf, 1.0 / p.radius}};
    case BenchCategory::kCurvingToLeft: return {{kInf, -1.0 / p.radius}};
    case BenchCategory::kShiftingTowardsRight:
    case BenchCategory::kShiftingTowardsLeft: {
      // Two opposite arcs of equal radius: lateral 2R(1 - cos a), longitudinal 2R sin a.
      const double sign = p.category == BenchCategory::kShiftingTowardsRight ? 1.0 : -1.0;
      const double a = 2.0 * std::atan(p.lateral_offset / p.shift_length);
      const double r = p.shift_length / (2.0 * std::sin(a));
      const double arc = r * a;
      const double span =
          static_cast<double>(count_points(p.duration_s, p.fps) - 1) / p.fps;
      const double lead = distance_at(p, 0.5 * span) - arc;
      if (lead < 0.0 || lead + 2.0 * arc > distance_at(p, span)) {
        bad(p, "lane change does not fit inside the window");
      }
      return {{lead, 0.0}, {arc, sign / r}, {arc, -sign / r}, {kInf, 0.0}};
    }
    default: return {{kInf, 0.0}};
  }
}

std::vector<double> checked_schedule(std::span<const double> schedule) {
  if (schedule.empty()) throw Error(ErrorCode::kParameter, "empty look-ahead schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!std::isfinite(schedule[i]) || schedule[i] < 0.0 ||
        (i > 0 && !(schedule[i] > schedule[i - 1]))) {
      throw Error(ErrorCode::kParameter, "schedule must be finite, >= 0 and increasing");
    }
  }
  return {schedule.begin(), schedule.end()};
}

template <typename PoseAt>
std::vector<Trajectory> re_express(PoseAt pose_at, const TrajectoryTemplate& tmpl,
                                   double horizon_s, const std::vector<double>& sched) {
  const double fps = tmpl.path.fps();
  const std::size_t frames = count_points(horizon_s, fps);
  if (frames == 0) throw Error(ErrorCode::kParameter, "horizon shorter than one frame");
  const double last_needed = static_cast<double>(frames - 1) / fps + sched.back();
  if (last_needed > tmpl.path.back().t + 1e-9) {
    throw Error(ErrorCode::kCoverage,
                fmt::format("template '{}' path ends at {} s, per-frame instructions need {} s",
                            tmpl.variant_id, tmpl.path.back().t, last_needed));
  }
  std::vector<Trajectory> out;
  out.reserve(frames);
  for (std::size_t k = 0; k < frames; ++k) {
    const double tk = static_cast<double>(k) / fps;
    Pose2D anchor = pose_at(tk);
    anchor.t = tk;
    std::vector<Pose2D> pts;
    pts.reserve(sched.size());
    for (double tl : sched) {
      Pose2D local = traj::pose_to_local(pose_at(tk + tl), anchor);
      local.t = tl;
      pts.push_back(local);
    }
    out.emplace_back(Frame::ego(anchor), std::move(pts), fps);
  }
  return out;
}

}  // namespace

Trajectory TrajectoryTemplate::instruction() const { return path.slice(0, window_points); }

std::vector<double> default_schedule() {
  return codec::tl_schedule(codec::ScheduleDataset::kCovla, 6);
}

TrajectoryTemplate generate_template(const TemplateParams& params,
                                     const labeler::RuleConfig& rules,
                                     std::span<const double> schedule) {
  check_params(params);
  const std::vector<double> sched =
      schedule.empty() ? default_schedule() : checked_schedule(schedule);
  const std::vector<Piece> pieces = geometry(params);
  const std::size_t window = count_points(params.duration_s, params.fps);
  const std::size_t total = count_points(params.duration_s + params.lookahead_s, params.fps);

  const auto exact = [&](double t) {
    Pose2D p = pose_along(pieces, distance_at(params, t));
    p.heading = traj::normalize_angle(p.heading);
    p.t = t;
    return p;
  };
  std::vector<Pose2D> points;
  points.reserve(total);
  for (std::size_t k = 0; k < total; ++k) points.push_back(exact(static_cast<double>(k) / params.fps));
  TrajectoryTemplate tmpl{params.category,
                          params.id,
                          0.0,
                          Trajectory(Frame::ego(), std::move(points), params.fps),
                          window,
                          sched,
                          {}};
  tmpl.nominal_speed_kmh = traj::initial_speed_kmh(tmpl.path);

  const labeler::ActionLabel label = labeler::label_trajectory(tmpl.instruction(), rules);
  if (labeler::to_benchmark_category(label) != params.category) {
    bad(params, fmt::format("instruction labels as '{}', not '{}'", labeler::to_string(label),
                            labeler::to_string(params.category)));
  }
  tmpl.per_frame = re_express(exact, tmpl, params.duration_s, sched);
  return tmpl;
}

std::vector<Trajectory> per_frame_instructions(const TrajectoryTemplate& tmpl, double horizon_s,
                                               std::span<const double> schedule) {
  const Trajectory& path = tmpl.path;
  return re_express([&path](double t) { return traj::pose_at(path, std::min(t, path.back().t)); },
                    tmpl, horizon_s, checked_schedule(schedule));
}

std::vector<TemplateParams> default_template_params() {
  using C = BenchCategory;
  std::vector<TemplateParams> out;
  const auto add = [&out](std::string id, C c, double kmh, double accel) -> TemplateParams& {
    TemplateParams p;
    p.id = std::move(id);
    p.category = c;
    p.speed_kmh = kmh;
    p.accel = accel;
    return out.emplace_back(std::move(p));
  };
  const double speeds[] = {15.0, 25.0, 35.0, 45.0};
  const double radii[] = {20.0, 40.0, 60.0, 100.0};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("curve_left_{}", i + 1), C::kCurvingToLeft, speeds[i], 0.0).radius = radii[i];
  }
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("curve_right_{}", i + 1), C::kCurvingToRight, speeds[i], 0.0).radius =
        radii[i];
  }
  const double shift_speeds[] = {20.0, 30.0, 40.0, 50.0};
  const double shift_lengths[] = {18.0, 25.0, 35.0, 45.0};
  for (C c : {C::kShiftingTowardsLeft, C::kShiftingTowardsRight}) {
    const char* side = c == C::kShiftingTowardsLeft ? "left" : "right";
    for (int i = 0; i < 4; ++i) {
      auto& p = add(fmt::format("shift_{}_{}", side, i + 1), c, shift_speeds[i], 0.0);
      p.lateral_offset = 3.5;
      p.shift_length = shift_lengths[i];
    }
  }
  const double start_accel[] = {1.0, 1.5, 2.0, 2.5};
  const double start_dwell[] = {1.0, 1.0, 1.5, 2.0};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("start_{}", i + 1), C::kStarting, 0.0, start_accel[i]).dwell_s =
        start_dwell[i];
  }
  const double stop_speeds[] = {15.0, 20.0, 30.0, 40.0};
  const double stop_decel[] = {-1.6, -2.0, -3.0, -4.0};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("stop_{}", i + 1), C::kStopping, stop_speeds[i], stop_decel[i]);
  }
  const double acc_speeds[] = {10.0, 15.0, 20.0, 25.0};
  const double acc_rates[] = {1.5, 1.2, 0.8, 0.4};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("accelerate_{}", i + 1), C::kAccelerating, acc_speeds[i], acc_rates[i]);
  }
  const double const_speeds[] = {20.0, 30.0, 40.0, 60.0};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("straight_{}", i + 1), C::kStraightConstantSpeed, const_speeds[i], 0.0);
  }
  const double dec_speeds[] = {20.0, 30.0, 40.0, 50.0};
  const double dec_rates[] = {-0.8, -1.0, -1.2, -1.5};
  for (int i = 0; i < 4; ++i) {
    add(fmt::format("decelerate_{}", i + 1), C::kDecelerating, dec_speeds[i], dec_rates[i]);
  }
  return out;
}

std::vector<TemplateParams> parse_template_params(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kSchema, std::string("templates: ") + e.what());
  }
  std::vector<TemplateParams> out;
  std::set<std::string> seen;
  for (const auto& [id, section] : tree) {
    if (section.empty()) throw Error(ErrorCode::kSchema, "templates: key '" + id + "' outside a section");
    if (!seen.insert(id).second) throw Error(ErrorCode::kSchema, "templates: duplicate '" + id + "'");
    TemplateParams p;
    p.id = id;
    bool has_category = false;
    for (const auto& [key, node] : section) {
      const std::string value = node.get_value<std::string>();
      if (key == "category") {
        const auto c = labeler::bench_category_from_string(value);
        if (!c) throw Error(ErrorCode::kSchema, "templates: [" + id + "] unknown category '" + value + "'");
        p.category = *c;
        has_category = true;
        continue;
      }
      double* field = key == "speed_kmh"        ? &p.speed_kmh
                      : key == "accel"          ? &p.accel
                      : key == "radius"         ? &p.radius
                      : key == "lateral_offset" ? &p.lateral_offset
                      : key == "shift_length"   ? &p.shift_length
                      : key == "dwell_s"        ? &p.dwell_s
                      : key == "duration_s"     ? &p.duration_s
                      : key == "lookahead_s"    ? &p.lookahead_s
                      : key == "fps"            ? &p.fps
                                                : nullptr;
      if (field == nullptr) throw Error(ErrorCode::kSchema, "templates: [" + id + "] unknown key '" + key + "'");
      std::size_t used = 0;
      try {
        *field = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) {
        throw Error(ErrorCode::kSchema, "templates: [" + id + "] " + key + " is not a number");
      }
    }
    if (!has_category) throw Error(ErrorCode::kSchema, "templates: [" + id + "] missing category");
    out.push_back(std::move(p));
  }
  if (out.empty()) throw Error(ErrorCode::kSchema, "templates: no templates defined");
  return out;
}

std::vector<TemplateParams> load_template_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return parse_template_params(in);
}

std::string write_template_params(std::span<const TemplateParams> params) {
  const TemplateParams defaults;
  std::ostringstream out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const TemplateParams& p = params[i];
    if (i > 0) out << '\n';
    out << '[' << p.id << "]\n";
    out << "category = " << labeler::to_string(p.category) << '\n';
    const std::pair<const char*, double> fields[] = {
        {"speed_kmh", p.speed_kmh},       {"accel", p.accel},
        {"radius", p.radius},             {"lateral_offset", p.lateral_offset},
        {"shift_length", p.shift_length}, {"dwell_s", p.dwell_s}};
    for (const auto& [key, v] : fields) {
      if (v != 0.0 || std::string_view(key) == "speed_kmh") out << fmt::format("{} = {}\n", key, v);
    }
    if (p.duration_s != defaults.duration_s) out << fmt::format("duration_s = {}\n", p.duration_s);
    if (p.lookahead_s != defaults.lookahead_s) out << fmt::format("lookahead_s = {}\n", p.lookahead_s);
    if (p.fps != defaults.fps) out << fmt::format("fps = {}\n", p.fps);
  }
  return out.str();
}

}  // namespace actbench::bench
