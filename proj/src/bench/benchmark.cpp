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


#include "actbench/bench/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "actbench/error.hpp"

namespace actbench::bench {
namespace {

using nlohmann::json;
using traj::Frame;
using traj::Pose2D;
using traj::Trajectory;

Trajectory rebase_time(const Trajectory& traj) {
  const double t0 = traj.front().t;
  std::vector<Pose2D> pts(traj.points().begin(), traj.points().end());
  for (auto& p : pts) p.t -= t0;
  return Trajectory(traj.frame(), std::move(pts), traj.fps());
}

json per_frame_to_json(const std::vector<Trajectory>& per_frame) {
  json out = json::array();
  for (const auto& tr : per_frame) {
    json rows = json::array();
    for (const auto& p : tr.points()) rows.push_back({p.x, p.y, p.t, p.heading});
    out.push_back({{"anchor", {tr.frame().anchor.x, tr.frame().anchor.y, tr.frame().anchor.t,
                               tr.frame().anchor.heading}},
                   {"rows", std::move(rows)}});
  }
  return out;
}

Pose2D row_to_pose(const json& row) {
  const auto v = row.get<std::vector<double>>();
  if (v.size() != 4) throw Error(ErrorCode::kSchema, "per-frame rows have four values");
  return {v[0], v[1], v[3], v[2]};
}

std::vector<Trajectory> per_frame_from_json(const json& j, double fps) {
  std::vector<Trajectory> out;
  for (const auto& item : j) {
    std::vector<Pose2D> pts;
    for (const auto& row : item.at("rows")) pts.push_back(row_to_pose(row));
    out.emplace_back(Frame::ego(row_to_pose(item.at("anchor"))), std::move(pts), fps);
  }
  return out;
}

}  // namespace

std::vector<Trajectory> slice_windows(const Trajectory& scene, std::size_t window,
                                      std::size_t stride) {
  if (window < 2) throw Error(ErrorCode::kParameter, "window must be >= 2");
  if (stride < 1) throw Error(ErrorCode::kParameter, "stride must be >= 1");
  if (scene.frame().kind != traj::FrameKind::kGlobal) {
    throw Error(ErrorCode::kFrame, "scenes must be in the global frame");
  }
  std::vector<Trajectory> out;
  if (scene.size() < window) return out;
  out.reserve((scene.size() - window) / stride + 1);
  for (std::size_t first = 0; first + window <= scene.size(); first += stride) {
    const Trajectory w = scene.slice(first, window);
    out.push_back(rebase_time(traj::to_local_frame(w, w.front())));
  }
  return out;
}

std::string context_sample_id(const std::string& scene_id, std::size_t first_frame) {
  return fmt::format("{}@{:06d}", scene_id, first_frame);
}

std::vector<ContextSegment> extract_contexts(std::span<const traj::TrajectoryRecord> scenes,
                                             const ContextOptions& opts) {
  if (opts.context_len < 2 || opts.context_len > opts.window) {
    throw Error(ErrorCode::kParameter, "context_len must be in [2, window]");
  }
  std::vector<ContextSegment> out;
  for (const auto& scene : scenes) {
    const auto windows = slice_windows(scene.trajectory, opts.window, opts.stride);
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const std::size_t first = i * opts.stride;
      out.push_back({context_sample_id(scene.id, first), scene.id, first,
                     first + opts.context_len - 1, windows[i].slice(0, opts.context_len)});
    }
  }
  return out;
}

bool speed_filter(double context_kmh, double template_kmh, double threshold_kmh) {
  return std::abs(context_kmh - template_kmh) <= threshold_kmh;
}

bool speed_filter(const ContextSegment& context, const TrajectoryTemplate& tmpl,
                  double threshold_kmh) {
  return speed_filter(traj::initial_speed_kmh(context.trajectory), tmpl.nominal_speed_kmh,
                      threshold_kmh);
}

BenchmarkResult assemble_benchmark(std::span<const ContextSegment> contexts,
                                   std::span<const TrajectoryTemplate> templates,
                                   const std::set<std::string>& exclusions,
                                   const AssemblyOptions& opts) {
  if (!(opts.speed_threshold_kmh >= 0.0)) {
    throw Error(ErrorCode::kParameter, "speed threshold must be >= 0");
  }
  std::set<std::string> ids;
  for (const auto& c : contexts) {
    if (!ids.insert(c.sample_id).second) {
      throw Error(ErrorCode::kIntegrity, "duplicate context id '" + c.sample_id + "'");
    }
  }
  std::vector<const TrajectoryTemplate*> sorted;
  ids.clear();
  for (const auto& t : templates) {
    if (!ids.insert(t.variant_id).second) {
      throw Error(ErrorCode::kIntegrity, "duplicate template id '" + t.variant_id + "'");
    }
    sorted.push_back(&t);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->variant_id < b->variant_id; });
  std::vector<const ContextSegment*> ordered;
  for (const auto& c : contexts) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return std::tie(a->scene_id, a->first_frame) < std::tie(b->scene_id, b->first_frame);
  });

  BenchmarkResult result;
  for (const ContextSegment* c : ordered) {
    if (exclusions.contains(c->sample_id)) continue;
    const double context_kmh = traj::initial_speed_kmh(c->trajectory);
    for (const TrajectoryTemplate* t : sorted) {
      std::string id = c->sample_id + "/" + t->variant_id;
      if (exclusions.contains(id)) continue;
      if (!speed_filter(context_kmh, t->nominal_speed_kmh, opts.speed_threshold_kmh)) continue;
      result.counts[static_cast<std::size_t>(t->category)] += 1;
      result.pairs.push_back({std::move(id), *c, t->variant_id, t->category, context_kmh,
                              t->nominal_speed_kmh, t->instruction()});
    }
  }
  return result;
}

std::set<std::string> read_exclusions(std::istream& in) {
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.insert(line.substr(b, e - b + 1));
  }
  return out;
}

json pair_to_json(const BenchmarkPair& pair) {
  return {{"sample_id", pair.sample_id},
          {"scene_id", pair.context.scene_id},
          {"frame_range", {pair.context.first_frame, pair.context.last_frame}},
          {"context_id", pair.context.sample_id},
          {"context", traj::trajectory_to_json(pair.context.trajectory)},
          {"template_id", pair.template_id},
          {"instructed_category", labeler::to_string(pair.instructed_category)},
          {"context_speed_kmh", pair.context_speed_kmh},
          {"template_speed_kmh", pair.template_speed_kmh},
          {"instruction", traj::trajectory_to_json(pair.instruction)}};
}

BenchmarkPair pair_from_json(const json& j) {
  try {
    const auto category_name = j.at("instructed_category").get<std::string>();
    const auto category = labeler::bench_category_from_string(category_name);
    if (!category) throw Error(ErrorCode::kSchema, "unknown category '" + category_name + "'");
    const auto range = j.at("frame_range").get<std::array<std::size_t, 2>>();
    ContextSegment context{j.at("context_id").get<std::string>(),
                           j.at("scene_id").get<std::string>(), range[0], range[1],
                           traj::trajectory_from_json(j.at("context"))};
    return {j.at("sample_id").get<std::string>(),
            std::move(context),
            j.at("template_id").get<std::string>(),
            *category,
            j.at("context_speed_kmh").get<double>(),
            j.at("template_speed_kmh").get<double>(),
            traj::trajectory_from_json(j.at("instruction"))};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("manifest entry: ") + e.what());
  }
}

void write_manifest(std::ostream& out, std::span<const BenchmarkPair> pairs) {
  for (const auto& p : pairs) out << pair_to_json(p).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing manifest");
}

std::vector<BenchmarkPair> read_manifest(std::istream& in) {
  std::vector<BenchmarkPair> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(pair_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, fmt::format("manifest line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("manifest line {}: {}", line_no, e.what()));
    }
    if (!ids.insert(out.back().sample_id).second) {
      throw Error(ErrorCode::kIntegrity,
                  fmt::format("manifest line {}: duplicate sample id '{}'", line_no,
                              out.back().sample_id));
    }
  }
  return out;
}

std::vector<BenchmarkPair> read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_manifest(in);
}

json template_to_json(const TrajectoryTemplate& tmpl) {
  return {{"template_id", tmpl.variant_id},
          {"category", labeler::to_string(tmpl.category)},
          {"nominal_speed_kmh", tmpl.nominal_speed_kmh},
          {"window_points", tmpl.window_points},
          {"path", traj::trajectory_to_json(tmpl.path)},
          {"schedule", tmpl.schedule},
          {"per_frame", per_frame_to_json(tmpl.per_frame)}};
}

TrajectoryTemplate template_from_json(const json& j) {
  try {
    const auto name = j.at("category").get<std::string>();
    const auto category = labeler::bench_category_from_string(name);
    if (!category) throw Error(ErrorCode::kSchema, "unknown category '" + name + "'");
    Trajectory path = traj::trajectory_from_json(j.at("path"));
    const double fps = path.fps();
    TrajectoryTemplate t{*category,
                         j.at("template_id").get<std::string>(),
                         j.at("nominal_speed_kmh").get<double>(),
                         std::move(path),
                         j.at("window_points").get<std::size_t>(),
                         j.at("schedule").get<std::vector<double>>(),
                         per_frame_from_json(j.at("per_frame"), fps)};
    if (t.window_points < 2 || t.window_points > t.path.size()) {
      throw Error(ErrorCode::kSchema, "window_points outside the path");
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("template entry: ") + e.what());
  }
}

void write_template_table(std::ostream& out, std::span<const TrajectoryTemplate> templates) {
  for (const auto& t : templates) out << template_to_json(t).dump() << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing template table");
}

std::vector<TrajectoryTemplate> read_template_table(std::istream& in) {
  std::vector<TrajectoryTemplate> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(template_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, fmt::format("template line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("template line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

std::string counts_csv(const CategoryCounts& counts) {
  std::string out = "category,pairs\n";
  std::size_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += fmt::format("{},{}\n", labeler::to_string(labeler::kBenchCategories[i]), counts[i]);
    total += counts[i];
  }
  out += fmt::format("Total,{}\n", total);
  return out;
}

}  // namespace actbench::bench
