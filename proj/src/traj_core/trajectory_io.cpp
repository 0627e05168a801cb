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

#include "actbench/traj_core/trajectory_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "actbench/error.hpp"

namespace actbench::traj {
namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kSchema, std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::kSchema, std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::string string_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kSchema, std::string("missing field '") + key + "'");
  }
  const json& v = j.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kSchema, std::string("field '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

json trajectory_to_json(const Trajectory& traj) {
  json points = json::array();
  for (const auto& p : traj.points()) {
    points.push_back({{"t", p.t}, {"x", p.x}, {"y", p.y}, {"heading", p.heading}});
  }
  json j = {{"frame", std::string(to_string(traj.frame().kind))},
            {"fps", traj.fps()},
            {"points", std::move(points)}};
  if (const Pose2D& a = traj.frame().anchor; traj.frame().kind == FrameKind::kEgo && a != Pose2D{}) {
    j["anchor"] = {{"t", a.t}, {"x", a.x}, {"y", a.y}, {"heading", a.heading}};
  }
  return j;
}

Trajectory trajectory_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "trajectory must be an object");
  const FrameKind kind = frame_kind_from_string(string_field(j, "frame"));
  const double fps = number_field(j, "fps");
  if (!j.contains("points") || !j.at("points").is_array()) {
    throw Error(ErrorCode::kSchema, "field 'points' must be an array");
  }
  std::vector<Pose2D> points;
  points.reserve(j.at("points").size());
  for (const json& pj : j.at("points")) {
    points.push_back({number_field(pj, "x"), number_field(pj, "y"), number_field(pj, "heading"),
                      number_field(pj, "t")});
  }
  Frame frame = kind == FrameKind::kGlobal ? Frame::global() : Frame::ego();
  if (j.contains("anchor")) {
    if (kind != FrameKind::kEgo) throw Error(ErrorCode::kSchema, "only ego trajectories have an anchor");
    const json& a = j.at("anchor");
    frame.anchor = {number_field(a, "x"), number_field(a, "y"), number_field(a, "heading"),
                    number_field(a, "t")};
  }
  return Trajectory(frame, std::move(points), fps);
}

json record_to_json(const TrajectoryRecord& record) {
  json j = {{"id", record.id}};
  j.update(trajectory_to_json(record.trajectory));
  return j;
}

TrajectoryRecord record_from_json(const json& j) {
  std::string id = string_field(j, "id");
  return {std::move(id), trajectory_from_json(j)};
}

std::vector<TrajectoryRecord> read_trajectory_jsonl(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchema, "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TrajectoryRecord> read_trajectory_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_trajectory_jsonl(in);
}

void write_trajectory_jsonl(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  for (const auto& r : records) out << record_to_json(r).dump() << '\n';
}

}  // namespace actbench::traj
