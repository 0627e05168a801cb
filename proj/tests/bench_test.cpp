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


#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "actbench/bench/benchmark.hpp"
#include "actbench/bench/synthetic.hpp"
#include "actbench/bench/templates.hpp"
#include "actbench/labeler/labeler.hpp"
#include "actbench/traj_core/features.hpp"
#include "support/oracles.hpp"

namespace actbench::bench {
namespace {

using traj::Frame;
using traj::Pose2D;
using traj::Trajectory;

Trajectory global_line(std::size_t n, double step, double heading = 0.3) {
  std::vector<Pose2D> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = step * static_cast<double>(k);
    pts.push_back({10 + s * std::sin(heading), -5 + s * std::cos(heading), heading, 0.1 * k});
  }
  return Trajectory(Frame::global(), pts, 10.0);
}

TemplateParams straight(const std::string& id, double kmh) {
  TemplateParams p;
  p.id = id;
  p.category = BenchCategory::kStraightConstantSpeed;
  p.speed_kmh = kmh;
  return p;
}

TEST(Windows, Examples) {
  EXPECT_EQ(slice_windows(global_line(50, 1.0), 44, 1).size(), 7u);
  EXPECT_TRUE(slice_windows(global_line(43, 1.0), 44, 1).empty());
  EXPECT_ERROR_CODE(slice_windows(global_line(50, 1.0), 1, 1), ErrorCode::kParameter);
  EXPECT_ERROR_CODE(slice_windows(global_line(50, 1.0), 44, 0), ErrorCode::kParameter);
  EXPECT_ERROR_CODE(slice_windows(testing::straight_line(50, 1.0), 44, 1), ErrorCode::kFrame);
}

TEST(Windows, AreReanchoredAndRebased) {
  const auto windows = slice_windows(global_line(60, 0.7), 20, 7);
  for (const auto& w : windows) {
    EXPECT_EQ(w.frame().kind, traj::FrameKind::kEgo);
    EXPECT_NEAR(w.front().x, 0.0, 1e-12);
    EXPECT_NEAR(w.front().y, 0.0, 1e-12);
    EXPECT_NEAR(w.front().heading, 0.0, 1e-12);
    EXPECT_EQ(w.front().t, 0.0);
    EXPECT_NEAR(w.back().x, 0.0, 1e-9);
    EXPECT_NEAR(w.back().y, 0.7 * 19, 1e-9);
  }
}

TEST(Windows, CountMatchesEnumeration) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  std::uniform_int_distribution<std::size_t> win(2, 80);
  std::uniform_int_distribution<std::size_t> stride(1, 20);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = len(rng);
    const std::size_t w = win(rng);
    const std::size_t s = stride(rng);
    EXPECT_EQ(slice_windows(global_line(n, 1.0), w, s).size(), testing::brute_force_windows(n, w, s))
        << n << " " << w << " " << s;
  }
}

TEST(Contexts, IdsAndRanges) {
  const std::vector<traj::TrajectoryRecord> scenes = {{"s1", global_line(50, 1.0)},
                                                      {"s2", global_line(30, 1.0)}};
  const auto ctx = extract_contexts(scenes, {44, 3, 10});
  ASSERT_EQ(ctx.size(), 3u);
  EXPECT_EQ(ctx[1].sample_id, "s1@000003");
  EXPECT_EQ(ctx[1].first_frame, 3u);
  EXPECT_EQ(ctx[1].last_frame, 12u);
  EXPECT_EQ(ctx[1].length(), 10u);
  EXPECT_ERROR_CODE(extract_contexts(scenes, {44, 1, 45}), ErrorCode::kParameter);
}

TEST(Templates, StraightFortyIsHighSpeed) {
  const auto t = generate_template(straight("s40", 40.0));
  EXPECT_EQ(t.window_points, 44u);
  EXPECT_EQ(labeler::label_trajectory(t.instruction(), {}), labeler::ActionLabel::kStraightConstHs);
  EXPECT_NEAR(t.nominal_speed_kmh, 40.0, 1e-9);
}

TEST(Templates, CurvingRightCenter) {
  TemplateParams p;
  p.id = "c";
  p.category = BenchCategory::kCurvingToRight;
  p.speed_kmh = 25.0;
  p.radius = 25.0;
  const auto t = generate_template(p);
  const auto f = traj::compute_features(t.instruction());
  EXPECT_NEAR(*f.circle_center_x_fh, 25.0, 1e-6);
  EXPECT_NEAR(*f.circle_center_x_lh, 25.0, 1e-6);
  for (const auto& pt : t.path.points()) {
    EXPECT_NEAR(std::hypot(pt.x - 25.0, pt.y), 25.0, 1e-9);
  }
}

TEST(Templates, DefaultLibrary) {
  const auto params = default_template_params();
  ASSERT_EQ(params.size(), 36u);
  std::array<int, 9> per{};
  for (const auto& p : params) {
    per[static_cast<std::size_t>(p.category)] += 1;
    const auto t = generate_template(p);
    const auto label = labeler::label_trajectory(t.instruction(), {});
    EXPECT_EQ(labeler::to_benchmark_category(label), p.category) << p.id;
    EXPECT_EQ(t.per_frame.size(), 44u);
  }
  for (int n : per) EXPECT_EQ(n, 4);
}

TEST(Templates, InconsistentParams) {
  TemplateParams curve;
  curve.id = "c";
  curve.category = BenchCategory::kCurvingToLeft;
  curve.speed_kmh = 30;
  EXPECT_ERROR_CODE(generate_template(curve), ErrorCode::kParameter);
  curve.radius = 5000;  // too gentle to label as a curve
  EXPECT_ERROR_CODE(generate_template(curve), ErrorCode::kParameter);

  TemplateParams stop = straight("s", 30);
  stop.category = BenchCategory::kStopping;
  EXPECT_ERROR_CODE(generate_template(stop), ErrorCode::kParameter);
  stop.accel = -0.5;  // would not stop inside 4.3 s
  EXPECT_ERROR_CODE(generate_template(stop), ErrorCode::kParameter);

  TemplateParams shift = straight("sh", 20);
  shift.category = BenchCategory::kShiftingTowardsRight;
  shift.lateral_offset = 3.5;
  shift.shift_length = 60;  // longer than the window covers
  EXPECT_ERROR_CODE(generate_template(shift), ErrorCode::kParameter);
}

TEST(PerFrame, StraightIsTranslationInvariant) {
  const auto t = generate_template(straight("s", 36.0));
  const auto sched = default_schedule();
  for (const auto& inst : t.per_frame) {
    ASSERT_EQ(inst.size(), sched.size());
    for (std::size_t l = 0; l < sched.size(); ++l) {
      EXPECT_NEAR(inst[l].x, 0.0, 1e-9);
      EXPECT_NEAR(inst[l].y, 10.0 * sched[l], 1e-9);
      EXPECT_EQ(inst[l].t, sched[l]);
    }
  }
}

TEST(PerFrame, FrameZeroSamplesTemplate) {
  for (const auto& p : default_template_params()) {
    const auto t = generate_template(p);
    const auto sched = default_schedule();
    const auto direct = per_frame_instructions(t, 0.1, sched);
    const auto interp = traj::resample_by_time(t.path, sched);
    ASSERT_EQ(direct.size(), 1u);
    for (std::size_t l = 0; l < sched.size(); ++l) {
      EXPECT_NEAR(direct[0][l].x, interp[l].x, 1e-12) << p.id;
      EXPECT_NEAR(direct[0][l].y, interp[l].y, 1e-12) << p.id;
      EXPECT_NEAR(t.per_frame[0][l].x, interp[l].x, 1e-2) << p.id;
      EXPECT_NEAR(t.per_frame[0][l].y, interp[l].y, 1e-2) << p.id;
    }
  }
}

TEST(PerFrame, ArcIsInvariantUnderItsOwnMotion) {
  TemplateParams p;
  p.id = "c";
  p.category = BenchCategory::kCurvingToLeft;
  p.speed_kmh = 30;
  p.radius = 40;
  const auto t = generate_template(p);
  // Chord offsets on a circle, computed directly from arc geometry.
  const double v = 30 / 3.6;
  for (const auto& inst : t.per_frame) {
    for (std::size_t l = 0; l < inst.size(); ++l) {
      const double a = v * inst[l].t / 40.0;
      EXPECT_NEAR(inst[l].x, -40.0 * (1 - std::cos(a)), 1e-9);
      EXPECT_NEAR(inst[l].y, 40.0 * std::sin(a), 1e-9);
    }
  }
}

TEST(PerFrame, InterpolatedFromPathIsClose) {
  for (const auto& p : default_template_params()) {
    const auto t = generate_template(p);
    const auto approx = per_frame_instructions(t, 4.4, default_schedule());
    ASSERT_EQ(approx.size(), t.per_frame.size());
    for (std::size_t k = 0; k < approx.size(); ++k) {
      for (std::size_t l = 0; l < approx[k].size(); ++l) {
        EXPECT_NEAR(approx[k][l].x, t.per_frame[k][l].x, 1e-2) << p.id;
        EXPECT_NEAR(approx[k][l].y, t.per_frame[k][l].y, 1e-2) << p.id;
      }
    }
  }
}

TEST(PerFrame, CoverageError) {
  const auto t = generate_template(straight("s", 36.0));
  EXPECT_ERROR_CODE(per_frame_instructions(t, 5.0, default_schedule()), ErrorCode::kCoverage);
  EXPECT_NO_THROW(per_frame_instructions(t, 4.4, default_schedule()));
}

TEST(SpeedFilter, Threshold) {
  EXPECT_FALSE(speed_filter(30.0, 45.0, 10.0));
  EXPECT_TRUE(speed_filter(30.0, 35.0, 10.0));
  EXPECT_TRUE(speed_filter(30.0, 30.0, 10.0));
  EXPECT_TRUE(speed_filter(30.0, 40.0, 10.0));
  EXPECT_TRUE(speed_filter(40.0, 30.0, 10.0));
  EXPECT_FALSE(speed_filter(30.0, std::nextafter(40.0, 41.0), 10.0));
  EXPECT_FALSE(speed_filter(30.0, 40.0 + 1e-9, 10.0));
}

ContextSegment context(const std::string& scene, std::size_t frame, double kmh) {
  const Trajectory t = testing::straight_line(10, kmh / 36.0);
  return {context_sample_id(scene, frame), scene, frame, frame + 9, t};
}

TEST(Assemble, FilterAndExclusions) {
  const std::vector<TrajectoryTemplate> templates = {generate_template(straight("a", 32)),
                                                     generate_template(straight("b", 55))};
  const std::vector<ContextSegment> ctx = {context("s", 0, 30)};
  const auto r = assemble_benchmark(ctx, templates, {});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].sample_id, "s@000000/a");
  EXPECT_EQ(r.counts[static_cast<std::size_t>(BenchCategory::kStraightConstantSpeed)], 1u);
  EXPECT_TRUE(assemble_benchmark(ctx, templates, {"s@000000/a"}).pairs.empty());
  EXPECT_TRUE(assemble_benchmark(ctx, templates, {"s@000000"}).pairs.empty());
}

TEST(Assemble, OrderAndIntegrity) {
  const std::vector<TrajectoryTemplate> templates = {generate_template(straight("z", 30)),
                                                     generate_template(straight("m", 30))};
  const std::vector<ContextSegment> ctx = {context("s2", 0, 30), context("s1", 12, 30),
                                           context("s1", 3, 30)};
  const auto r = assemble_benchmark(ctx, templates, {});
  std::vector<std::string> ids;
  for (const auto& p : r.pairs) ids.push_back(p.sample_id);
  EXPECT_EQ(ids, (std::vector<std::string>{"s1@000003/m", "s1@000003/z", "s1@000012/m",
                                           "s1@000012/z", "s2@000000/m", "s2@000000/z"}));
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));

  const std::vector<ContextSegment> dup = {context("s", 0, 30), context("s", 0, 30)};
  EXPECT_ERROR_CODE(assemble_benchmark(dup, templates, {}), ErrorCode::kIntegrity);
  const std::vector<TrajectoryTemplate> dup_t = {templates[0], templates[0]};
  EXPECT_ERROR_CODE(assemble_benchmark(ctx, dup_t, {}), ErrorCode::kIntegrity);
}

TEST(Manifest, RoundTrip) {
  std::vector<TrajectoryTemplate> templates;
  for (const auto& p : default_template_params()) templates.push_back(generate_template(p));
  const auto scenes = synthetic_scenes({2, 80, 10.0, 60.0, 5});
  const auto ctx = extract_contexts(scenes, {44, 5, 10});
  const auto r = assemble_benchmark(ctx, templates, {});
  ASSERT_FALSE(r.pairs.empty());
  std::stringstream ss;
  write_manifest(ss, r.pairs);
  const auto back = read_manifest(ss);
  ASSERT_EQ(back.size(), r.pairs.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].sample_id, r.pairs[i].sample_id);
    EXPECT_EQ(back[i].instruction, r.pairs[i].instruction);
    EXPECT_EQ(back[i].context.trajectory, r.pairs[i].context.trajectory);
    EXPECT_EQ(back[i].instructed_category, r.pairs[i].instructed_category);
  }

  std::stringstream table;
  write_template_table(table, templates);
  const auto tb = read_template_table(table);
  ASSERT_EQ(tb.size(), templates.size());
  for (std::size_t i = 0; i < tb.size(); ++i) {
    EXPECT_EQ(tb[i].path, templates[i].path);
    EXPECT_EQ(tb[i].per_frame, templates[i].per_frame);
  }
}

TEST(Manifest, DuplicateIds) {
  const std::vector<TrajectoryTemplate> templates = {generate_template(straight("a", 30))};
  const std::vector<ContextSegment> ctx = {context("s", 0, 30)};
  const auto r = assemble_benchmark(ctx, templates, {});
  std::stringstream ss;
  write_manifest(ss, r.pairs);
  write_manifest(ss, r.pairs);
  EXPECT_ERROR_CODE(read_manifest(ss), ErrorCode::kIntegrity);
}

TEST(Counts, Csv) {
  CategoryCounts c{};
  c[0] = 3;
  c[8] = 2;
  const std::string csv = counts_csv(c);
  EXPECT_EQ(csv.rfind("category,pairs\ncurving to left,3\n", 0), 0u);
  EXPECT_NE(csv.find("decelerating,2\nTotal,5\n"), std::string::npos);
}

TEST(Exclusions, Parse) {
  std::istringstream in("# comment\n\n  a/b  \nc\n");
  EXPECT_EQ(read_exclusions(in), (std::set<std::string>{"a/b", "c"}));
}

TEST(TemplateFile, ShippedFileEqualsDefaults) {
  EXPECT_EQ(load_template_params(ACTBENCH_SOURCE_DIR "/config/templates.ini"),
            default_template_params());
  std::istringstream in(write_template_params(default_template_params()));
  EXPECT_EQ(parse_template_params(in), default_template_params());
}

TEST(TemplateFile, Errors) {
  std::istringstream unknown("[x]\ncategory = starting\nspeed = 3\n");
  EXPECT_ERROR_CODE(parse_template_params(unknown), ErrorCode::kSchema);
  std::istringstream missing("[x]\nspeed_kmh = 3\n");
  EXPECT_ERROR_CODE(parse_template_params(missing), ErrorCode::kSchema);
  std::istringstream bad_cat("[x]\ncategory = flying\n");
  EXPECT_ERROR_CODE(parse_template_params(bad_cat), ErrorCode::kSchema);
}

TEST(Synthetic, Deterministic) {
  const auto a = synthetic_scenes({3, 120, 10.0, 60.0, 42});
  const auto b = synthetic_scenes({3, 120, 10.0, 60.0, 42});
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].trajectory, b[i].trajectory);
  EXPECT_NE(synthetic_scenes({1, 120, 10.0, 60.0, 43})[0].trajectory, a[0].trajectory);
}

}  // namespace
}  // namespace actbench::bench
