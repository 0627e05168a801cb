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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "actbench/traj_core/features.hpp"
#include "support/oracles.hpp"

namespace actbench::traj {
namespace {

using testing::straight_line;

std::vector<Vec2> circle_points(double cx, double cy, double r, std::size_t n, double arc) {
  std::vector<Vec2> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = arc * static_cast<double>(i) / static_cast<double>(n - 1);
    pts.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return pts;
}

TEST(CircleFit, FourPointsOnCircle) {
  const std::vector<Vec2> pts = {{10, 0}, {5, 5}, {0, 0}, {5, -5}};
  const auto c = fit_circle(pts);
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->center_x, 5.0, 1e-6);
  EXPECT_NEAR(c->center_y, 0.0, 1e-6);
  EXPECT_NEAR(c->radius, 5.0, 1e-6);
  EXPECT_NEAR(c->rmse, 0.0, 1e-6);
}

TEST(CircleFit, CollinearIsDegenerate) {
  const std::vector<Vec2> pts = {{0, 0}, {0, 1}, {0, 2}};
  EXPECT_FALSE(fit_circle(pts));
}

TEST(CircleFit, NeedsThreePoints) {
  const std::vector<Vec2> pts = {{0, 0}, {0, 1}};
  EXPECT_ERROR_CODE(fit_circle(pts), ErrorCode::kInsufficientPoints);
}

TEST(CircleFit, RecoversExactCirclesAcrossScales) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(std::log(1.0) + u(rng) * std::log(1000.0));
    const double cx = (u(rng) - 0.5) * 100.0;
    const double cy = (u(rng) - 0.5) * 100.0;
    const auto pts = circle_points(cx, cy, r, 12, 0.5 + u(rng) * 5.0);
    const auto c = fit_circle(pts);
    ASSERT_TRUE(c) << "r=" << r;
    EXPECT_NEAR(c->center_x, cx, 1e-6 * std::max(1.0, r)) << "r=" << r;
    EXPECT_NEAR(c->center_y, cy, 1e-6 * std::max(1.0, r)) << "r=" << r;
    EXPECT_NEAR(c->radius, r, 1e-6 * std::max(1.0, r)) << "r=" << r;
  }
}

TEST(CircleFit, NoisyCircleAgreesWithGeometricOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int i = 0; i < 50; ++i) {
    auto pts = circle_points(3.0, -4.0, 20.0, 30, 2.0);
    for (auto& p : pts) {
      p.x += noise(rng);
      p.y += noise(rng);
    }
    const auto c = fit_circle(pts);
    ASSERT_TRUE(c);
    const auto ref = testing::gauss_newton_circle(pts);
    EXPECT_NEAR(c->center_x, 3.0, 0.1);
    EXPECT_NEAR(c->center_y, -4.0, 0.1);
    EXPECT_NEAR(c->center_x, ref.cx, 0.05);
    EXPECT_NEAR(c->center_y, ref.cy, 0.05);
    EXPECT_NEAR(c->radius, ref.r, 0.05);
  }
}

TEST(Features, AllZero) {
  const auto f = compute_features(straight_line(44, 0.0));
  EXPECT_EQ(f.length, 0.0);
  EXPECT_EQ(f.closest_interval, 0.0);
  EXPECT_EQ(f.furthest_interval, 0.0);
  EXPECT_FALSE(f.interval_1_over_4);
  EXPECT_FALSE(f.angle_last);
}

TEST(Features, StraightFixture) {
  const auto f = compute_features(straight_line(44, 0.8));
  EXPECT_NEAR(f.length, 34.4, 1e-9);
  EXPECT_EQ(f.lr_div, 0.0);
  EXPECT_NEAR(f.interval_delta, 0.0, 1e-12);
  ASSERT_TRUE(f.angle_last);
  EXPECT_EQ(*f.angle_last, 0.0);
  ASSERT_TRUE(f.acceleration);
  EXPECT_NEAR(*f.acceleration, 0.0, 1e-9);
  EXPECT_FALSE(f.circle_center_x_fh);
}

TEST(Features, RightwardArc) {
  const double r = 20.0;
  const auto traj = testing::sampled(44, [r](double t) {
    const double a = 8.0 * t / r;
    return std::pair{r * (1 - std::cos(a)), r * std::sin(a)};
  });
  const auto f = compute_features(traj);
  ASSERT_TRUE(f.circle_center_x_fh);
  ASSERT_TRUE(f.circle_center_x_lh);
  EXPECT_NEAR(*f.circle_center_x_fh, r, 1e-6);
  EXPECT_NEAR(*f.circle_center_x_lh, r, 1e-6);
  EXPECT_GT(f.lr_div, 0.0);
  EXPECT_NEAR(f.length, 2 * r * std::sin(8.0 * 4.3 / r / 86) * 43, 1e-9);
}

TEST(Features, ConstantAccelerationSlope) {
  const auto traj = testing::sampled(44, [](double t) { return std::pair{0.0, 5 * t + 0.6 * t * t}; });
  const auto f = compute_features(traj);
  ASSERT_TRUE(f.acceleration);
  EXPECT_NEAR(*f.acceleration, 1.2, 1e-9);
}

TEST(Features, InvariantUnderEgoReanchoring) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = u(rng);
    const double b = u(rng) * 0.05;
    const auto local = testing::sampled(44, [&](double t) {
      return std::pair{a * t * t + b * t * t * t, 8 * t};
    });
    // Place the ego trajectory somewhere in the world and bring it back.
    const Pose2D anchor{u(rng) * 500, u(rng) * 500, u(rng) * 3, 0};
    std::vector<Pose2D> world;
    for (const auto& p : local.points()) world.push_back(pose_to_global(p, anchor));
    const Trajectory g(Frame::global(), world, 10.0);
    const auto f0 = compute_features(local);
    const auto f1 = compute_features(to_local_frame(g, anchor));
    EXPECT_NEAR(f0.length, f1.length, 1e-9);
    EXPECT_NEAR(f0.lr_div, f1.lr_div, 1e-9);
    EXPECT_NEAR(*f0.angle_mid, *f1.angle_mid, 1e-6);
    EXPECT_NEAR(*f0.angle_last, *f1.angle_last, 1e-6);
    EXPECT_NEAR(*f0.acceleration, *f1.acceleration, 1e-6);
  }
}

TEST(Features, Errors) {
  EXPECT_ERROR_CODE(compute_features(straight_line(1, 1.0)), ErrorCode::kInsufficientPoints);
  const Trajectory g(Frame::global(), {{0, 0, 0, 0}, {0, 1, 0, 0.1}}, 10.0);
  EXPECT_ERROR_CODE(compute_features(g), ErrorCode::kFrame);
}

}  // namespace
}  // namespace actbench::traj
