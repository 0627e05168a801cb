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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "actbench/error.hpp"
#include "actbench/traj_core/features.hpp"

namespace actbench::traj {
namespace {

// Perpendicular RMS spread below this fraction of the along-line spread
// counts as collinear.
constexpr double kCollinearRatio = 1e-9;

}  // namespace

std::optional<Circle> fit_circle(std::span<const Vec2> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 3) {
    throw Error(ErrorCode::kInsufficientPoints, "circle fit needs at least three points");
  }

  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    mx += p.x;
    my += p.y;
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    const double u = p.x - mx;
    const double v = p.y - my;
    sxx += u * u;
    syy += v * v;
    sxy += u * v;
  }
  // Eigenvalues of the 2x2 scatter matrix.
  const double half_trace = 0.5 * (sxx + syy);
  const double disc = std::sqrt(0.25 * (sxx - syy) * (sxx - syy) + sxy * sxy);
  const double lambda_max = half_trace + disc;
  const double lambda_min = std::max(0.0, half_trace - disc);
  if (!(lambda_max > 0.0) ||
      std::sqrt(lambda_min) <= kCollinearRatio * std::sqrt(lambda_max)) {
    return std::nullopt;
  }

  // Centered and scaled coordinates keep the design matrix well conditioned.
  const double scale = std::sqrt((sxx + syy) / static_cast<double>(n));
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (points[static_cast<std::size_t>(i)].x - mx) / scale;
    const double v = (points[static_cast<std::size_t>(i)].y - my) / scale;
    a(i, 0) = u;
    a(i, 1) = v;
    a(i, 2) = 1.0;
    b(i) = -(u * u + v * v);
  }
  // u^2 + v^2 + D u + E v + F = 0
  const Eigen::Vector3d coeffs = a.colPivHouseholderQr().solve(b);
  const double cu = -0.5 * coeffs(0);
  const double cv = -0.5 * coeffs(1);
  const double r2 = cu * cu + cv * cv - coeffs(2);
  if (!std::isfinite(r2) || r2 <= 0.0) {
    return std::nullopt;
  }

  Circle circle;
  circle.center_x = mx + cu * scale;
  circle.center_y = my + cv * scale;
  circle.radius = std::sqrt(r2) * scale;
  if (!std::isfinite(circle.radius) || circle.radius > kStraightRadiusCap) {
    return std::nullopt;
  }
  double sq = 0.0;
  for (const auto& p : points) {
    const double r = std::hypot(p.x - circle.center_x, p.y - circle.center_y) - circle.radius;
    sq += r * r;
  }
  circle.rmse = std::sqrt(sq / static_cast<double>(n));
  return circle;
}

}  // namespace actbench::traj
