// Copyright 2026 The fidshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "fidshare/utility_baseline.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"

namespace fidshare {

absl::StatusOr<std::vector<PredictedPoint>> PredictConstantVelocity(
    std::span<const SharedSample> shared, double horizon_s) {
  if (shared.size() < 2) {
    return absl::InvalidArgumentError("need at least 2 shared samples");
  }
  std::vector<PredictedPoint> out;
  out.reserve(shared.size() - 1);
  for (size_t k = 1; k < shared.size(); ++k) {
    const double dt = shared[k].t - shared[k - 1].t;
    if (!(dt > 0.0)) {
      return absl::InvalidArgumentError("shared samples not time-ordered");
    }
    const Vec2 v = (shared[k].xy - shared[k - 1].xy) * (1.0 / dt);
    out.push_back({shared[k].t + horizon_s, shared[k].xy + v * horizon_s});
  }
  return out;
}

double AngleBetweenDeg(const Vec2& a, const Vec2& b) {
  return std::abs(std::atan2(Cross(a, b), Dot(a, b))) * 180.0 /
         std::numbers::pi;
}

UtilityErrors ComputeUtilityErrors(std::span<const PredictedPoint> predictions,
                                   const Trajectory& truth,
                                   const UtilityOptions& options) {
  UtilityErrors u;
  double pos_sum = 0.0, vel_sum = 0.0, head_sum = 0.0;
  const double t_end = truth.points.empty() ? 0.0 : truth.points.back().t;
  const double t_begin = truth.StartTime();
  const PredictedPoint* prev = nullptr;
  for (const PredictedPoint& p : predictions) {
    if (p.t > t_end || p.t < t_begin) {
      prev = nullptr;
      continue;
    }
    const Vec2 true_xy = truth.PositionAt(p.t);
    pos_sum += Distance(p.xy, true_xy);
    ++u.n_position;
    if (prev != nullptr && p.t > prev->t) {
      const double dt = p.t - prev->t;
      const Vec2 v_pred = (p.xy - prev->xy) * (1.0 / dt);
      const Vec2 v_true = (true_xy - truth.PositionAt(prev->t)) * (1.0 / dt);
      vel_sum += std::abs(Norm(v_pred) - Norm(v_true));
      ++u.n_velocity;
      if (Norm(v_true) >= options.min_heading_speed_mps) {
        head_sum += AngleBetweenDeg(v_pred, v_true);
        ++u.n_heading;
      }
    }
    prev = &p;
  }
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  u.pos_err_1s = u.n_position > 0 ? pos_sum / u.n_position : kNan;
  u.vel_err = u.n_velocity > 0 ? vel_sum / u.n_velocity : kNan;
  u.heading_err = u.n_heading > 0 ? head_sum / u.n_heading : kNan;
  return u;
}

}  // namespace fidshare
