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

#ifndef FIDSHARE_UTILITY_BASELINE_H_
#define FIDSHARE_UTILITY_BASELINE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/geometry.h"
#include "fidshare/privacy_mechanism.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {

// Predicted position for time t (the target instant, not the input instant).
struct PredictedPoint {
  double t = 0.0;
  Vec2 xy;
};

// Constant-velocity extrapolation: for every sample after the first, the
// finite-difference velocity of the last two shared samples carried
// `horizon_s` ahead. Needs >= 2 samples.
absl::StatusOr<std::vector<PredictedPoint>> PredictConstantVelocity(
    std::span<const SharedSample> shared, double horizon_s = 1.0);

struct UtilityOptions {
  // Samples whose true speed is below this have no heading.
  double min_heading_speed_mps = 0.1;
};

struct UtilityErrors {
  double pos_err_1s = 0.0;   // meters
  double vel_err = 0.0;      // m/s
  double heading_err = 0.0;  // degrees, [0, 180]
  int n_position = 0;
  int n_velocity = 0;
  int n_heading = 0;
};

// Scores predictions against truth interpolated to the prediction instants.
// Predictions after the end of `truth` are skipped. Velocities are finite
// differences of consecutive predictions and of truth at the same instants.
// A metric with no eligible samples is NaN.
UtilityErrors ComputeUtilityErrors(std::span<const PredictedPoint> predictions,
                                   const Trajectory& truth,
                                   const UtilityOptions& options = {});

// Absolute angle between two vectors in degrees, [0, 180].
double AngleBetweenDeg(const Vec2& a, const Vec2& b);

}  // namespace fidshare

#endif  // FIDSHARE_UTILITY_BASELINE_H_
