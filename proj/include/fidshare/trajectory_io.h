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

#ifndef FIDSHARE_TRAJECTORY_IO_H_
#define FIDSHARE_TRAJECTORY_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/geometry.h"

namespace fidshare {

struct TrajPoint {
  double t = 0.0;  // seconds
  double x = 0.0;  // meters
  double y = 0.0;  // meters

  Vec2 xy() const { return {x, y}; }
  friend bool operator==(const TrajPoint&, const TrajPoint&) = default;
};

// Ground-truth path of one target. Points are strictly increasing in t.
struct Trajectory {
  std::string id;
  std::vector<TrajPoint> points;

  double StartTime() const { return points.empty() ? 0.0 : points.front().t; }
  double Duration() const {
    return points.size() < 2 ? 0.0 : points.back().t - points.front().t;
  }
  // Linear interpolation, clamped to the end points.
  Vec2 PositionAt(double t) const;
};

// Checks the structural invariants: >= 2 points, finite values, strictly
// increasing timestamps.
absl::Status ValidateTrajectory(const Trajectory& traj);

// Column layout of an ETH/UCY-style annotation file. Columns are 0-based.
// A zero delimiter means "any run of whitespace".
struct OpenTrajFormat {
  int frame_column = 0;
  int agent_column = 1;
  int x_column = 2;
  int y_column = 3;
  double frame_rate = 2.5;
  char delimiter = '\0';
  double min_duration_s = 10.0;
  double max_duration_s = 100.0;
};

struct IngestResult {
  std::vector<Trajectory> trajectories;
  int dropped_count = 0;
};

// One trajectory per agent id, in order of first appearance. Timestamps are
// frame / frame_rate. Trajectories outside [min_duration_s, max_duration_s]
// are dropped and counted. Blank lines and lines starting with '#' are
// skipped.
absl::StatusOr<IngestResult> ParseOpenTraj(std::string_view text,
                                           const OpenTrajFormat& format);

// Uniform-scale affine map taking the bounding box of all input points into
// `target`, centered along the axis with slack. Timestamps are untouched.
absl::StatusOr<std::vector<Trajectory>> NormalizeScene(
    const std::vector<Trajectory>& trajectories, const BoundingBox& target);

BoundingBox DataBounds(const std::vector<Trajectory>& trajectories);

struct SpeedRange {
  double min_mps = 0.5;
  double max_mps = 2.0;
};

// Random-waypoint walk inside `scene`, sampled at 10 Hz from t = 0 to
// duration_s inclusive. Each leg heads to a uniform waypoint at a speed drawn
// from `speed`. Pure function of its arguments.
Trajectory SynthTrajectory(uint64_t seed, double duration_s, SpeedRange speed,
                           const BoundingBox& scene);

// `count` synthetic trajectories with durations uniform in
// [min_duration_s, max_duration_s], ids "synth-0000", ...
std::vector<Trajectory> SynthCorpus(uint64_t seed, int count,
                                    double min_duration_s,
                                    double max_duration_s, SpeedRange speed,
                                    const BoundingBox& scene);

}  // namespace fidshare

#endif  // FIDSHARE_TRAJECTORY_IO_H_
