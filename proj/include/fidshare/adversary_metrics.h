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

#ifndef FIDSHARE_ADVERSARY_METRICS_H_
#define FIDSHARE_ADVERSARY_METRICS_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/geometry.h"

namespace fidshare {

// Centered moving average over `window_points` samples (odd). Near either end
// the window shrinks symmetrically to the samples available on both sides.
absl::StatusOr<std::vector<Vec2>> ReconstructSmooth(std::span<const Vec2> shared,
                                                    int window_points);

// Point-wise Euclidean error. Inputs must be aligned and of equal length.
absl::StatusOr<std::vector<double>> ReconstructionError(
    std::span<const Vec2> reconstructed, std::span<const Vec2> truth);

// Maximal run of consecutive instants with error <= epsilon.
struct LeakageSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  int n_points = 0;

  double Duration() const { return t_end - t_start; }
  friend bool operator==(const LeakageSegment&, const LeakageSegment&) = default;
};

struct LeakageReport {
  double plr = 0.0;
  std::vector<LeakageSegment> segments;
  double avg_leak_s = 0.0;
  double max_leak_s = 0.0;
};

// `errors` and `timestamps` are parallel. A single leaked point is a 0 s
// segment. avg/max are 0 without segments.
LeakageReport BuildLeakageReport(std::span<const double> errors,
                                 std::span<const double> timestamps,
                                 double epsilon);

}  // namespace fidshare

#endif  // FIDSHARE_ADVERSARY_METRICS_H_
