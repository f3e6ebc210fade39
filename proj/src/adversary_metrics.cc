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

#include "fidshare/adversary_metrics.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fidshare {

absl::StatusOr<std::vector<Vec2>> ReconstructSmooth(std::span<const Vec2> shared,
                                                    int window_points) {
  if (shared.empty()) {
    return absl::InvalidArgumentError("nothing to reconstruct");
  }
  if (window_points < 1 || window_points % 2 == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("window must be odd and >= 1, got ", window_points));
  }
  const int n = static_cast<int>(shared.size());
  const int half = window_points / 2;
  std::vector<Vec2> out(n);
  for (int k = 0; k < n; ++k) {
    const int h = std::min({half, k, n - 1 - k});
    Vec2 sum;
    for (int i = k - h; i <= k + h; ++i) sum += shared[i];
    const double m = 2 * h + 1;
    out[k] = {sum.x / m, sum.y / m};
  }
  return out;
}

absl::StatusOr<std::vector<double>> ReconstructionError(
    std::span<const Vec2> reconstructed, std::span<const Vec2> truth) {
  if (reconstructed.size() != truth.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("length mismatch: ", reconstructed.size(), " vs ",
                     truth.size()));
  }
  std::vector<double> e(truth.size());
  for (size_t k = 0; k < truth.size(); ++k) {
    e[k] = Distance(reconstructed[k], truth[k]);
  }
  return e;
}

LeakageReport BuildLeakageReport(std::span<const double> errors,
                                 std::span<const double> timestamps,
                                 double epsilon) {
  LeakageReport report;
  const size_t n = std::min(errors.size(), timestamps.size());
  if (n == 0) return report;
  int leaked = 0;
  size_t k = 0;
  while (k < n) {
    if (!(errors[k] <= epsilon)) {
      ++k;
      continue;
    }
    size_t end = k;
    while (end + 1 < n && errors[end + 1] <= epsilon) ++end;
    const int count = static_cast<int>(end - k + 1);
    report.segments.push_back({timestamps[k], timestamps[end], count});
    leaked += count;
    k = end + 1;
  }
  report.plr = static_cast<double>(leaked) / static_cast<double>(n);
  if (!report.segments.empty()) {
    double sum = 0.0;
    for (const LeakageSegment& s : report.segments) {
      sum += s.Duration();
      report.max_leak_s = std::max(report.max_leak_s, s.Duration());
    }
    report.avg_leak_s = sum / report.segments.size();
  }
  return report;
}

}  // namespace fidshare
