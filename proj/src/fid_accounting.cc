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

#include "fidshare/fid_accounting.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fidshare {

double Accumulate(std::span<const double> fisher_info) {
  double total = 0.0;
  for (double i : fisher_info) total += i;
  return total;
}

double Accumulate(std::span<const SensingUpdate> updates) {
  double total = 0.0;
  for (const SensingUpdate& u : updates) total += u.fisher_info;
  return total;
}

absl::StatusOr<double> AverageRate(std::span<const SensingUpdate> updates,
                                   double window_s) {
  if (!(window_s > 0.0)) {
    return absl::InvalidArgumentError("window must be positive");
  }
  return Accumulate(updates) / window_s;
}

double FidSeries::ValueAt(double t) const {
  if (values.empty() || !(t > boundaries.front()) || t > boundaries.back()) {
    return 0.0;
  }
  // First boundary >= t closes the interval containing t.
  auto it = std::lower_bound(boundaries.begin() + 1, boundaries.end(), t);
  return values[static_cast<size_t>(it - boundaries.begin()) - 1];
}

absl::StatusOr<FidSeries> FidPiecewise(std::span<const double> times,
                                       std::span<const double> fisher_info,
                                       double t0) {
  if (times.size() != fisher_info.size()) {
    return absl::InvalidArgumentError("times and fisher_info differ in length");
  }
  FidSeries series;
  series.boundaries.reserve(times.size() + 1);
  series.values.reserve(times.size());
  series.boundaries.push_back(t0);
  double prev = t0;
  for (size_t k = 0; k < times.size(); ++k) {
    if (!(times[k] > prev)) {
      return absl::InvalidArgumentError(absl::StrCat(
          k == 0 ? "window start does not precede the first update"
                 : "duplicate or decreasing timestamp",
          " at update ", k, " (t = ", times[k], ")"));
    }
    if (!(fisher_info[k] >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative Fisher information at update ", k));
    }
    series.values.push_back(fisher_info[k] / (times[k] - prev));
    series.boundaries.push_back(times[k]);
    prev = times[k];
  }
  return series;
}

absl::StatusOr<FidSeries> FidPiecewise(std::span<const SensingUpdate> updates,
                                       double t0) {
  std::vector<double> times, info;
  times.reserve(updates.size());
  info.reserve(updates.size());
  for (const SensingUpdate& u : updates) {
    times.push_back(u.t);
    info.push_back(u.fisher_info);
  }
  return FidPiecewise(times, info, t0);
}

double DefaultWindowStart(std::span<const SensingUpdate> updates) {
  if (updates.empty()) return 0.0;
  const SensingUpdate& first = updates.front();
  return first.t - 1.0 / first.rate;
}

}  // namespace fidshare
