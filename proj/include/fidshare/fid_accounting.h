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

#ifndef FIDSHARE_FID_ACCOUNTING_H_
#define FIDSHARE_FID_ACCOUNTING_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/sensing_model.h"

namespace fidshare {

// Total Fisher information of a set of updates.
double Accumulate(std::span<const double> fisher_info);
double Accumulate(std::span<const SensingUpdate> updates);

// Accumulated information divided by the window length. Errors unless
// window_s > 0.
absl::StatusOr<double> AverageRate(std::span<const SensingUpdate> updates,
                                   double window_s);

// Piecewise-constant Fisher information density. values[k] holds
// I(k) / (t_k - t_{k-1}) on (boundaries[k], boundaries[k+1]].
struct FidSeries {
  std::vector<double> boundaries;
  std::vector<double> values;

  // J(t) for t in (boundaries.front(), boundaries.back()]; 0 outside.
  double ValueAt(double t) const;
  // J of the interval ending at sample k (0-based), i.e. values[k].
  double AtSample(size_t k) const { return values[k]; }
  size_t size() const { return values.size(); }
};

// `t0` opens the first interval and must precede times.front(). Times must be
// strictly increasing.
absl::StatusOr<FidSeries> FidPiecewise(std::span<const double> times,
                                       std::span<const double> fisher_info,
                                       double t0);
absl::StatusOr<FidSeries> FidPiecewise(std::span<const SensingUpdate> updates,
                                       double t0);

// Window start used for a sensed trajectory: one nominal spacing before the
// first update, so the first interval has the length the schedule would
// have given it.
double DefaultWindowStart(std::span<const SensingUpdate> updates);

}  // namespace fidshare

#endif  // FIDSHARE_FID_ACCOUNTING_H_
