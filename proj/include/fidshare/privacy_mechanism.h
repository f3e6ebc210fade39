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

#ifndef FIDSHARE_PRIVACY_MECHANISM_H_
#define FIDSHARE_PRIVACY_MECHANISM_H_

#include <span>
#include <vector>

#include "absl/status/status.h"
#include "fidshare/fid_accounting.h"
#include "fidshare/geometry.h"
#include "fidshare/rng.h"
#include "fidshare/sensing_model.h"

namespace fidshare {

enum class NoiseGeometry {
  kPerAxis,          // independent N(0, dsigma^2) on x and on y
  kRandomDirection,  // one N(0, dsigma^2) draw along a uniform direction
};

struct MechanismParams {
  double eta = 50.0;      // FID threshold
  double alpha = 0.5;     // meters
  double beta_sat = 1.5;  // saturation factor, > 1
  NoiseGeometry geometry = NoiseGeometry::kPerAxis;
};

absl::Status ValidateMechanismParams(const MechanismParams& params);

// Injected noise std for density J:
//   0                                   if J <= eta
//   alpha * (beta_sat - exp(1 - J/eta)) otherwise.
double DeltaSigma(double fid, const MechanismParams& params);

struct SharedSample {
  double t = 0.0;
  Vec2 xy;
  double dsigma = 0.0;
  double fid_at_t = 0.0;
};

// Unit-variance noise for one sample. Drawn for every sample whatever its
// dsigma, so two mechanisms fed the same stream see the same draws.
struct UnitNoise {
  Vec2 z;
};
UnitNoise DrawUnitNoise(NoiseGeometry geometry, Rng& rng);

// Causal sanitization: the sample at t_k is perturbed according to the FID of
// the interval ending at t_k. `fid` must have one value per update.
std::vector<SharedSample> Sanitize(std::span<const SensingUpdate> updates,
                                   const FidSeries& fid,
                                   const MechanismParams& params, Rng& rng);

// Fixed-sigma baseline: dsigma = sigma for every sample. `fid` is only
// recorded.
std::vector<SharedSample> FixedNoiseBaseline(
    std::span<const SensingUpdate> updates, const FidSeries& fid, double sigma,
    NoiseGeometry geometry, Rng& rng);

// Raw measurements, unchanged.
std::vector<SharedSample> ShareRaw(std::span<const SensingUpdate> updates,
                                   const FidSeries& fid);

}  // namespace fidshare

#endif  // FIDSHARE_PRIVACY_MECHANISM_H_
