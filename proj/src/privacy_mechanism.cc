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

#include "fidshare/privacy_mechanism.h"

#include <cmath>
#include <numbers>
#include <random>

#include "absl/status/status.h"

namespace fidshare {
namespace {

template <typename SigmaFn>
std::vector<SharedSample> Perturb(std::span<const SensingUpdate> updates,
                                  const FidSeries& fid, NoiseGeometry geometry,
                                  Rng& rng, SigmaFn sigma_of) {
  std::vector<SharedSample> out;
  out.reserve(updates.size());
  for (size_t k = 0; k < updates.size(); ++k) {
    const double j = k < fid.size() ? fid.AtSample(k) : 0.0;
    const double sigma = sigma_of(j);
    const UnitNoise n = DrawUnitNoise(geometry, rng);
    out.push_back({updates[k].t, updates[k].raw_xy + n.z * sigma, sigma, j});
  }
  return out;
}

}  // namespace

absl::Status ValidateMechanismParams(const MechanismParams& params) {
  if (!(params.eta > 0.0)) return absl::InvalidArgumentError("eta must be > 0");
  if (!(params.alpha > 0.0)) {
    return absl::InvalidArgumentError("alpha must be > 0");
  }
  if (!(params.beta_sat > 1.0)) {
    return absl::InvalidArgumentError("beta_sat must be > 1");
  }
  return absl::OkStatus();
}

double DeltaSigma(double fid, const MechanismParams& params) {
  if (fid <= params.eta) return 0.0;
  return params.alpha * (params.beta_sat - std::exp(-(fid / params.eta - 1.0)));
}

UnitNoise DrawUnitNoise(NoiseGeometry geometry, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double a = n01(rng);
  const double b = n01(rng);
  if (geometry == NoiseGeometry::kPerAxis) return {{a, b}};
  // Direction from the second normal's CDF keeps the draw count fixed.
  const double phi = std::numbers::pi * std::erfc(-b / std::numbers::sqrt2);
  return {{a * std::cos(phi), a * std::sin(phi)}};
}

std::vector<SharedSample> Sanitize(std::span<const SensingUpdate> updates,
                                   const FidSeries& fid,
                                   const MechanismParams& params, Rng& rng) {
  return Perturb(updates, fid, params.geometry, rng,
                 [&](double j) { return DeltaSigma(j, params); });
}

std::vector<SharedSample> FixedNoiseBaseline(
    std::span<const SensingUpdate> updates, const FidSeries& fid, double sigma,
    NoiseGeometry geometry, Rng& rng) {
  return Perturb(updates, fid, geometry, rng, [&](double) { return sigma; });
}

std::vector<SharedSample> ShareRaw(std::span<const SensingUpdate> updates,
                                   const FidSeries& fid) {
  std::vector<SharedSample> out;
  out.reserve(updates.size());
  for (size_t k = 0; k < updates.size(); ++k) {
    const double j = k < fid.size() ? fid.AtSample(k) : 0.0;
    out.push_back({updates[k].t, updates[k].raw_xy, 0.0, j});
  }
  return out;
}

}  // namespace fidshare
