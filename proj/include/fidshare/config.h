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

#ifndef FIDSHARE_CONFIG_H_
#define FIDSHARE_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/geometry.h"
#include "fidshare/privacy_mechanism.h"
#include "fidshare/sensing_model.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {

struct PrivacyConfig {
  double epsilon_m = 0.3;
  double alpha = 0.5;
  double beta_sat = 1.5;
  std::vector<double> etas{50.0, 250.0};
  std::vector<double> fixed_sigmas{0.1, 0.7};
  int smoothing_window = 7;
  NoiseGeometry geometry = NoiseGeometry::kPerAxis;
};

// The LSTM block is consumed by the external trainer; the harness only
// carries and documents it.
struct UtilityConfig {
  double horizon_s = 1.0;
  double min_heading_speed_mps = 0.1;
  int lstm_d_in = 2;
  int lstm_d_out = 2;
  int lstm_hidden = 64;
  int lstm_layers = 3;
  double lstm_learning_rate = 1.6e-3;
  int lstm_batch = 64;
  int lstm_epochs = 1000;
  double lstm_segment_len_s = 12.0;
  int lstm_segments = 10000;
};

struct ScenarioConfig {
  BoundingBox scene{0.0, 0.0, 60.0, 60.0};
  int n_trajectories = 100;
  double min_duration_s = 10.0;
  double max_duration_s = 100.0;
  SpeedRange speed{0.5, 2.0};
  std::vector<double> ptx_grid_dbm{15, 20, 25, 30, 35, 40, 45, 50};
  // Truth CSV to sweep over; synthetic corpus when empty.
  std::string truth_csv;
};

struct SimConfig {
  SensingConfig sensing;
  PrivacyConfig privacy;
  UtilityConfig utility;
  ScenarioConfig scenario;
};

absl::Status ValidateConfig(const SimConfig& cfg);

// Defaults, then the JSON file (if any), then "section.key=value" overrides.
// Unknown sections or keys are errors. All errors are InvalidArgument.
absl::StatusOr<SimConfig> LoadConfig(const std::optional<std::string>& path,
                                     const std::vector<std::string>& overrides);

absl::StatusOr<SimConfig> ParseConfigJson(
    const std::string& json_text, const std::vector<std::string>& overrides);

std::string ConfigToJson(const SimConfig& cfg);

}  // namespace fidshare

#endif  // FIDSHARE_CONFIG_H_
