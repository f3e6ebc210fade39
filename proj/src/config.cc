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

#include "fidshare/config.h"

#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fidshare/csv.h"
#include "fidshare/status_macros.h"
#include "json.hpp"

namespace fidshare {

using nlohmann::json;

void to_json(json& j, const Vec2& v) { j = json::array({v.x, v.y}); }
void from_json(const json& j, Vec2& v) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("expected [x, y]");
  }
  v = {j.at(0).get<double>(), j.at(1).get<double>()};
}
void to_json(json& j, const BoundingBox& b) {
  j = json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}
void from_json(const json& j, BoundingBox& b) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument("expected [x_min, y_min, x_max, y_max]");
  }
  b = {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
       j.at(3).get<double>()};
}
void to_json(json& j, const NoiseGeometry& g) {
  j = g == NoiseGeometry::kPerAxis ? "per_axis" : "random_direction";
}
void from_json(const json& j, NoiseGeometry& g) {
  const std::string s = j.get<std::string>();
  if (s == "per_axis") {
    g = NoiseGeometry::kPerAxis;
  } else if (s == "random_direction") {
    g = NoiseGeometry::kRandomDirection;
  } else {
    throw std::invalid_argument("expected \"per_axis\" or \"random_direction\"");
  }
}

namespace {

// Single field table shared by serialization and parsing.
template <typename Visitor>
void VisitFields(SimConfig& c, Visitor&& v) {
  SensingConfig& s = c.sensing;
  v("sensing", "carrier_hz", s.carrier_hz);
  v("sensing", "bandwidth_hz", s.bandwidth_hz);
  v("sensing", "noise_floor_dbm", s.noise_floor_dbm);
  v("sensing", "ptx_dbm", s.ptx_dbm);
  v("sensing", "n_tx_antennas", s.n_tx_antennas);
  v("sensing", "beam_fluct_std_db", s.beam_fluct_std_db);
  v("sensing", "pathloss_exp_avg", s.pathloss_exp_avg);
  v("sensing", "rician_k_los", s.rician_k_los);
  v("sensing", "rician_k_nlos", s.rician_k_nlos);
  v("sensing", "n_multipath", s.n_multipath);
  v("sensing", "max_delay_spread_s", s.max_delay_spread_s);
  v("sensing", "p_los", s.p_los);
  v("sensing", "nlos_extra_loss_db", s.nlos_extra_loss_db);
  v("sensing", "symbols_per_update", s.symbols_per_update);
  v("sensing", "rcs_norm", s.rcs_norm);
  v("sensing", "kappa", s.kappa);
  v("sensing", "bs_position", s.bs_position);
  v("sensing", "rate_epoch_s", s.rate_epoch_s);
  v("sensing", "rate_min", s.rate_min);
  v("sensing", "rate_max", s.rate_max);

  PrivacyConfig& p = c.privacy;
  v("privacy", "epsilon_m", p.epsilon_m);
  v("privacy", "alpha", p.alpha);
  v("privacy", "beta_sat", p.beta_sat);
  v("privacy", "etas", p.etas);
  v("privacy", "fixed_sigmas", p.fixed_sigmas);
  v("privacy", "smoothing_window", p.smoothing_window);
  v("privacy", "noise_geometry", p.geometry);

  UtilityConfig& u = c.utility;
  v("utility", "horizon_s", u.horizon_s);
  v("utility", "min_heading_speed_mps", u.min_heading_speed_mps);
  v("utility", "lstm_d_in", u.lstm_d_in);
  v("utility", "lstm_d_out", u.lstm_d_out);
  v("utility", "lstm_hidden", u.lstm_hidden);
  v("utility", "lstm_layers", u.lstm_layers);
  v("utility", "lstm_learning_rate", u.lstm_learning_rate);
  v("utility", "lstm_batch", u.lstm_batch);
  v("utility", "lstm_epochs", u.lstm_epochs);
  v("utility", "lstm_segment_len_s", u.lstm_segment_len_s);
  v("utility", "lstm_segments", u.lstm_segments);

  ScenarioConfig& sc = c.scenario;
  v("scenario", "scene", sc.scene);
  v("scenario", "n_trajectories", sc.n_trajectories);
  v("scenario", "min_duration_s", sc.min_duration_s);
  v("scenario", "max_duration_s", sc.max_duration_s);
  v("scenario", "speed_min_mps", sc.speed.min_mps);
  v("scenario", "speed_max_mps", sc.speed.max_mps);
  v("scenario", "ptx_grid_dbm", sc.ptx_grid_dbm);
  v("scenario", "truth_csv", sc.truth_csv);
}

json ToJsonTree(const SimConfig& cfg) {
  SimConfig copy = cfg;
  json root = json::object();
  VisitFields(copy, [&](const char* section, const char* key, auto& field) {
    root[section][key] = field;
  });
  return root;
}

absl::Status MergeInto(json& base, const json& overlay, const std::string& path) {
  if (!overlay.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("config: '", path.empty() ? "<root>" : path,
                     "' must be an object"));
  }
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    const std::string key_path = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) {
      return absl::InvalidArgumentError(
          absl::StrCat("config: unknown key '", key_path, "'"));
    }
    json& slot = base[it.key()];
    if (slot.is_object()) {
      FIDSHARE_RETURN_IF_ERROR(MergeInto(slot, it.value(), key_path));
    } else {
      slot = it.value();
    }
  }
  return absl::OkStatus();
}

absl::Status ApplyOverride(json& root, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  const size_t dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos ||
      dot > eq) {
    return absl::InvalidArgumentError(absl::StrCat(
        "override '", std::string(assignment), "' is not of the form section.key=value"));
  }
  const std::string section(assignment.substr(0, dot));
  const std::string key(assignment.substr(dot + 1, eq - dot - 1));
  const std::string value(assignment.substr(eq + 1));
  if (!root.contains(section) || !root[section].contains(key)) {
    return absl::InvalidArgumentError(
        absl::StrCat("config: unknown key '", section, ".", key, "'"));
  }
  json parsed = json::parse(value, nullptr, /*allow_exceptions=*/false);
  root[section][key] = parsed.is_discarded() ? json(value) : parsed;
  return absl::OkStatus();
}

absl::StatusOr<SimConfig> FromJsonTree(const json& root) {
  SimConfig cfg;
  std::string failed;
  try {
    VisitFields(cfg, [&](const char* section, const char* key, auto& field) {
      failed = absl::StrCat(section, ".", key);
      root.at(section).at(key).get_to(field);
    });
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config: bad value for '", failed, "': ", e.what()));
  }
  return cfg;
}

}  // namespace

absl::Status ValidateConfig(const SimConfig& cfg) {
  FIDSHARE_RETURN_IF_ERROR(ValidateSensingConfig(cfg.sensing));
  const PrivacyConfig& p = cfg.privacy;
  if (!(p.epsilon_m > 0.0)) {
    return absl::InvalidArgumentError("privacy.epsilon_m must be > 0");
  }
  for (double eta : p.etas) {
    FIDSHARE_RETURN_IF_ERROR(ValidateMechanismParams(
        {eta, p.alpha, p.beta_sat, p.geometry}));
  }
  for (double s : p.fixed_sigmas) {
    if (!(s >= 0.0)) {
      return absl::InvalidArgumentError("privacy.fixed_sigmas must be >= 0");
    }
  }
  if (p.smoothing_window < 1 || p.smoothing_window % 2 == 0) {
    return absl::InvalidArgumentError(
        "privacy.smoothing_window must be odd and >= 1");
  }
  if (!(cfg.utility.horizon_s > 0.0)) {
    return absl::InvalidArgumentError("utility.horizon_s must be > 0");
  }
  const ScenarioConfig& sc = cfg.scenario;
  if (!(sc.scene.Width() > 0.0 && sc.scene.Height() > 0.0)) {
    return absl::InvalidArgumentError("scenario.scene is degenerate");
  }
  if (sc.n_trajectories < 1) {
    return absl::InvalidArgumentError("scenario.n_trajectories must be >= 1");
  }
  if (!(sc.min_duration_s >= 10.0 && sc.max_duration_s <= 100.0 &&
        sc.min_duration_s <= sc.max_duration_s)) {
    return absl::InvalidArgumentError(
        "scenario durations must lie within [10, 100] s");
  }
  if (!(sc.speed.min_mps > 0.0 && sc.speed.max_mps <= 3.0 &&
        sc.speed.min_mps <= sc.speed.max_mps)) {
    return absl::InvalidArgumentError(
        "scenario speed range must lie within (0, 3] m/s");
  }
  if (sc.ptx_grid_dbm.empty()) {
    return absl::InvalidArgumentError("scenario.ptx_grid_dbm is empty");
  }
  for (double ptx : sc.ptx_grid_dbm) {
    if (!(ptx >= 15.0 && ptx <= 50.0)) {
      return absl::InvalidArgumentError(
          "scenario.ptx_grid_dbm values must lie in [15, 50]");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SimConfig> ParseConfigJson(
    const std::string& json_text, const std::vector<std::string>& overrides) {
  json root = ToJsonTree(SimConfig{});
  if (!json_text.empty()) {
    json file = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (file.is_discarded()) {
      return absl::InvalidArgumentError("config: file is not valid JSON");
    }
    FIDSHARE_RETURN_IF_ERROR(MergeInto(root, file, ""));
  }
  for (const std::string& o : overrides) {
    FIDSHARE_RETURN_IF_ERROR(ApplyOverride(root, o));
  }
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, FromJsonTree(root));
  FIDSHARE_RETURN_IF_ERROR(ValidateConfig(cfg));
  return cfg;
}

absl::StatusOr<SimConfig> LoadConfig(const std::optional<std::string>& path,
                                     const std::vector<std::string>& overrides) {
  std::string text;
  if (path) {
    absl::StatusOr<std::string> contents = ReadFile(*path);
    if (!contents.ok()) {
      return absl::InvalidArgumentError(contents.status().message());
    }
    text = *std::move(contents);
  }
  return ParseConfigJson(text, overrides);
}

std::string ConfigToJson(const SimConfig& cfg) {
  return ToJsonTree(cfg).dump(2) + "\n";
}

}  // namespace fidshare
