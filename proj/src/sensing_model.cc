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

#include "fidshare/sensing_model.h"

#include <cmath>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fidshare/status_macros.h"

namespace fidshare {

absl::Status ValidateSensingConfig(const SensingConfig& cfg) {
  auto bad = [](std::string_view what) {
    return absl::InvalidArgumentError(absl::StrCat("sensing: ", std::string(what)));
  };
  if (!(cfg.ptx_dbm >= 15.0 && cfg.ptx_dbm <= 50.0)) {
    return bad("ptx_dbm must lie in [15, 50]");
  }
  if (!(cfg.p_los >= 0.0 && cfg.p_los <= 1.0)) return bad("p_los not in [0, 1]");
  if (!(cfg.rate_min >= 2.0 && cfg.rate_max <= 4.0 &&
        cfg.rate_min <= cfg.rate_max)) {
    return bad("rate range must be a sub-interval of [2, 4]");
  }
  if (!(cfg.rate_epoch_s > 0.0)) return bad("rate_epoch_s must be positive");
  if (cfg.n_tx_antennas < 1) return bad("n_tx_antennas must be >= 1");
  if (cfg.symbols_per_update < 1) return bad("symbols_per_update must be >= 1");
  if (cfg.n_multipath < 1) return bad("n_multipath must be >= 1");
  if (!(cfg.kappa > 0.0) || !(cfg.rcs_norm > 0.0)) {
    return bad("kappa and rcs_norm must be positive");
  }
  if (!(cfg.rician_k_los >= 0.0) || !(cfg.rician_k_nlos >= 0.0)) {
    return bad("Rician factors must be non-negative");
  }
  if (!(cfg.beam_fluct_std_db >= 0.0)) return bad("beam_fluct_std_db < 0");
  return absl::OkStatus();
}

double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::vector<ScheduledUpdate> ScheduleUpdates(double duration_s,
                                             const SensingConfig& cfg,
                                             Rng& rng) {
  std::uniform_real_distribution<double> rate_dist(cfg.rate_min, cfg.rate_max);
  std::vector<ScheduledUpdate> out;
  // Tolerance keeps accumulated 1/r steps from landing on a boundary.
  constexpr double kEps = 1e-9;
  int epoch = -1;
  double rate = 0.0;
  double t = 0.0;
  int k_in_epoch = 0;
  double epoch_anchor = 0.0;
  while (t < duration_s - kEps) {
    const int e = static_cast<int>(std::floor(t / cfg.rate_epoch_s + kEps));
    if (e != epoch) {
      epoch = e;
      rate = rate_dist(rng);
      epoch_anchor = t;
      k_in_epoch = 0;
    }
    out.push_back({t, epoch, rate});
    // Multiples from the epoch's first sample avoid drift from summing 1/r.
    ++k_in_epoch;
    t = epoch_anchor + k_in_epoch / rate;
  }
  return out;
}

bool DrawLosState(const SensingConfig& cfg, Rng& rng) {
  std::bernoulli_distribution los(cfg.p_los);
  return los(rng);
}

double DrawRicianPower(double k_factor, int n_multipath, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  double diffuse = 0.0;
  for (int p = 0; p < n_multipath; ++p) {
    const double re = n01(rng);
    const double im = n01(rng);
    diffuse += 0.5 * (re * re + im * im);
  }
  diffuse /= n_multipath;
  return (k_factor + diffuse) / (k_factor + 1.0);
}

double MeanChannelGain(double distance_m, bool is_los,
                       const SensingConfig& cfg) {
  const double n0_watts = DbmToWatts(cfg.noise_floor_dbm);
  double g = cfg.rcs_norm * cfg.kappa *
             std::pow(distance_m, -2.0 * cfg.pathloss_exp_avg) / n0_watts;
  if (!is_los) g *= std::pow(10.0, -cfg.nlos_extra_loss_db / 10.0);
  return g;
}

double BeamformingGain(const SensingConfig& cfg) {
  return DbmToWatts(cfg.ptx_dbm) * cfg.n_tx_antennas;
}

absl::StatusOr<ChannelState> DrawChannel(const Vec2& target_xy, bool is_los,
                                         const SensingConfig& cfg, Rng& rng) {
  const double d = Distance(target_xy, cfg.bs_position);
  if (!(d > 0.0)) {
    return absl::FailedPreconditionError(
        "target coincides with the base station");
  }
  std::normal_distribution<double> beam(0.0, cfg.beam_fluct_std_db);
  const double beam_gain = std::pow(10.0, beam(rng) / 10.0);
  ChannelState ch;
  ch.is_los = is_los;
  ch.rician_k = is_los ? cfg.rician_k_los : cfg.rician_k_nlos;
  const double chi = DrawRicianPower(ch.rician_k, cfg.n_multipath, rng);
  ch.gain_beta = MeanChannelGain(d, is_los, cfg) * beam_gain * chi;
  ch.snr_eff_db = 10.0 * std::log10(FisherInfo(ch, cfg));
  return ch;
}

double FisherInfo(const ChannelState& channel, const SensingConfig& cfg) {
  return channel.gain_beta * cfg.symbols_per_update * BeamformingGain(cfg);
}

double PositionCrb(double fisher_info, double range_m) {
  return range_m * range_m / fisher_info;
}

Vec2 PolarPerturb(const Vec2& bs, const Vec2& true_xy, double range_err,
                  double angle_err) {
  const Vec2 rel = true_xy - bs;
  const double range = Norm(rel) + range_err;
  const double bearing = std::atan2(rel.y, rel.x) + angle_err;
  return {bs.x + range * std::cos(bearing), bs.y + range * std::sin(bearing)};
}

Vec2 Measure(const Vec2& true_xy, double position_crb,
             const SensingConfig& cfg, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double half_std = std::sqrt(position_crb / 2.0);
  const double range = Distance(true_xy, cfg.bs_position);
  const double range_err = half_std * n01(rng);
  const double angle_err = half_std / range * n01(rng);
  return PolarPerturb(cfg.bs_position, true_xy, range_err, angle_err);
}

absl::StatusOr<std::vector<SensingUpdate>> SenseTrajectory(
    const Trajectory& traj, const SensingConfig& cfg, Rng& rng) {
  FIDSHARE_RETURN_IF_ERROR(ValidateTrajectory(traj));
  const std::vector<ScheduledUpdate> schedule =
      ScheduleUpdates(traj.Duration(), cfg, rng);
  std::vector<bool> los;
  los.reserve(schedule.empty() ? 0 : schedule.back().epoch + 1);
  for (int e = 0; e <= (schedule.empty() ? -1 : schedule.back().epoch); ++e) {
    los.push_back(DrawLosState(cfg, rng));
  }

  std::vector<SensingUpdate> out;
  out.reserve(schedule.size());
  for (const ScheduledUpdate& s : schedule) {
    SensingUpdate u;
    u.t = traj.StartTime() + s.t;
    u.epoch = s.epoch;
    u.rate = s.rate;
    u.true_xy = traj.PositionAt(u.t);
    FIDSHARE_ASSIGN_OR_RETURN(u.channel,
                              DrawChannel(u.true_xy, los[s.epoch], cfg, rng));
    u.fisher_info = FisherInfo(u.channel, cfg);
    const double range = Distance(u.true_xy, cfg.bs_position);
    u.raw_xy = Measure(u.true_xy, PositionCrb(u.fisher_info, range), cfg, rng);
    out.push_back(u);
  }
  return out;
}

}  // namespace fidshare
