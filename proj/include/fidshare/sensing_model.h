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

#ifndef FIDSHARE_SENSING_MODEL_H_
#define FIDSHARE_SENSING_MODEL_H_

#include <vector>

#include "absl/status/statusor.h"
#include "fidshare/geometry.h"
#include "fidshare/rng.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {

// Monostatic ISAC sensing of one target by a base station with an N_t-element
// half-wavelength ULA under matched beamforming.
//
// Fisher information is angular (1/rad^2): one update carries
//   I = beta * m_s * G_bf,   G_bf = a^H Q_s a = P_tx * N_t,
// and CRB = 1 / I bounds the bearing variance. The position-domain bound of
// the same update is range^2 * CRB, split evenly between the radial and the
// cross-range axis by Measure().
struct SensingConfig {
  double carrier_hz = 3.5e9;
  double bandwidth_hz = 100e6;
  double noise_floor_dbm = -91.0;
  double ptx_dbm = 30.0;
  int n_tx_antennas = 16;
  double beam_fluct_std_db = 1.4142135623730951;  // g_b ~ N(0, 2) dB
  double pathloss_exp_avg = 2.7;  // n; the two-way echo decays as d^(-2n)
  double rician_k_los = 3.0;
  double rician_k_nlos = 0.1;
  int n_multipath = 4;
  double max_delay_spread_s = 2e-7;
  double p_los = 0.7;
  double nlos_extra_loss_db = 10.0;
  int symbols_per_update = 64;
  double rcs_norm = 1.0;
  // Reference gain folding path-loss intercept, RCS and unit conversion.
  double kappa = 3e-7;
  Vec2 bs_position{5.0, 30.0};
  double rate_epoch_s = 5.0;
  double rate_min = 2.0;
  double rate_max = 4.0;
};

absl::Status ValidateSensingConfig(const SensingConfig& cfg);

struct ChannelState {
  bool is_los = true;
  double rician_k = 0.0;
  double gain_beta = 0.0;  // 1/(W rad^2), noise-normalized
  double snr_eff_db = 0.0;  // post-integration SNR, 10 log10(I)
};

struct ScheduledUpdate {
  double t = 0.0;     // seconds from trajectory start
  int epoch = 0;      // index of the rate epoch containing t
  double rate = 0.0;  // samples/s in force for that epoch
};

struct SensingUpdate {
  double t = 0.0;  // absolute trajectory time
  int epoch = 0;
  double rate = 0.0;
  double fisher_info = 0.0;  // 1/rad^2
  Vec2 true_xy;
  Vec2 raw_xy;
  ChannelState channel;

  double Crb() const { return 1.0 / fisher_info; }
};

double DbmToWatts(double dbm);

// One rate r ~ U[rate_min, rate_max] per rate_epoch_s epoch; consecutive
// samples are 1/r apart, r being the rate of the epoch the earlier sample
// falls in. Starts at 0, all timestamps < duration_s.
std::vector<ScheduledUpdate> ScheduleUpdates(double duration_s,
                                             const SensingConfig& cfg,
                                             Rng& rng);

// Blockage state for one rate epoch.
bool DrawLosState(const SensingConfig& cfg, Rng& rng);

// Band-averaged Rician power gain with unit mean: a fixed LOS ray plus
// n_multipath resolvable diffuse taps.
double DrawRicianPower(double k_factor, int n_multipath, Rng& rng);

// Per-update channel for a target at `target_xy` given the epoch's blockage
// state. Errors if the target sits on the base station.
absl::StatusOr<ChannelState> DrawChannel(const Vec2& target_xy, bool is_los,
                                         const SensingConfig& cfg, Rng& rng);

// Deterministic part of the link budget: rcs * kappa * d^(-2n) / N0, with the
// NLOS loss applied when !is_los.
double MeanChannelGain(double distance_m, bool is_los,
                       const SensingConfig& cfg);

double BeamformingGain(const SensingConfig& cfg);

// I = beta * m_s * G_bf.
double FisherInfo(const ChannelState& channel, const SensingConfig& cfg);

// range^2 / I, in m^2.
double PositionCrb(double fisher_info, double range_m);

// Displaces `true_xy` by `range_err` along the BS->target ray and rotates it
// by `angle_err` radians about the BS.
Vec2 PolarPerturb(const Vec2& bs, const Vec2& true_xy, double range_err,
                  double angle_err);

// Polar measurement noise: radial std sqrt(crb/2), cross-range std
// sqrt(crb/2) applied as bearing noise sqrt(crb/2)/range.
Vec2 Measure(const Vec2& true_xy, double position_crb,
             const SensingConfig& cfg, Rng& rng);

// Schedules, draws channels, and measures the trajectory. Truth is linearly
// interpolated to the scheduled instants.
absl::StatusOr<std::vector<SensingUpdate>> SenseTrajectory(
    const Trajectory& traj, const SensingConfig& cfg, Rng& rng);

}  // namespace fidshare

#endif  // FIDSHARE_SENSING_MODEL_H_
