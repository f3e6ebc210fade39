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

#ifndef FIDSHARE_HARNESS_H_
#define FIDSHARE_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fidshare/adversary_metrics.h"
#include "fidshare/config.h"
#include "fidshare/csv.h"
#include "fidshare/fid_accounting.h"
#include "fidshare/privacy_mechanism.h"
#include "fidshare/sensing_model.h"
#include "fidshare/trajectory_io.h"
#include "fidshare/utility_baseline.h"

namespace fidshare {

enum class Scheme { kNone, kFixedSigma, kFidConstrained };

std::string_view SchemeName(Scheme scheme);
absl::StatusOr<Scheme> SchemeFromName(std::string_view name);

struct RunSpec {
  Scheme scheme = Scheme::kNone;
  std::optional<double> eta;          // iff kFidConstrained
  std::optional<double> sigma_fixed;  // meters, iff kFixedSigma
  double ptx_dbm = 30.0;
  int n_trajectories = 100;
  uint64_t master_seed = 0;
};

absl::Status ValidateRunSpec(const RunSpec& spec);

// Short label used in CSVs: "none", "sigma_0.1", "eta_50".
std::string SchemeLabel(const RunSpec& spec);

// Sensing output for one (trajectory, power) cell. Every scheme of the cell
// is applied to these same measurements.
struct SensedCell {
  std::vector<SensingUpdate> updates;
  FidSeries fid;
};

absl::StatusOr<SensedCell> SenseCell(const Trajectory& traj, int traj_index,
                                     double ptx_dbm, const SimConfig& cfg,
                                     uint64_t master_seed);

// Post-measurement stage. The noise stream depends on (seed, trajectory,
// power) only, so all schemes of a cell see the same unit draws.
absl::StatusOr<std::vector<SharedSample>> ApplyScheme(const SensedCell& cell,
                                                      int traj_index,
                                                      const RunSpec& spec,
                                                      const SimConfig& cfg);

struct RunOutput {
  std::vector<SharedSample> shared;
  LeakageReport leakage;
  UtilityErrors utility;
};

// Attacks and scores shared samples of one trajectory. Truth at each shared
// instant comes from `truth` by interpolation. Without `predictions` the
// constant-velocity predictor is run on `shared`.
absl::StatusOr<RunOutput> EvaluateShared(
    std::vector<SharedSample> shared, const Trajectory& truth,
    const SimConfig& cfg,
    const std::vector<PredictedPoint>* predictions = nullptr);

// sense -> fid -> sanitize -> attack -> metrics for one trajectory.
absl::StatusOr<RunOutput> RunSingle(const Trajectory& traj, int traj_index,
                                    const RunSpec& spec, const SimConfig& cfg);

ReportRow MakeReportRow(const Trajectory& traj, const RunSpec& spec,
                        const RunOutput& out);
std::vector<SharedRow> MakeSharedRows(const std::string& traj_id,
                                      const std::string& scheme_label,
                                      const std::vector<SharedSample>& shared);

// Trajectories the sweep runs over: the truth CSV named in the scenario
// (first n_trajectories of it), else a synthetic corpus derived from the seed.
absl::StatusOr<std::vector<Trajectory>> BuildCorpus(const SimConfig& cfg,
                                                    uint64_t master_seed);

// Sufficient statistics of one metric. NaN samples are not counted.
struct MetricStats {
  int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void Add(double v);
  void Merge(const MetricStats& other);
  double Mean() const;
  // Standard error of the mean; 0 for fewer than two samples.
  double StdErr() const;
};

struct SweepCell {
  double ptx_dbm = 0.0;
  std::string scheme;
  MetricStats plr;
  MetricStats avg_leak_s;
  MetricStats max_leak_s;
  MetricStats pos_err_1s_m;
  MetricStats vel_err_mps;
  MetricStats heading_err_deg;
};

struct SweepResult {
  std::vector<ReportRow> reports;  // ptx-major, then scheme, then trajectory
  std::vector<SweepCell> cells;    // ptx-major, then scheme

  const SweepCell* Find(double ptx_dbm, std::string_view scheme) const;
};

// none, each fixed sigma, each eta of the config, at `ptx_dbm`.
std::vector<RunSpec> DefaultSchemes(const SimConfig& cfg, double ptx_dbm,
                                    uint64_t master_seed);

// Full grid over scenario.ptx_grid_dbm x DefaultSchemes. Trajectories are
// spread over `threads` workers; the result does not depend on `threads`.
absl::StatusOr<SweepResult> RunSweep(const std::vector<Trajectory>& corpus,
                                     const SimConfig& cfg,
                                     uint64_t master_seed, int threads = 1);

// Groups report rows by (ptx_dbm, scheme) in order of first appearance.
std::vector<SweepCell> AggregateReports(const std::vector<ReportRow>& rows);

// One CSV per figure panel with columns ptx_dbm,scheme,mean,stderr.
absl::Status EmitPlotData(const std::vector<SweepCell>& cells,
                          const std::string& out_dir);

inline constexpr std::string_view kPlotFiles[] = {
    "fig3a_avg_leak_s.csv",   "fig3b_max_leak_s.csv",
    "fig3c_plr.csv",          "fig4a_pos_err_1s_m.csv",
    "fig4b_vel_err_mps.csv",  "fig4c_heading_err_deg.csv",
};

}  // namespace fidshare

#endif  // FIDSHARE_HARNESS_H_
