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

#include "fidshare/harness.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "fidshare/rng.h"
#include "fidshare/status_macros.h"

namespace fidshare {
namespace {

uint64_t PtxTag(double ptx_dbm) { return std::bit_cast<uint64_t>(ptx_dbm); }

std::vector<Vec2> Positions(const std::vector<SharedSample>& shared) {
  std::vector<Vec2> out;
  out.reserve(shared.size());
  for (const SharedSample& s : shared) out.push_back(s.xy);
  return out;
}

}  // namespace

std::string_view SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kNone:
      return "none";
    case Scheme::kFixedSigma:
      return "fixed_sigma";
    case Scheme::kFidConstrained:
      return "fid_constrained";
  }
  return "none";
}

absl::StatusOr<Scheme> SchemeFromName(std::string_view name) {
  if (name == "none") return Scheme::kNone;
  if (name == "fixed_sigma") return Scheme::kFixedSigma;
  if (name == "fid_constrained") return Scheme::kFidConstrained;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown scheme '", std::string(name),
      "' (expected none, fixed_sigma or fid_constrained)"));
}

absl::Status ValidateRunSpec(const RunSpec& spec) {
  const bool wants_eta = spec.scheme == Scheme::kFidConstrained;
  const bool wants_sigma = spec.scheme == Scheme::kFixedSigma;
  if (spec.eta.has_value() != wants_eta) {
    return absl::InvalidArgumentError(
        "eta must be given exactly for the fid_constrained scheme");
  }
  if (spec.sigma_fixed.has_value() != wants_sigma) {
    return absl::InvalidArgumentError(
        "sigma_fixed must be given exactly for the fixed_sigma scheme");
  }
  if (spec.eta && !(*spec.eta > 0.0)) {
    return absl::InvalidArgumentError("eta must be > 0");
  }
  if (spec.sigma_fixed && !(*spec.sigma_fixed >= 0.0)) {
    return absl::InvalidArgumentError("sigma_fixed must be >= 0");
  }
  if (!(spec.ptx_dbm >= 15.0 && spec.ptx_dbm <= 50.0)) {
    return absl::InvalidArgumentError("ptx_dbm must lie in [15, 50]");
  }
  if (spec.n_trajectories < 1) {
    return absl::InvalidArgumentError("n_trajectories must be >= 1");
  }
  return absl::OkStatus();
}

std::string SchemeLabel(const RunSpec& spec) {
  switch (spec.scheme) {
    case Scheme::kNone:
      return "none";
    case Scheme::kFixedSigma:
      return absl::StrCat("sigma_", spec.sigma_fixed.value_or(0.0));
    case Scheme::kFidConstrained:
      return absl::StrCat("eta_", spec.eta.value_or(0.0));
  }
  return "none";
}

absl::StatusOr<SensedCell> SenseCell(const Trajectory& traj, int traj_index,
                                     double ptx_dbm, const SimConfig& cfg,
                                     uint64_t master_seed) {
  SensingConfig sensing = cfg.sensing;
  sensing.ptx_dbm = ptx_dbm;
  Rng rng = MakeRng(master_seed,
                    {static_cast<uint64_t>(traj_index), PtxTag(ptx_dbm),
                     static_cast<uint64_t>(Stream::kSensing)});
  SensedCell cell;
  FIDSHARE_ASSIGN_OR_RETURN(cell.updates, SenseTrajectory(traj, sensing, rng));
  FIDSHARE_ASSIGN_OR_RETURN(
      cell.fid, FidPiecewise(cell.updates, DefaultWindowStart(cell.updates)));
  return cell;
}

absl::StatusOr<std::vector<SharedSample>> ApplyScheme(const SensedCell& cell,
                                                      int traj_index,
                                                      const RunSpec& spec,
                                                      const SimConfig& cfg) {
  FIDSHARE_RETURN_IF_ERROR(ValidateRunSpec(spec));
  Rng rng = MakeRng(spec.master_seed,
                    {static_cast<uint64_t>(traj_index), PtxTag(spec.ptx_dbm),
                     static_cast<uint64_t>(Stream::kMechanism)});
  const PrivacyConfig& p = cfg.privacy;
  switch (spec.scheme) {
    case Scheme::kNone:
      return ShareRaw(cell.updates, cell.fid);
    case Scheme::kFixedSigma:
      return FixedNoiseBaseline(cell.updates, cell.fid, *spec.sigma_fixed,
                                p.geometry, rng);
    case Scheme::kFidConstrained: {
      const MechanismParams params{*spec.eta, p.alpha, p.beta_sat, p.geometry};
      FIDSHARE_RETURN_IF_ERROR(ValidateMechanismParams(params));
      return Sanitize(cell.updates, cell.fid, params, rng);
    }
  }
  return absl::InternalError("unhandled scheme");
}

absl::StatusOr<RunOutput> EvaluateShared(
    std::vector<SharedSample> shared, const Trajectory& truth,
    const SimConfig& cfg, const std::vector<PredictedPoint>* predictions) {
  if (shared.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("trajectory '", truth.id, "' has no shared samples"));
  }
  RunOutput out;
  const std::vector<Vec2> positions = Positions(shared);
  std::vector<Vec2> truth_xy;
  std::vector<double> times;
  truth_xy.reserve(shared.size());
  times.reserve(shared.size());
  for (const SharedSample& s : shared) {
    truth_xy.push_back(truth.PositionAt(s.t));
    times.push_back(s.t);
  }
  FIDSHARE_ASSIGN_OR_RETURN(
      std::vector<Vec2> recon,
      ReconstructSmooth(positions, cfg.privacy.smoothing_window));
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<double> errors,
                            ReconstructionError(recon, truth_xy));
  out.leakage = BuildLeakageReport(errors, times, cfg.privacy.epsilon_m);

  const UtilityOptions opts{cfg.utility.min_heading_speed_mps};
  if (predictions != nullptr) {
    out.utility = ComputeUtilityErrors(*predictions, truth, opts);
  } else {
    FIDSHARE_ASSIGN_OR_RETURN(
        std::vector<PredictedPoint> cv,
        PredictConstantVelocity(shared, cfg.utility.horizon_s));
    out.utility = ComputeUtilityErrors(cv, truth, opts);
  }
  out.shared = std::move(shared);
  return out;
}

absl::StatusOr<RunOutput> RunSingle(const Trajectory& traj, int traj_index,
                                    const RunSpec& spec, const SimConfig& cfg) {
  FIDSHARE_RETURN_IF_ERROR(ValidateRunSpec(spec));
  FIDSHARE_ASSIGN_OR_RETURN(
      SensedCell cell,
      SenseCell(traj, traj_index, spec.ptx_dbm, cfg, spec.master_seed));
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<SharedSample> shared,
                            ApplyScheme(cell, traj_index, spec, cfg));
  return EvaluateShared(std::move(shared), traj, cfg);
}

ReportRow MakeReportRow(const Trajectory& traj, const RunSpec& spec,
                        const RunOutput& out) {
  ReportRow row;
  row.run_id = absl::StrCat(traj.id, "@", spec.ptx_dbm, "dBm");
  row.scheme = SchemeLabel(spec);
  row.eta = spec.eta;
  row.ptx_dbm = spec.ptx_dbm;
  row.seed = spec.master_seed;
  row.plr = out.leakage.plr;
  row.avg_leak_s = out.leakage.avg_leak_s;
  row.max_leak_s = out.leakage.max_leak_s;
  row.pos_err_1s_m = out.utility.pos_err_1s;
  row.vel_err_mps = out.utility.vel_err;
  row.heading_err_deg = out.utility.heading_err;
  return row;
}

std::vector<SharedRow> MakeSharedRows(const std::string& traj_id,
                                      const std::string& scheme_label,
                                      const std::vector<SharedSample>& shared) {
  std::vector<SharedRow> rows;
  rows.reserve(shared.size());
  for (const SharedSample& s : shared) {
    rows.push_back({traj_id, s.t, s.xy.x, s.xy.y, s.fid_at_t, s.dsigma,
                    scheme_label});
  }
  return rows;
}

absl::StatusOr<std::vector<Trajectory>> BuildCorpus(const SimConfig& cfg,
                                                    uint64_t master_seed) {
  const ScenarioConfig& sc = cfg.scenario;
  if (sc.truth_csv.empty()) {
    return SynthCorpus(
        DeriveSeed(master_seed, {static_cast<uint64_t>(Stream::kTrajectory)}),
        sc.n_trajectories, sc.min_duration_s, sc.max_duration_s, sc.speed,
        sc.scene);
  }
  FIDSHARE_ASSIGN_OR_RETURN(std::string text, ReadFile(sc.truth_csv));
  std::istringstream in(text);
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<TruthRow> rows, ReadTruthCsv(in));
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<Trajectory> trajs, FromTruthRows(rows));
  if (trajs.size() > static_cast<size_t>(sc.n_trajectories)) {
    trajs.resize(sc.n_trajectories);
  }
  return trajs;
}

void MetricStats::Add(double v) {
  if (std::isnan(v)) return;
  ++count;
  sum += v;
  sum_sq += v * v;
}

void MetricStats::Merge(const MetricStats& other) {
  count += other.count;
  sum += other.sum;
  sum_sq += other.sum_sq;
}

double MetricStats::Mean() const {
  return count > 0 ? sum / count : std::nan("");
}

double MetricStats::StdErr() const {
  if (count < 2) return 0.0;
  const double mean = sum / count;
  const double var =
      std::max(0.0, (sum_sq - count * mean * mean) / (count - 1));
  return std::sqrt(var / count);
}

const SweepCell* SweepResult::Find(double ptx_dbm,
                                   std::string_view scheme) const {
  for (const SweepCell& c : cells) {
    if (c.ptx_dbm == ptx_dbm && c.scheme == scheme) return &c;
  }
  return nullptr;
}

std::vector<RunSpec> DefaultSchemes(const SimConfig& cfg, double ptx_dbm,
                                    uint64_t master_seed) {
  const int n = cfg.scenario.n_trajectories;
  std::vector<RunSpec> specs;
  specs.push_back({Scheme::kNone, std::nullopt, std::nullopt, ptx_dbm, n,
                   master_seed});
  for (double sigma : cfg.privacy.fixed_sigmas) {
    specs.push_back(
        {Scheme::kFixedSigma, std::nullopt, sigma, ptx_dbm, n, master_seed});
  }
  for (double eta : cfg.privacy.etas) {
    specs.push_back(
        {Scheme::kFidConstrained, eta, std::nullopt, ptx_dbm, n, master_seed});
  }
  return specs;
}

absl::StatusOr<SweepResult> RunSweep(const std::vector<Trajectory>& corpus,
                                     const SimConfig& cfg,
                                     uint64_t master_seed, int threads) {
  FIDSHARE_RETURN_IF_ERROR(ValidateConfig(cfg));
  const std::vector<double>& grid = cfg.scenario.ptx_grid_dbm;
  const size_t n_traj = corpus.size();
  const size_t n_schemes = DefaultSchemes(cfg, grid.front(), 0).size();

  // rows[i][p * n_schemes + s]: written only by the worker owning i.
  std::vector<std::vector<ReportRow>> rows(n_traj);
  std::vector<absl::Status> status(n_traj);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n_traj; i = next++) {
      const int idx = static_cast<int>(i);
      rows[i].reserve(grid.size() * n_schemes);
      for (double ptx : grid) {
        absl::StatusOr<SensedCell> cell =
            SenseCell(corpus[i], idx, ptx, cfg, master_seed);
        if (!cell.ok()) {
          status[i] = cell.status();
          break;
        }
        for (const RunSpec& spec : DefaultSchemes(cfg, ptx, master_seed)) {
          absl::StatusOr<std::vector<SharedSample>> shared =
              ApplyScheme(*cell, idx, spec, cfg);
          absl::StatusOr<RunOutput> out =
              shared.ok() ? EvaluateShared(*std::move(shared), corpus[i], cfg)
                          : absl::StatusOr<RunOutput>(shared.status());
          if (!out.ok()) {
            status[i] = out.status();
            break;
          }
          rows[i].push_back(MakeReportRow(corpus[i], spec, *out));
        }
        if (!status[i].ok()) break;
      }
    }
  };
  const int n_workers =
      std::max(1, std::min<int>(threads, static_cast<int>(n_traj)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (size_t i = 0; i < n_traj; ++i) {
    if (!status[i].ok()) {
      return absl::Status(status[i].code(),
                          absl::StrCat("trajectory '", corpus[i].id,
                                       "': ", status[i].message()));
    }
  }

  SweepResult result;
  result.reports.reserve(n_traj * grid.size() * n_schemes);
  for (size_t cell = 0; cell < grid.size() * n_schemes; ++cell) {
    for (size_t i = 0; i < n_traj; ++i) result.reports.push_back(rows[i][cell]);
  }
  result.cells = AggregateReports(result.reports);
  return result;
}

std::vector<SweepCell> AggregateReports(const std::vector<ReportRow>& rows) {
  std::vector<SweepCell> cells;
  std::map<std::pair<double, std::string>, size_t> index;
  for (const ReportRow& r : rows) {
    auto [it, inserted] =
        index.try_emplace({r.ptx_dbm, r.scheme}, cells.size());
    if (inserted) {
      SweepCell c;
      c.ptx_dbm = r.ptx_dbm;
      c.scheme = r.scheme;
      cells.push_back(std::move(c));
    }
    SweepCell& c = cells[it->second];
    c.plr.Add(r.plr);
    c.avg_leak_s.Add(r.avg_leak_s);
    c.max_leak_s.Add(r.max_leak_s);
    c.pos_err_1s_m.Add(r.pos_err_1s_m);
    c.vel_err_mps.Add(r.vel_err_mps);
    c.heading_err_deg.Add(r.heading_err_deg);
  }
  return cells;
}

absl::Status EmitPlotData(const std::vector<SweepCell>& cells,
                          const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create '", out_dir, "': ", ec.message()));
  }
  using Member = MetricStats SweepCell::*;
  constexpr Member kPanels[] = {
      &SweepCell::avg_leak_s,   &SweepCell::max_leak_s,
      &SweepCell::plr,          &SweepCell::pos_err_1s_m,
      &SweepCell::vel_err_mps,  &SweepCell::heading_err_deg,
  };
  for (size_t p = 0; p < std::size(kPanels); ++p) {
    std::ostringstream out;
    out << "ptx_dbm,scheme,mean,stderr\n";
    for (const SweepCell& c : cells) {
      const MetricStats& m = c.*kPanels[p];
      out << FormatCsvDouble(c.ptx_dbm) << ',' << c.scheme << ','
          << FormatCsvDouble(m.Mean()) << ',' << FormatCsvDouble(m.StdErr())
          << '\n';
    }
    const std::string path =
        (std::filesystem::path(out_dir) / kPlotFiles[p]).string();
    FIDSHARE_RETURN_IF_ERROR(WriteFile(path, out.str()));
  }
  return absl::OkStatus();
}

}  // namespace fidshare
