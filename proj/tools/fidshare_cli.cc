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

// Command-line front end: ingest, synth, simulate, sweep, metrics, plotdata.
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/match.h"
#include "fidshare/config.h"
#include "fidshare/csv.h"
#include "fidshare/harness.h"
#include "fidshare/status_macros.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

int Report(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  std::cerr << "error: " << status.message() << '\n';
  return status.code() == absl::StatusCode::kInvalidArgument ? kExitConfig
                                                             : kExitData;
}

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> overrides;
};

absl::StatusOr<SimConfig> ResolveConfig(const CommonFlags& common,
                                        std::vector<std::string> extra) {
  std::vector<std::string> all = common.overrides;
  for (std::string& e : extra) all.push_back(std::move(e));
  std::optional<std::string> path;
  if (!common.config_path.empty()) path = common.config_path;
  return LoadConfig(path, all);
}

template <typename Row>
absl::Status Emit(const std::vector<Row>& rows, const std::string& path) {
  std::ostringstream out;
  FIDSHARE_RETURN_IF_ERROR(WriteCsv(rows, out));
  if (path.empty() || path == "-") {
    std::cout << out.str();
    return absl::OkStatus();
  }
  return WriteFile(path, out.str());
}

absl::StatusOr<std::vector<Trajectory>> ReadTruth(const std::string& path) {
  FIDSHARE_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  std::istringstream in(text);
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<TruthRow> rows, ReadTruthCsv(in));
  return FromTruthRows(rows);
}

// ---------------------------------------------------------------- ingest

struct IngestFlags {
  std::string input;
  std::string output;
  double frame_rate = 2.5;
  bool normalize = true;
};

absl::Status RunIngest(const CommonFlags& common, const IngestFlags& f) {
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, {}));
  if (!(f.frame_rate > 0.0)) {
    return absl::InvalidArgumentError("--frame-rate must be > 0");
  }
  FIDSHARE_ASSIGN_OR_RETURN(std::string text, ReadFile(f.input));
  OpenTrajFormat format;
  format.frame_rate = f.frame_rate;
  format.min_duration_s = cfg.scenario.min_duration_s;
  format.max_duration_s = cfg.scenario.max_duration_s;
  FIDSHARE_ASSIGN_OR_RETURN(IngestResult ingested, ParseOpenTraj(text, format));
  std::vector<Trajectory> trajs = std::move(ingested.trajectories);
  if (trajs.empty()) {
    return absl::FailedPreconditionError(
        "no trajectory within the duration range");
  }
  if (f.normalize) {
    FIDSHARE_ASSIGN_OR_RETURN(trajs, NormalizeScene(trajs, cfg.scenario.scene));
  }
  std::cerr << "ingested " << trajs.size() << " trajectories, dropped "
            << ingested.dropped_count << '\n';
  return Emit(ToTruthRows(trajs), f.output);
}

// ----------------------------------------------------------------- synth

struct SynthFlags {
  uint64_t seed = 0;
  std::optional<int> count;
  std::string output;
};

absl::Status RunSynth(const CommonFlags& common, const SynthFlags& f) {
  std::vector<std::string> extra;
  if (f.count) extra.push_back(absl::StrCat("scenario.n_trajectories=", *f.count));
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, extra));
  cfg.scenario.truth_csv.clear();
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<Trajectory> trajs,
                            BuildCorpus(cfg, f.seed));
  return Emit(ToTruthRows(trajs), f.output);
}

// -------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string scheme;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::optional<double> ptx;
  uint64_t seed = 0;
  std::optional<int> n_trajectories;
  std::string truth;
  std::string shared_out;
  std::string report_out;
};

absl::Status RunSimulate(const CommonFlags& common, const SimulateFlags& f) {
  std::vector<std::string> extra;
  if (f.n_trajectories) {
    extra.push_back(absl::StrCat("scenario.n_trajectories=", *f.n_trajectories));
  }
  if (f.ptx) extra.push_back(absl::StrCat("sensing.ptx_dbm=", *f.ptx));
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, extra));
  if (!f.truth.empty()) cfg.scenario.truth_csv = f.truth;

  RunSpec spec;
  FIDSHARE_ASSIGN_OR_RETURN(spec.scheme, SchemeFromName(f.scheme));
  spec.eta = f.eta;
  spec.sigma_fixed = f.sigma;
  spec.ptx_dbm = cfg.sensing.ptx_dbm;
  spec.n_trajectories = cfg.scenario.n_trajectories;
  spec.master_seed = f.seed;
  FIDSHARE_RETURN_IF_ERROR(ValidateRunSpec(spec));

  FIDSHARE_ASSIGN_OR_RETURN(std::vector<Trajectory> corpus,
                            BuildCorpus(cfg, f.seed));
  const std::string label = SchemeLabel(spec);
  std::vector<SharedRow> shared_rows;
  std::vector<ReportRow> report_rows;
  for (size_t i = 0; i < corpus.size(); ++i) {
    FIDSHARE_ASSIGN_OR_RETURN(
        RunOutput out, RunSingle(corpus[i], static_cast<int>(i), spec, cfg));
    std::vector<SharedRow> rows = MakeSharedRows(corpus[i].id, label, out.shared);
    shared_rows.insert(shared_rows.end(), rows.begin(), rows.end());
    report_rows.push_back(MakeReportRow(corpus[i], spec, out));
  }
  if (!f.shared_out.empty()) {
    FIDSHARE_RETURN_IF_ERROR(Emit(shared_rows, f.shared_out));
  }
  return Emit(report_rows, f.report_out);
}

// ----------------------------------------------------------------- sweep

struct SweepFlags {
  std::optional<uint64_t> seed;
  std::optional<int> n_trajectories;
  std::string truth;
  std::string report_out;
  std::string plot_dir;
  int threads = 1;
};

absl::Status RunSweepCommand(const CommonFlags& common, const SweepFlags& f) {
  std::vector<std::string> extra;
  if (f.n_trajectories) {
    extra.push_back(absl::StrCat("scenario.n_trajectories=", *f.n_trajectories));
  }
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, extra));
  if (!f.truth.empty()) cfg.scenario.truth_csv = f.truth;
  if (f.threads < 1) return absl::InvalidArgumentError("--threads must be >= 1");
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<Trajectory> corpus,
                            BuildCorpus(cfg, *f.seed));
  FIDSHARE_ASSIGN_OR_RETURN(SweepResult result,
                            RunSweep(corpus, cfg, *f.seed, f.threads));
  FIDSHARE_RETURN_IF_ERROR(Emit(result.reports, f.report_out));
  if (!f.plot_dir.empty()) {
    FIDSHARE_RETURN_IF_ERROR(EmitPlotData(result.cells, f.plot_dir));
  }
  return absl::OkStatus();
}

// --------------------------------------------------------------- metrics

struct MetricsFlags {
  std::string shared;
  std::string truth;
  std::string predictions;
  std::optional<double> ptx;
  uint64_t seed = 0;
  std::string report_out;
};

// Recovers eta from an "eta_<value>" label.
std::optional<double> EtaFromLabel(const std::string& label) {
  double eta = 0.0;
  if (absl::StartsWith(label, "eta_") &&
      absl::SimpleAtod(label.substr(4), &eta)) {
    return eta;
  }
  return std::nullopt;
}

absl::Status RunMetrics(const CommonFlags& common, const MetricsFlags& f) {
  std::vector<std::string> extra;
  if (f.ptx) extra.push_back(absl::StrCat("sensing.ptx_dbm=", *f.ptx));
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, extra));

  FIDSHARE_ASSIGN_OR_RETURN(std::vector<Trajectory> truth, ReadTruth(f.truth));
  std::map<std::string, const Trajectory*> truth_by_id;
  for (const Trajectory& t : truth) truth_by_id[t.id] = &t;

  FIDSHARE_ASSIGN_OR_RETURN(std::string shared_text, ReadFile(f.shared));
  std::istringstream shared_in(shared_text);
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<SharedRow> shared_rows,
                            ReadSharedCsv(shared_in));

  // Groups in order of first appearance.
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<SharedSample>>
      groups;
  std::map<std::string, int> schemes_per_traj;
  for (const SharedRow& r : shared_rows) {
    auto key = std::make_pair(r.traj_id, r.scheme);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      ++schemes_per_traj[r.traj_id];
    }
    it->second.push_back({r.t, {r.x, r.y}, r.dsigma, r.fid});
  }

  std::map<std::string, std::vector<PredictedPoint>> preds_by_id;
  if (!f.predictions.empty()) {
    FIDSHARE_ASSIGN_OR_RETURN(std::string text, ReadFile(f.predictions));
    std::istringstream in(text);
    FIDSHARE_ASSIGN_OR_RETURN(std::vector<PredictionRow> rows,
                              ReadPredictionCsv(in));
    for (const PredictionRow& r : rows) {
      preds_by_id[r.traj_id].push_back({r.t, {r.x_pred, r.y_pred}});
    }
  }

  std::vector<ReportRow> report;
  for (const auto& key : order) {
    const auto& [traj_id, scheme] = key;
    auto truth_it = truth_by_id.find(traj_id);
    if (truth_it == truth_by_id.end()) {
      return absl::NotFoundError(
          absl::StrCat("trajectory '", traj_id, "' is not in the truth CSV"));
    }
    const std::vector<PredictedPoint>* preds = nullptr;
    if (!f.predictions.empty()) {
      if (schemes_per_traj[traj_id] > 1) {
        return absl::FailedPreconditionError(absl::StrCat(
            "trajectory '", traj_id,
            "' has several schemes; external predictions are ambiguous"));
      }
      auto p = preds_by_id.find(traj_id);
      if (p == preds_by_id.end()) {
        return absl::NotFoundError(absl::StrCat(
            "trajectory '", traj_id, "' has no predictions"));
      }
      preds = &p->second;
    }
    FIDSHARE_ASSIGN_OR_RETURN(
        RunOutput out,
        EvaluateShared(groups[key], *truth_it->second, cfg, preds));
    ReportRow row;
    row.run_id = absl::StrCat(traj_id, "@", cfg.sensing.ptx_dbm, "dBm");
    row.scheme = scheme;
    row.eta = EtaFromLabel(scheme);
    row.ptx_dbm = cfg.sensing.ptx_dbm;
    row.seed = f.seed;
    row.plr = out.leakage.plr;
    row.avg_leak_s = out.leakage.avg_leak_s;
    row.max_leak_s = out.leakage.max_leak_s;
    row.pos_err_1s_m = out.utility.pos_err_1s;
    row.vel_err_mps = out.utility.vel_err;
    row.heading_err_deg = out.utility.heading_err;
    report.push_back(std::move(row));
  }
  return Emit(report, f.report_out);
}

// ---------------------------------------------------------------- config

absl::Status RunShowConfig(const CommonFlags& common,
                           const std::string& output) {
  FIDSHARE_ASSIGN_OR_RETURN(SimConfig cfg, ResolveConfig(common, {}));
  const std::string text = ConfigToJson(cfg);
  if (output.empty() || output == "-") {
    std::cout << text;
    return absl::OkStatus();
  }
  return WriteFile(output, text);
}

// -------------------------------------------------------------- plotdata

struct PlotFlags {
  std::string report;
  std::string out_dir;
};

absl::Status RunPlotData(const PlotFlags& f) {
  FIDSHARE_ASSIGN_OR_RETURN(std::string text, ReadFile(f.report));
  std::istringstream in(text);
  FIDSHARE_ASSIGN_OR_RETURN(std::vector<ReportRow> rows, ReadReportCsv(in));
  return EmitPlotData(AggregateReports(rows), f.out_dir);
}

int Main(int argc, char** argv) {
  CLI::App app{"Sensing-privacy simulation harness"};
  app.require_subcommand(1);
  CommonFlags common;
  app.add_option("--config", common.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", common.overrides,
                 "Config override section.key=value (repeatable)");

  IngestFlags ingest;
  CLI::App* c_ingest =
      app.add_subcommand("ingest", "OpenTraj text -> truth CSV");
  c_ingest->add_option("--input", ingest.input, "OpenTraj file")->required();
  c_ingest->add_option("--output", ingest.output, "Truth CSV ('-' = stdout)")
      ->required();
  c_ingest->add_option("--frame-rate", ingest.frame_rate, "Frames per second");
  c_ingest->add_flag("!--no-normalize", ingest.normalize,
                     "Keep the original coordinates");

  SynthFlags synth;
  CLI::App* c_synth =
      app.add_subcommand("synth", "Generate the synthetic fallback corpus");
  c_synth->add_option("--seed", synth.seed, "Master seed");
  c_synth->add_option("--count", synth.count, "Number of trajectories");
  c_synth->add_option("--output", synth.output, "Truth CSV ('-' = stdout)")
      ->required();

  SimulateFlags sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "Run one scheme");
  c_sim->add_option("--scheme", sim.scheme, "none|fixed_sigma|fid_constrained")
      ->required();
  c_sim->add_option("--eta", sim.eta, "FID threshold (fid_constrained)");
  c_sim->add_option("--sigma", sim.sigma, "Noise std in m (fixed_sigma)");
  c_sim->add_option("--ptx", sim.ptx, "Transmit power in dBm");
  c_sim->add_option("--seed", sim.seed, "Master seed");
  c_sim->add_option("--n-trajectories", sim.n_trajectories,
                    "Trajectories to run");
  c_sim->add_option("--truth", sim.truth, "Truth CSV (default: synthetic)");
  c_sim->add_option("--shared-out", sim.shared_out, "Shared CSV output");
  c_sim->add_option("--report-out", sim.report_out,
                    "Report CSV output (default stdout)");

  SweepFlags sweep;
  CLI::App* c_sweep = app.add_subcommand("sweep", "Full power x scheme grid");
  c_sweep->add_option("--seed", sweep.seed, "Master seed")->required();
  c_sweep->add_option("--n-trajectories", sweep.n_trajectories,
                      "Trajectories to run");
  c_sweep->add_option("--truth", sweep.truth, "Truth CSV (default: synthetic)");
  c_sweep->add_option("--report-out", sweep.report_out,
                      "Report CSV output (default stdout)");
  c_sweep->add_option("--plot-dir", sweep.plot_dir,
                      "Also write per-panel plot CSVs here");
  c_sweep->add_option("--threads", sweep.threads, "Worker threads");

  MetricsFlags metrics;
  CLI::App* c_metrics =
      app.add_subcommand("metrics", "Attack and score an existing shared CSV");
  c_metrics->add_option("--shared", metrics.shared, "Shared CSV")->required();
  c_metrics->add_option("--truth", metrics.truth, "Truth CSV")->required();
  c_metrics->add_option("--predictions", metrics.predictions,
                        "Prediction CSV (default: constant velocity)");
  c_metrics->add_option("--ptx", metrics.ptx, "Power recorded in the report");
  c_metrics->add_option("--seed", metrics.seed, "Seed recorded in the report");
  c_metrics->add_option("--report-out", metrics.report_out,
                        "Report CSV output (default stdout)");

  PlotFlags plot;
  CLI::App* c_plot =
      app.add_subcommand("plotdata", "Report CSV -> per-panel plot CSVs");
  c_plot->add_option("--report", plot.report, "Report CSV")->required();
  c_plot->add_option("--out-dir", plot.out_dir, "Output directory")
      ->required();

  std::string config_out;
  CLI::App* c_config =
      app.add_subcommand("config", "Print the effective config as JSON");
  c_config->add_option("--output", config_out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*c_ingest) return Report(RunIngest(common, ingest));
  if (*c_synth) return Report(RunSynth(common, synth));
  if (*c_sim) return Report(RunSimulate(common, sim));
  if (*c_sweep) return Report(RunSweepCommand(common, sweep));
  if (*c_metrics) return Report(RunMetrics(common, metrics));
  if (*c_plot) return Report(RunPlotData(plot));
  if (*c_config) return Report(RunShowConfig(common, config_out));
  return kExitConfig;
}

}  // namespace
}  // namespace fidshare

int main(int argc, char** argv) { return fidshare::Main(argc, argv); }
