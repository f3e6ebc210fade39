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

// Acceptance checks A1-A8. Prints one PASS/FAIL line per criterion and exits
// non-zero if any of them fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "fidshare/adversary_metrics.h"
#include "fidshare/config.h"
#include "fidshare/csv.h"
#include "fidshare/fid_accounting.h"
#include "fidshare/harness.h"
#include "fidshare/privacy_mechanism.h"
#include "fidshare/rng.h"
#include "fidshare/sensing_model.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {
namespace {

constexpr uint64_t kSweepSeed = 1;

int g_failures = 0;

void Report(const char* id, bool pass, const std::string& detail) {
  std::printf("[%s] %s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double RelErr(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

// Noise std written out directly from the mechanism definition.
double OracleDeltaSigma(double j, double eta, double alpha, double beta_sat) {
  if (!(j > eta)) return 0.0;
  return alpha * (beta_sat - std::exp(-(j / eta - 1.0)));
}

void CheckA1() {
  const MechanismParams p{50.0, 0.5, 1.5};
  const double eta = p.eta;
  const double js[] = {0.0,          eta / 2,  eta, eta * (1 + 1e-12),
                       2 * eta,      10 * eta, 1e6 * eta};
  const double expected[] = {0.0, 0.0, 0.0, 0.25, 0.5661, 0.75, 0.75};
  const double expected_tol[] = {0, 0, 0, 1e-9, 1e-4, 1e-4, 1e-12};
  double worst = 0.0;
  bool table_ok = true;
  for (size_t i = 0; i < std::size(js); ++i) {
    const double got = DeltaSigma(js[i], p);
    worst = std::max(worst, RelErr(got, OracleDeltaSigma(js[i], 50, 0.5, 1.5)));
    if (std::abs(got - expected[i]) > expected_tol[i]) table_ok = false;
  }
  Report("A1", worst <= 1e-12 && table_ok,
         absl::StrFormat("max rel err vs oracle %.3g (tol 1e-12), table %s",
                         worst, table_ok ? "ok" : "mismatch"));
}

void CheckA2() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> duration(1.0, 100.0);
  std::uniform_real_distribution<double> log_info(-6.0, 8.0);
  SensingConfig cfg;
  double worst_integral = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng sched_rng(1000 + trial);
    const std::vector<ScheduledUpdate> sched =
        ScheduleUpdates(duration(rng), cfg, sched_rng);
    std::vector<double> t, info;
    for (const ScheduledUpdate& s : sched) {
      t.push_back(s.t);
      info.push_back(std::pow(10.0, log_info(rng)));
    }
    const double t0 = t.front() - 0.25;
    absl::StatusOr<FidSeries> fid = FidPiecewise(t, info, t0);
    if (!fid.ok()) {
      Report("A2", false, std::string(fid.status().message()));
      return;
    }
    double lhs = 0.0, rhs = 0.0, prev = t0;
    for (size_t k = 0; k < t.size(); ++k) {
      lhs += fid->AtSample(k) * (t[k] - prev);
      rhs += info[k];
      prev = t[k];
    }
    worst_integral = std::max(worst_integral, RelErr(lhs, rhs));
  }

  // CRB * I over sensed trajectories at every power of the grid.
  double worst_crb = 0.0;
  int n_updates = 0;
  const std::vector<Trajectory> corpus =
      SynthCorpus(3, 20, 10, 100, {0.5, 2.0}, {0, 0, 60, 60});
  for (double ptx = 15; ptx <= 50; ptx += 5) {
    cfg.ptx_dbm = ptx;
    for (const Trajectory& traj : corpus) {
      Rng r(static_cast<uint64_t>(ptx) * 7919 + n_updates);
      absl::StatusOr<std::vector<SensingUpdate>> ups =
          SenseTrajectory(traj, cfg, r);
      if (!ups.ok()) {
        Report("A2", false, std::string(ups.status().message()));
        return;
      }
      for (const SensingUpdate& u : *ups) {
        worst_crb = std::max(worst_crb, std::abs(u.Crb() * u.fisher_info - 1));
        ++n_updates;
      }
    }
  }
  // Reciprocal-then-multiply and sum-of-products are each a few roundings
  // away from the exact identity.
  const double eps = std::numeric_limits<double>::epsilon();
  Report("A2", worst_integral <= 1e-13 && worst_crb <= eps,
         absl::StrFormat("1000 schedules: max rel |sum J dt - sum I| %.3g "
                         "(tol 1e-13); %d updates: max |CRB*I - 1| %.3g "
                         "(tol %.3g)",
                         worst_integral, n_updates, worst_crb, eps));
}

void CheckA3() {
  constexpr int kN = 100000;
  std::vector<SensingUpdate> ups(kN);
  for (int k = 0; k < kN; ++k) {
    ups[k].t = 0.25 * (k + 1);
    ups[k].fisher_info = 25.0;  // J = 100
  }
  absl::StatusOr<FidSeries> fid = FidPiecewise(ups, 0.0);
  const MechanismParams p;
  Rng rng(MakeRng(3, {static_cast<uint64_t>(Stream::kMechanism)}));
  const std::vector<SharedSample> out = Sanitize(ups, *fid, p, rng);
  const double target = DeltaSigma(100.0, p);
  double s[2] = {0, 0}, ss[2] = {0, 0};
  for (const SharedSample& o : out) {
    s[0] += o.xy.x;
    s[1] += o.xy.y;
    ss[0] += o.xy.x * o.xy.x;
    ss[1] += o.xy.y * o.xy.y;
  }
  bool pass = true;
  std::string detail;
  for (int a = 0; a < 2; ++a) {
    const double mean = s[a] / kN;
    const double sd = std::sqrt(ss[a] / kN - mean * mean);
    const double bound = 3.0 * target / std::sqrt(double(kN));
    pass = pass && RelErr(sd, target) <= 0.02 && std::abs(mean) <= bound;
    if (a == 1) detail += "; ";
    detail += absl::StrFormat("%s std/target %.4f mean %.2e (bound %.2e)",
                              a == 0 ? "x" : "y", sd / target, mean, bound);
  }
  Report("A3", pass, detail);
}

void CheckSweep() {
  const SimConfig cfg;
  if (absl::Status st = ValidateConfig(cfg); !st.ok()) {
    Report("A4", false, std::string(st.message()));
    return;
  }
  const std::vector<Trajectory> corpus = *BuildCorpus(cfg, kSweepSeed);
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<SweepResult> res = RunSweep(corpus, cfg, kSweepSeed, 1);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (!res.ok()) {
    for (const char* id : {"A4", "A5", "A6"})
      Report(id, false, std::string(res.status().message()));
    return;
  }
  auto cell = [&](double ptx, const char* scheme) -> const SweepCell& {
    const SweepCell* c = res->Find(ptx, scheme);
    if (c == nullptr) {
      std::fprintf(stderr, "missing cell %g %s\n", ptx, scheme);
      std::exit(1);
    }
    return *c;
  };
  const std::vector<double>& grid = cfg.scenario.ptx_grid_dbm;

  // A4: hard bounds at every power.
  {
    bool pass = true;
    double worst[4] = {0, 0, 0, 0};
    for (double ptx : grid) {
      const SweepCell& e50 = cell(ptx, "eta_50");
      const SweepCell& e250 = cell(ptx, "eta_250");
      worst[0] = std::max(worst[0], e50.plr.Mean());
      worst[1] = std::max(worst[1], e50.max_leak_s.Mean());
      worst[2] = std::max(worst[2], e250.plr.Mean());
      worst[3] = std::max(worst[3], e250.max_leak_s.Mean());
    }
    pass = worst[0] <= 0.20 && worst[1] <= 2.0 && worst[2] <= 0.25 &&
           worst[3] <= 2.5;
    Report("A4", pass,
           absl::StrFormat("%zu trajectories, seed %d, %.1f s single-threaded; "
                           "eta=50 max PLR %.3f (<=0.20) max-leak %.2f s "
                           "(<=2.0); eta=250 max PLR %.3f (<=0.25) max-leak "
                           "%.2f s (<=2.5)",
                           corpus.size(), static_cast<int>(kSweepSeed), secs,
                           worst[0], worst[1], worst[2], worst[3]));
  }

  // A5: orderings.
  {
    bool pass = true;
    double min_margin = std::numeric_limits<double>::infinity();
    for (double ptx : grid) {
      if (ptx < 30) continue;
      const double s01 = cell(ptx, "sigma_0.1").plr.Mean();
      const double best = std::max(cell(ptx, "eta_50").plr.Mean(),
                                   cell(ptx, "eta_250").plr.Mean());
      min_margin = std::min(min_margin, s01 - best);
      if (!(s01 > best)) pass = false;
    }
    const double s07 = cell(50, "sigma_0.7").plr.Mean();
    const double e50 = cell(50, "eta_50").plr.Mean();
    if (!(s07 > e50)) pass = false;
    Report("A5", pass,
           absl::StrFormat("sigma=0.1 PLR minus best eta PLR, min over "
                           ">=30 dBm: %.3f (>0); at 50 dBm sigma=0.7 PLR "
                           "%.3f vs eta=50 %.3f",
                           min_margin, s07, e50));
  }

  // A6: utility.
  {
    double worst_dev = 0.0;
    for (double ptx : {15.0, 20.0, 25.0}) {
      const double r = cell(ptx, "eta_250").pos_err_1s_m.Mean() /
                       cell(ptx, "none").pos_err_1s_m.Mean();
      worst_dev = std::max(worst_dev, std::abs(r - 1.0));
    }
    const double ratio35 = cell(35, "sigma_0.7").pos_err_1s_m.Mean() /
                           cell(35, "none").pos_err_1s_m.Mean();
    const bool a = worst_dev <= 0.10;
    const bool b = ratio35 > 1.10;
    Report("A6", a && b,
           absl::StrFormat("eta=250 vs none pos_err_1s at 15-25 dBm: max "
                           "|ratio-1| %.4f (<=0.10) [%s]; sigma=0.7 / none "
                           "at 35 dBm: %.4f (>1.10) [%s]",
                           worst_dev, a ? "ok" : "fail", ratio35,
                           b ? "ok" : "fail"));
  }
}

// Scans every (i, j) pair and keeps the maximal all-leaked ranges.
LeakageReport BruteForceLeakage(const std::vector<double>& e,
                                const std::vector<double>& t, double eps) {
  LeakageReport r;
  const int n = static_cast<int>(e.size());
  if (n == 0) return r;
  int leaked = 0;
  for (int i = 0; i < n; ++i) leaked += e[i] <= eps ? 1 : 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      bool all = true;
      for (int k = i; k <= j; ++k) all = all && e[k] <= eps;
      const bool left_closed = i == 0 || !(e[i - 1] <= eps);
      const bool right_closed = j == n - 1 || !(e[j + 1] <= eps);
      if (all && left_closed && right_closed)
        r.segments.push_back({t[i], t[j], j - i + 1});
    }
  }
  r.plr = static_cast<double>(leaked) / n;
  double sum = 0.0;
  for (const LeakageSegment& s : r.segments) {
    sum += s.t_end - s.t_start;
    r.max_leak_s = std::max(r.max_leak_s, s.t_end - s.t_start);
  }
  if (!r.segments.empty()) r.avg_leak_s = sum / r.segments.size();
  return r;
}

void CheckA7() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(0, 20);
  std::uniform_real_distribution<double> gap(0.2, 0.5);
  std::uniform_real_distribution<double> err(0.0, 0.6);
  int mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = len(rng);
    std::vector<double> e(n), t(n);
    double now = 0.0;
    for (int k = 0; k < n; ++k) {
      now += gap(rng);
      t[k] = now;
      e[k] = err(rng);
      if (rng() % 4 == 0) e[k] = 0.3;  // the boundary counts as leaked
    }
    const LeakageReport want = BruteForceLeakage(e, t, 0.3);
    const LeakageReport got = BuildLeakageReport(e, t, 0.3);
    if (got.segments != want.segments || got.plr != want.plr ||
        got.avg_leak_s != want.avg_leak_s ||
        got.max_leak_s != want.max_leak_s)
      ++mismatches;
  }
  Report("A7", mismatches == 0,
         absl::StrFormat("10000 patterns of length <= 20, %d mismatches",
                         mismatches));
}

void CheckA8() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / absl::StrFormat("fidshare_a8_%d", getpid());
  fs::create_directories(dir);
  std::string files[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / absl::StrFormat("report_%d.csv", i);
    const std::string cmd = absl::StrFormat(
        "%s sweep --seed %d --threads %d --report-out %s >/dev/null 2>&1",
        FIDSHARE_CLI_PATH, static_cast<int>(kSweepSeed), i == 0 ? 1 : 4,
        out.string());
    const int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
      Report("A8", false, "sweep exited with status " + std::to_string(rc));
      fs::remove_all(dir);
      return;
    }
    absl::StatusOr<std::string> body = ReadFile(out.string());
    files[i] = body.ok() ? *body : std::string();
  }
  fs::remove_all(dir);
  const bool pass = !files[0].empty() && files[0] == files[1];
  Report("A8", pass,
         absl::StrFormat("two sweeps (1 and 4 threads), %zu bytes, %s",
                         files[0].size(),
                         pass ? "byte-identical" : "differ"));
}

}  // namespace
}  // namespace fidshare

int main() {
  fidshare::CheckA1();
  fidshare::CheckA2();
  fidshare::CheckA3();
  fidshare::CheckSweep();
  fidshare::CheckA7();
  fidshare::CheckA8();
  std::printf("%d criteria failed\n", fidshare::g_failures);
  return fidshare::g_failures == 0 ? 0 : 1;
}
