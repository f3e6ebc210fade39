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

#include "fidshare/trajectory_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <system_error>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "fidshare/rng.h"
#include "fidshare/status_macros.h"
#include "fidshare/text_util.h"

namespace fidshare {
namespace {

constexpr double kSynthStepS = 0.1;

bool ParseNumber(std::string_view field, double& out) {
  field = StripWhitespace(field);
  if (field.empty()) return false;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size() &&
         std::isfinite(out);
}

std::vector<std::string_view> SplitFields(std::string_view line, char delim) {
  if (delim == '\0') {
    return SplitOnAny(line, " \t");
  }
  return SplitOn(line, delim);
}

}  // namespace

Vec2 Trajectory::PositionAt(double t) const {
  if (points.empty()) return {};
  if (t <= points.front().t) return points.front().xy();
  if (t >= points.back().t) return points.back().xy();
  auto it = std::upper_bound(
      points.begin(), points.end(), t,
      [](double v, const TrajPoint& p) { return v < p.t; });
  const TrajPoint& b = *it;
  const TrajPoint& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
}

absl::Status ValidateTrajectory(const Trajectory& traj) {
  if (traj.points.size() < 2) {
    return absl::FailedPreconditionError(
        absl::StrCat("trajectory '", traj.id, "' has fewer than 2 points"));
  }
  for (size_t i = 0; i < traj.points.size(); ++i) {
    const TrajPoint& p = traj.points[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "trajectory '", traj.id, "' point ", i, " is not finite"));
    }
    if (i > 0 && !(p.t > traj.points[i - 1].t)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "trajectory '", traj.id, "' timestamps not strictly increasing at "
          "point ", i));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<IngestResult> ParseOpenTraj(std::string_view text,
                                           const OpenTrajFormat& format) {
  if (!(format.frame_rate > 0.0)) {
    return absl::InvalidArgumentError("frame_rate must be positive");
  }
  const int needed = std::max({format.frame_column, format.agent_column,
                               format.x_column, format.y_column}) + 1;

  std::vector<Trajectory> by_agent;
  std::unordered_map<std::string, size_t> index;
  int line_no = 0;
  for (std::string_view raw : SplitOn(text, '\n')) {
    ++line_no;
    std::string_view line = StripWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields = SplitFields(line, format.delimiter);
    if (static_cast<int>(fields.size()) < needed) {
      return absl::DataLossError(absl::StrCat("line ", line_no, ": expected at least ",
                                              needed, " fields, got ",
                                              fields.size()));
    }
    double frame = 0.0, x = 0.0, y = 0.0;
    if (!ParseNumber(fields[format.frame_column], frame) ||
        !ParseNumber(fields[format.x_column], x) ||
        !ParseNumber(fields[format.y_column], y)) {
      return absl::DataLossError(
          absl::StrCat("line ", line_no, ": non-numeric frame or coordinate"));
    }
    std::string agent(StripWhitespace(fields[format.agent_column]));
    // Agent ids are often written as floats ("1.0000000e+00").
    double agent_num = 0.0;
    if (ParseNumber(agent, agent_num) && agent_num == std::floor(agent_num) &&
        std::abs(agent_num) < 1e15) {
      agent = absl::StrCat(static_cast<int64_t>(agent_num));
    }
    auto [it, inserted] = index.try_emplace(agent, by_agent.size());
    if (inserted) by_agent.push_back(Trajectory{agent, {}});
    by_agent[it->second].points.push_back({frame / format.frame_rate, x, y});
  }

  IngestResult result;
  for (Trajectory& traj : by_agent) {
    std::stable_sort(traj.points.begin(), traj.points.end(),
                     [](const TrajPoint& a, const TrajPoint& b) {
                       return a.t < b.t;
                     });
    for (size_t i = 1; i < traj.points.size(); ++i) {
      if (traj.points[i].t == traj.points[i - 1].t) {
        return absl::DataLossError(absl::StrCat(
            "agent '", traj.id, "' has two rows for t = ", traj.points[i].t));
      }
    }
    const double d = traj.Duration();
    if (traj.points.size() < 2 || d < format.min_duration_s ||
        d > format.max_duration_s) {
      ++result.dropped_count;
      continue;
    }
    result.trajectories.push_back(std::move(traj));
  }
  return result;
}

BoundingBox DataBounds(const std::vector<Trajectory>& trajectories) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  BoundingBox box{kInf, kInf, -kInf, -kInf};
  for (const Trajectory& traj : trajectories) {
    for (const TrajPoint& p : traj.points) {
      box.x_min = std::min(box.x_min, p.x);
      box.y_min = std::min(box.y_min, p.y);
      box.x_max = std::max(box.x_max, p.x);
      box.y_max = std::max(box.y_max, p.y);
    }
  }
  return box;
}

absl::StatusOr<std::vector<Trajectory>> NormalizeScene(
    const std::vector<Trajectory>& trajectories, const BoundingBox& target) {
  if (!(target.Width() > 0.0) || !(target.Height() > 0.0)) {
    return absl::InvalidArgumentError("target bounding box is degenerate");
  }
  if (trajectories.empty()) return trajectories;
  const BoundingBox src = DataBounds(trajectories);
  if (!(src.Width() > 0.0) || !(src.Height() > 0.0)) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "input bounding box is degenerate (%g x %g m)", src.Width(),
        src.Height()));
  }
  const double scale =
      std::min(target.Width() / src.Width(), target.Height() / src.Height());
  const double off_x =
      target.x_min + 0.5 * (target.Width() - scale * src.Width());
  const double off_y =
      target.y_min + 0.5 * (target.Height() - scale * src.Height());

  std::vector<Trajectory> out = trajectories;
  for (Trajectory& traj : out) {
    for (TrajPoint& p : traj.points) {
      p.x = std::clamp(off_x + scale * (p.x - src.x_min), target.x_min,
                       target.x_max);
      p.y = std::clamp(off_y + scale * (p.y - src.y_min), target.y_min,
                       target.y_max);
    }
  }
  return out;
}

Trajectory SynthTrajectory(uint64_t seed, double duration_s, SpeedRange speed,
                           const BoundingBox& scene) {
  Rng rng(seed);
  std::uniform_real_distribution<double> ux(scene.x_min, scene.x_max);
  std::uniform_real_distribution<double> uy(scene.y_min, scene.y_max);
  std::uniform_real_distribution<double> uv(speed.min_mps, speed.max_mps);

  // Legs as (start time, start point, velocity); walked until duration_s.
  struct Leg {
    double t0;
    Vec2 p0;
    Vec2 v;
    double t1;
  };
  std::vector<Leg> legs;
  Vec2 pos{ux(rng), uy(rng)};
  double t = 0.0;
  while (t < duration_s) {
    Vec2 next{ux(rng), uy(rng)};
    const double len = Distance(pos, next);
    const double v = uv(rng);
    if (len < 1e-6) continue;
    const double dt = len / v;
    legs.push_back({t, pos, (next - pos) * (1.0 / dt), t + dt});
    t += dt;
    pos = next;
  }

  Trajectory traj;
  traj.id = absl::StrCat("synth-", seed);
  const int n = static_cast<int>(std::llround(duration_s / kSynthStepS));
  traj.points.reserve(n + 1);
  size_t leg = 0;
  for (int i = 0; i <= n; ++i) {
    const double ti = i * kSynthStepS;
    while (leg + 1 < legs.size() && ti > legs[leg].t1) ++leg;
    const Leg& l = legs[leg];
    Vec2 p = l.p0 + l.v * (std::min(ti, l.t1) - l.t0);
    // Rounding at a leg end can step a hair outside the box.
    p.x = std::clamp(p.x, scene.x_min, scene.x_max);
    p.y = std::clamp(p.y, scene.y_min, scene.y_max);
    traj.points.push_back({ti, p.x, p.y});
  }
  return traj;
}

std::vector<Trajectory> SynthCorpus(uint64_t seed, int count,
                                    double min_duration_s,
                                    double max_duration_s, SpeedRange speed,
                                    const BoundingBox& scene) {
  std::vector<Trajectory> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = MakeRng(seed, {static_cast<uint64_t>(i),
                             static_cast<uint64_t>(Stream::kTrajectory)});
    std::uniform_real_distribution<double> ud(min_duration_s, max_duration_s);
    // Whole multiples of the 10 Hz step keep the last point at duration_s.
    const double duration = std::round(ud(rng) / kSynthStepS) * kSynthStepS;
    Trajectory traj = SynthTrajectory(rng(), duration, speed, scene);
    traj.id = absl::StrFormat("synth-%04d", i);
    out.push_back(std::move(traj));
  }
  return out;
}

}  // namespace fidshare
