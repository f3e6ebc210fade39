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

#ifndef FIDSHARE_CSV_H_
#define FIDSHARE_CSV_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fidshare/trajectory_io.h"

namespace fidshare {

// CSV data products. Comma-delimited, one header row, '.' decimals, LF line
// endings. Numbers are written with 17 significant digits so a round trip is
// bit-exact.
enum class Schema { kTruth, kShared, kReport, kPrediction };

// Shortest representation that parses back to the same double.
std::string FormatCsvDouble(double v);

absl::StatusOr<Schema> SchemaFromName(std::string_view name);
std::string_view SchemaName(Schema schema);
std::string_view SchemaHeader(Schema schema);

struct TruthRow {
  std::string traj_id;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const TruthRow&, const TruthRow&) = default;
};

struct SharedRow {
  std::string traj_id;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double fid = 0.0;
  double dsigma = 0.0;
  std::string scheme;
  friend bool operator==(const SharedRow&, const SharedRow&) = default;
};

struct ReportRow {
  std::string run_id;
  std::string scheme;
  std::optional<double> eta;  // empty field unless the scheme is FID-based
  double ptx_dbm = 0.0;
  uint64_t seed = 0;
  double plr = 0.0;
  double avg_leak_s = 0.0;
  double max_leak_s = 0.0;
  double pos_err_1s_m = 0.0;
  double vel_err_mps = 0.0;
  double heading_err_deg = 0.0;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct PredictionRow {
  std::string traj_id;
  double t = 0.0;
  double x_pred = 0.0;
  double y_pred = 0.0;
  friend bool operator==(const PredictionRow&, const PredictionRow&) = default;
};

absl::Status WriteCsv(const std::vector<TruthRow>& rows, std::ostream& sink);
absl::Status WriteCsv(const std::vector<SharedRow>& rows, std::ostream& sink);
absl::Status WriteCsv(const std::vector<ReportRow>& rows, std::ostream& sink);
absl::Status WriteCsv(const std::vector<PredictionRow>& rows,
                      std::ostream& sink);

// Errors name the 1-based data row and the column.
absl::StatusOr<std::vector<TruthRow>> ReadTruthCsv(std::istream& source);
absl::StatusOr<std::vector<SharedRow>> ReadSharedCsv(std::istream& source);
absl::StatusOr<std::vector<ReportRow>> ReadReportCsv(std::istream& source);
absl::StatusOr<std::vector<PredictionRow>> ReadPredictionCsv(
    std::istream& source);

// Truth rows <-> trajectories. Rows are grouped by traj_id in order of first
// appearance.
std::vector<TruthRow> ToTruthRows(const std::vector<Trajectory>& trajectories);
absl::StatusOr<std::vector<Trajectory>> FromTruthRows(
    const std::vector<TruthRow>& rows);

// File helpers; a missing file is NotFound.
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace fidshare

#endif  // FIDSHARE_CSV_H_
