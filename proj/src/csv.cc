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

#include "fidshare/csv.h"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unordered_map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fidshare/status_macros.h"
#include "fidshare/text_util.h"

namespace fidshare {
namespace {

constexpr std::string_view kTruthHeader = "traj_id,t,x,y";
constexpr std::string_view kSharedHeader = "traj_id,t,x,y,fid,dsigma,scheme";
constexpr std::string_view kReportHeader =
    "run_id,scheme,eta,ptx_dbm,seed,plr,avg_leak_s,max_leak_s,pos_err_1s_m,"
    "vel_err_mps,heading_err_deg";
constexpr std::string_view kPredictionHeader = "traj_id,t,x_pred,y_pred";


absl::Status CheckText(std::string_view field, std::string_view column) {
  if (field.find_first_of(",\n\r") != std::string_view::npos) {
    return absl::InvalidArgumentError(absl::StrCat(
        "column '", std::string(column), "' value '", std::string(field),
        "' contains a delimiter or line break"));
  }
  return absl::OkStatus();
}

// Splits the stream into header + data lines and emits per-field errors that
// carry the row number and column name.
class CsvCursor {
 public:
  CsvCursor(std::istream& in, std::string_view header) : in_(in) {
    for (std::string_view c : SplitOn(header, ',')) columns_.emplace_back(c);
    expected_header_ = std::string(header);
  }

  absl::Status ReadHeader() {
    std::string line;
    if (!std::getline(in_, line)) {
      return absl::DataLossError(
          absl::StrCat("missing header, expected '", expected_header_, "'"));
    }
    StripCr(line);
    if (line != expected_header_) {
      return absl::DataLossError(absl::StrCat("header mismatch: got '", line,
                                              "', expected '",
                                              expected_header_, "'"));
    }
    return absl::OkStatus();
  }

  // False at end of input. Blank lines are skipped.
  absl::StatusOr<bool> Next() {
    std::string line;
    while (std::getline(in_, line)) {
      StripCr(line);
      if (line.empty()) continue;
      ++row_;
      line_ = std::move(line);
      fields_ = SplitOn(line_, ',');
      if (fields_.size() != columns_.size()) {
        return absl::DataLossError(absl::StrCat(
            "row ", row_, ": expected ", columns_.size(), " fields, got ",
            fields_.size()));
      }
      return true;
    }
    return false;
  }

  std::string Text(size_t col) const { return std::string(fields_[col]); }

  absl::StatusOr<double> Double(size_t col) const {
    std::string_view f = fields_[col];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
      return FieldError(col, "not a number");
    }
    return v;
  }

  absl::StatusOr<std::optional<double>> OptionalDouble(size_t col) const {
    if (fields_[col].empty()) return std::optional<double>();
    absl::StatusOr<double> v = Double(col);
    if (!v.ok()) return v.status();
    return std::optional<double>(*v);
  }

  absl::StatusOr<uint64_t> Unsigned(size_t col) const {
    std::string_view f = fields_[col];
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
      return FieldError(col, "not an unsigned integer");
    }
    return v;
  }

 private:
  static void StripCr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }

  absl::Status FieldError(size_t col, std::string_view what) const {
    return absl::DataLossError(absl::StrCat("row ", row_, ", column '",
                                            columns_[col], "': '",
                                            std::string(fields_[col]), "' is ", std::string(what)));
  }

  std::istream& in_;
  std::vector<std::string> columns_;
  std::string expected_header_;
  std::string line_;
  std::vector<std::string_view> fields_;
  int row_ = 0;
};

absl::Status Finish(std::ostream& sink) {
  if (!sink) return absl::DataLossError("write failed");
  return absl::OkStatus();
}

}  // namespace

std::string FormatCsvDouble(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

absl::StatusOr<Schema> SchemaFromName(std::string_view name) {
  if (name == "truth") return Schema::kTruth;
  if (name == "shared") return Schema::kShared;
  if (name == "report") return Schema::kReport;
  if (name == "prediction") return Schema::kPrediction;
  return absl::InvalidArgumentError(absl::StrCat("unknown schema '", std::string(name),
                                                 "'"));
}

std::string_view SchemaName(Schema schema) {
  switch (schema) {
    case Schema::kTruth:
      return "truth";
    case Schema::kShared:
      return "shared";
    case Schema::kReport:
      return "report";
    case Schema::kPrediction:
      return "prediction";
  }
  return "";
}

std::string_view SchemaHeader(Schema schema) {
  switch (schema) {
    case Schema::kTruth:
      return kTruthHeader;
    case Schema::kShared:
      return kSharedHeader;
    case Schema::kReport:
      return kReportHeader;
    case Schema::kPrediction:
      return kPredictionHeader;
  }
  return "";
}

absl::Status WriteCsv(const std::vector<TruthRow>& rows, std::ostream& sink) {
  sink << kTruthHeader << '\n';
  for (const TruthRow& r : rows) {
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.traj_id, "traj_id"));
    sink << r.traj_id << ',' << FormatCsvDouble(r.t) << ',' << FormatCsvDouble(r.x)
         << ',' << FormatCsvDouble(r.y) << '\n';
  }
  return Finish(sink);
}

absl::Status WriteCsv(const std::vector<SharedRow>& rows, std::ostream& sink) {
  sink << kSharedHeader << '\n';
  for (const SharedRow& r : rows) {
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.traj_id, "traj_id"));
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.scheme, "scheme"));
    sink << r.traj_id << ',' << FormatCsvDouble(r.t) << ',' << FormatCsvDouble(r.x)
         << ',' << FormatCsvDouble(r.y) << ',' << FormatCsvDouble(r.fid) << ','
         << FormatCsvDouble(r.dsigma) << ',' << r.scheme << '\n';
  }
  return Finish(sink);
}

absl::Status WriteCsv(const std::vector<ReportRow>& rows, std::ostream& sink) {
  sink << kReportHeader << '\n';
  for (const ReportRow& r : rows) {
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.run_id, "run_id"));
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.scheme, "scheme"));
    sink << r.run_id << ',' << r.scheme << ','
         << (r.eta ? FormatCsvDouble(*r.eta) : std::string()) << ','
         << FormatCsvDouble(r.ptx_dbm) << ',' << r.seed << ','
         << FormatCsvDouble(r.plr) << ',' << FormatCsvDouble(r.avg_leak_s) << ','
         << FormatCsvDouble(r.max_leak_s) << ',' << FormatCsvDouble(r.pos_err_1s_m)
         << ',' << FormatCsvDouble(r.vel_err_mps) << ','
         << FormatCsvDouble(r.heading_err_deg) << '\n';
  }
  return Finish(sink);
}

absl::Status WriteCsv(const std::vector<PredictionRow>& rows,
                      std::ostream& sink) {
  sink << kPredictionHeader << '\n';
  for (const PredictionRow& r : rows) {
    FIDSHARE_RETURN_IF_ERROR(CheckText(r.traj_id, "traj_id"));
    sink << r.traj_id << ',' << FormatCsvDouble(r.t) << ','
         << FormatCsvDouble(r.x_pred) << ',' << FormatCsvDouble(r.y_pred) << '\n';
  }
  return Finish(sink);
}

absl::StatusOr<std::vector<TruthRow>> ReadTruthCsv(std::istream& source) {
  CsvCursor cur(source, kTruthHeader);
  FIDSHARE_RETURN_IF_ERROR(cur.ReadHeader());
  std::vector<TruthRow> rows;
  while (true) {
    bool more = false;
    FIDSHARE_ASSIGN_OR_RETURN(more, cur.Next());
    if (!more) break;
    TruthRow r;
    r.traj_id = cur.Text(0);
    FIDSHARE_ASSIGN_OR_RETURN(r.t, cur.Double(1));
    FIDSHARE_ASSIGN_OR_RETURN(r.x, cur.Double(2));
    FIDSHARE_ASSIGN_OR_RETURN(r.y, cur.Double(3));
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::StatusOr<std::vector<SharedRow>> ReadSharedCsv(std::istream& source) {
  CsvCursor cur(source, kSharedHeader);
  FIDSHARE_RETURN_IF_ERROR(cur.ReadHeader());
  std::vector<SharedRow> rows;
  while (true) {
    bool more = false;
    FIDSHARE_ASSIGN_OR_RETURN(more, cur.Next());
    if (!more) break;
    SharedRow r;
    r.traj_id = cur.Text(0);
    FIDSHARE_ASSIGN_OR_RETURN(r.t, cur.Double(1));
    FIDSHARE_ASSIGN_OR_RETURN(r.x, cur.Double(2));
    FIDSHARE_ASSIGN_OR_RETURN(r.y, cur.Double(3));
    FIDSHARE_ASSIGN_OR_RETURN(r.fid, cur.Double(4));
    FIDSHARE_ASSIGN_OR_RETURN(r.dsigma, cur.Double(5));
    r.scheme = cur.Text(6);
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::StatusOr<std::vector<ReportRow>> ReadReportCsv(std::istream& source) {
  CsvCursor cur(source, kReportHeader);
  FIDSHARE_RETURN_IF_ERROR(cur.ReadHeader());
  std::vector<ReportRow> rows;
  while (true) {
    bool more = false;
    FIDSHARE_ASSIGN_OR_RETURN(more, cur.Next());
    if (!more) break;
    ReportRow r;
    r.run_id = cur.Text(0);
    r.scheme = cur.Text(1);
    FIDSHARE_ASSIGN_OR_RETURN(r.eta, cur.OptionalDouble(2));
    FIDSHARE_ASSIGN_OR_RETURN(r.ptx_dbm, cur.Double(3));
    FIDSHARE_ASSIGN_OR_RETURN(r.seed, cur.Unsigned(4));
    FIDSHARE_ASSIGN_OR_RETURN(r.plr, cur.Double(5));
    FIDSHARE_ASSIGN_OR_RETURN(r.avg_leak_s, cur.Double(6));
    FIDSHARE_ASSIGN_OR_RETURN(r.max_leak_s, cur.Double(7));
    FIDSHARE_ASSIGN_OR_RETURN(r.pos_err_1s_m, cur.Double(8));
    FIDSHARE_ASSIGN_OR_RETURN(r.vel_err_mps, cur.Double(9));
    FIDSHARE_ASSIGN_OR_RETURN(r.heading_err_deg, cur.Double(10));
    rows.push_back(std::move(r));
  }
  return rows;
}

absl::StatusOr<std::vector<PredictionRow>> ReadPredictionCsv(
    std::istream& source) {
  CsvCursor cur(source, kPredictionHeader);
  FIDSHARE_RETURN_IF_ERROR(cur.ReadHeader());
  std::vector<PredictionRow> rows;
  while (true) {
    bool more = false;
    FIDSHARE_ASSIGN_OR_RETURN(more, cur.Next());
    if (!more) break;
    PredictionRow r;
    r.traj_id = cur.Text(0);
    FIDSHARE_ASSIGN_OR_RETURN(r.t, cur.Double(1));
    FIDSHARE_ASSIGN_OR_RETURN(r.x_pred, cur.Double(2));
    FIDSHARE_ASSIGN_OR_RETURN(r.y_pred, cur.Double(3));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TruthRow> ToTruthRows(const std::vector<Trajectory>& trajectories) {
  std::vector<TruthRow> rows;
  for (const Trajectory& traj : trajectories) {
    for (const TrajPoint& p : traj.points) {
      rows.push_back({traj.id, p.t, p.x, p.y});
    }
  }
  return rows;
}

absl::StatusOr<std::vector<Trajectory>> FromTruthRows(
    const std::vector<TruthRow>& rows) {
  std::vector<Trajectory> out;
  std::unordered_map<std::string, size_t> index;
  for (const TruthRow& r : rows) {
    auto [it, inserted] = index.try_emplace(r.traj_id, out.size());
    if (inserted) out.push_back(Trajectory{r.traj_id, {}});
    out[it->second].points.push_back({r.t, r.x, r.y});
  }
  for (const Trajectory& traj : out) {
    absl::Status s = ValidateTrajectory(traj);
    if (!s.ok()) {
      return absl::DataLossError(
          absl::StrCat("trajectory '", traj.id, "': ", s.message()));
    }
  }
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::NotFoundError(absl::StrCat("cannot create ", path));
  out << contents;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace fidshare
