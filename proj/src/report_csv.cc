// Copyright 2026 The dpmeta Authors
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

#include "dpmeta/report_csv.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "dpmeta/errors.h"

namespace dpmeta {
namespace {

constexpr std::size_t kColumnCount = 15;

struct RowContext {
  const MetricsReport& report;
  std::string axis_value;
  std::string common_tail;  // v_bar_sq .. wall_clock_s
};

RowContext MakeContext(const MetricsReport& report) {
  const CalibrationRecord& cal = report.calibration;
  std::string tail = FormatReal(report.v_bar_sq_realized) + "," +
                     std::to_string(cal.plan.steps) + "," +
                     FormatReal(cal.plan.noise_variance) + "," +
                     FormatReal(cal.gamma) + "," + FormatReal(cal.eta) + "," +
                     FormatReal(cal.per_task.epsilon) + "," +
                     FormatReal(cal.per_task.delta) + "," +
                     std::to_string(report.seed) + "," +
                     FormatReal(report.wall_clock_s);
  return RowContext{report,
                    report.axis_value ? FormatReal(*report.axis_value) : "",
                    std::move(tail)};
}

void WriteRow(std::ostream& out, const RowContext& ctx, std::string_view arm,
              std::size_t task_index, double excess_risk,
              const std::string& surrogate) {
  out << ctx.report.run_id << ',' << ctx.axis_value << ',' << arm << ','
      << task_index << ',' << FormatReal(excess_risk) << ',' << surrogate
      << ',' << ctx.common_tail << '\n';
}

std::vector<std::string_view> SplitRow(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

template <class T>
T ParseField(std::string_view text, std::string_view column, int line) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("CSV line " + std::to_string(line) +
                                ": bad value '" + std::string(text) +
                                "' in column " + std::string(column));
  }
  return value;
}

template <class T>
void SetIndexed(std::vector<T>& values, std::size_t index, T value) {
  if (values.size() <= index) values.resize(index + 1);
  values[index] = value;
}

}  // namespace

std::string FormatReal(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

void WriteReportsCsv(std::ostream& out,
                     std::span<const MetricsReport> reports) {
  out << kCsvHeader << '\n';
  for (const MetricsReport& report : reports) {
    const RowContext ctx = MakeContext(report);
    for (std::size_t t = 0; t < report.train_surrogate_losses.size(); ++t) {
      WriteRow(out, ctx, kArmTrain, t, report.train_excess_risks[t],
               FormatReal(report.train_surrogate_losses[t]));
    }
    for (const ArmResult& arm : report.arms) {
      for (std::size_t t = 0; t < arm.excess_risks.size(); ++t) {
        WriteRow(out, ctx, arm.arm, t, arm.excess_risks[t], "");
      }
    }
  }
}

void WriteReportFiles(const std::string& path,
                      std::span<const MetricsReport> reports) {
  {
    std::ofstream csv(path, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open '" + path + "' for writing");
    WriteReportsCsv(csv, reports);
    csv.flush();
    if (!csv) throw IoError("failed writing '" + path + "'");
  }
  const std::string sidecar = path + ".calibration";
  std::ofstream cal(sidecar, std::ios::binary | std::ios::trunc);
  if (!cal) throw IoError("cannot open '" + sidecar + "' for writing");
  for (const MetricsReport& report : reports) {
    cal << "[" << report.run_id << "]\n";
    if (report.axis_value) {
      cal << "axis_value = " << FormatReal(*report.axis_value) << "\n";
    }
    cal << "seed = " << report.seed << "\n"
        << FormatCalibration(report.calibration);
    for (const std::string& warning : report.warnings) {
      cal << "warning = " << warning << "\n";
    }
    cal << "\n";
  }
  cal.flush();
  if (!cal) throw IoError("failed writing '" + sidecar + "'");
}

std::vector<MetricsReport> ReadReportsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("CSV: missing or unexpected header");
  }
  std::vector<MetricsReport> reports;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string_view> f = SplitRow(line);
    if (f.size() != kColumnCount) {
      throw std::invalid_argument("CSV line " + std::to_string(line_number) +
                                  ": expected 15 columns");
    }
    if (reports.empty() || reports.back().run_id != f[0]) {
      MetricsReport report;
      report.run_id = std::string(f[0]);
      if (!f[1].empty()) {
        report.axis_value = ParseField<double>(f[1], "axis_value", line_number);
      }
      report.v_bar_sq_realized =
          ParseField<double>(f[6], "v_bar_sq_realized", line_number);
      CalibrationRecord& cal = report.calibration;
      cal.plan.steps = ParseField<std::int64_t>(f[7], "n", line_number);
      cal.plan.noise_variance =
          ParseField<double>(f[8], "sigma_sq", line_number);
      cal.gamma = ParseField<double>(f[9], "gamma", line_number);
      cal.eta = ParseField<double>(f[10], "eta", line_number);
      cal.per_task.epsilon = ParseField<double>(f[11], "epsilon", line_number);
      cal.per_task.delta = ParseField<double>(f[12], "delta", line_number);
      report.seed = ParseField<std::uint64_t>(f[13], "seed", line_number);
      report.wall_clock_s =
          ParseField<double>(f[14], "wall_clock_s", line_number);
      reports.push_back(std::move(report));
    }
    MetricsReport& report = reports.back();
    const std::string_view arm = f[2];
    const auto index =
        ParseField<std::size_t>(f[3], "task_index", line_number);
    const double risk = ParseField<double>(f[4], "excess_risk", line_number);
    if (arm == kArmTrain) {
      SetIndexed(report.train_excess_risks, index, risk);
      SetIndexed(report.train_surrogate_losses, index,
                 ParseField<double>(f[5], "surrogate_loss", line_number));
      continue;
    }
    if (report.arms.empty() || report.arms.back().arm != arm) {
      report.arms.push_back(ArmResult{std::string(arm), {}, {}});
    }
    SetIndexed(report.arms.back().excess_risks, index, risk);
  }
  for (MetricsReport& report : reports) {
    double total = 0.0;
    for (double s : report.train_surrogate_losses) total += s;
    if (!report.train_surrogate_losses.empty()) {
      report.mean_surrogate_loss =
          total / static_cast<double>(report.train_surrogate_losses.size());
    }
    for (ArmResult& arm : report.arms) {
      arm.summary = Summarize(arm.excess_risks);
    }
  }
  return reports;
}

}  // namespace dpmeta
