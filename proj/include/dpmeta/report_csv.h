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

// CSV persistence for metrics reports. Columns are fixed; reals are written
// with 17 significant digits so a report read back compares exactly.

#ifndef DPMETA_REPORT_CSV_H_
#define DPMETA_REPORT_CSV_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpmeta/harness.h"

namespace dpmeta {

inline constexpr std::string_view kCsvHeader =
    "run_id,axis_value,arm,task_index,excess_risk,surrogate_loss,"
    "v_bar_sq_realized,n,sigma_sq,gamma,eta,epsilon,delta,seed,wall_clock_s";

void WriteReportsCsv(std::ostream& out,
                     std::span<const MetricsReport> reports);

// Writes the CSV to `path` and the calibration blocks to `path.calibration`.
// Throws IoError when either file cannot be written.
void WriteReportFiles(const std::string& path,
                      std::span<const MetricsReport> reports);

// Rebuilds the reports from CSV rows. Only fields carried by the columns are
// populated; summaries are recomputed from the per-task values. Throws
// std::invalid_argument on malformed input.
std::vector<MetricsReport> ReadReportsCsv(std::istream& in);

// %.17g rendering used for every real-valued column.
std::string FormatReal(double value);

}  // namespace dpmeta

#endif  // DPMETA_REPORT_CSV_H_
