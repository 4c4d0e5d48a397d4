// Copyright 2026 The milpbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "milpbench/score.hpp"

namespace milpbench {

/// Table number format: >= 100 as an integer, >= 10 with one decimal,
/// >= 1 with two, below that 3 significant digits; exactly 1 prints "1".
std::string format_mean(double v);

/// Fixed-width table with rows unscal / scaled / <count_label>, one column
/// per summary. Highlighted labels get a '*' suffix. When no summary carries
/// a scaled value the first one is used as the reference.
std::string render_table(const std::vector<BenchmarkSummary>& summaries,
                         const std::set<std::string>& highlight = {},
                         const std::string& count_label = "solved");

/// 800x500 SVG: rank on x, seconds on a log axis, baseline and adapted
/// polylines, a dashed rule at the limit and a legend. Byte-deterministic.
std::string render_distribution_svg(const DistributionSeries& series, double limit_s,
                                    const std::string& baseline_label = "Default",
                                    const std::string& adapted_label = "Adapted");

/// Writes the SVG to `out`. Throws InputError when the path is unwritable or
/// the series is empty.
std::filesystem::path emit_distribution_svg(const DistributionSeries& series, double limit_s,
                                            const std::filesystem::path& out);

struct ReportBundle {
  std::vector<std::string> tables;
  std::vector<std::filesystem::path> csv_paths;
  std::vector<std::filesystem::path> svg_paths;
  std::vector<std::filesystem::path> other_paths;  // JSON twins, table text
  double time_limit_s = 0.0;
  double shift = 10.0;
  std::string host;
};

/// Summaries of both logs (adapted highlighted), table.txt, summary.csv,
/// summary.json and distribution.svg under `out_dir`.
ReportBundle write_comparison_report(const RunLog& baseline, const RunLog& adapted,
                                     const std::filesystem::path& out_dir);

}  // namespace milpbench
