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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "milpbench/runlog.hpp"

namespace milpbench {

inline constexpr double kDefaultShift = 10.0;

/// exp(sum(ln(max(1, v + shift))) / n) - shift, accumulated in log space.
/// Throws InputError on an empty list or a negative shift.
double shifted_geomean(std::span<const double> times, double shift = kDefaultShift);

/// Divides every value by the reference's value. The reference itself maps
/// to exactly 1. Throws InputError when the reference is missing or zero.
std::map<std::string, double> scale(const std::map<std::string, double>& unscal,
                                    const std::string& reference_label);

struct BenchmarkSummary {
  std::string solver_label;
  double unscal = 0.0;
  std::optional<double> scaled;
  int solved = 0;
  int n_instances = 0;
};

/// Whether a record counts as solved for the dataset's objective kind.
bool counts_as_solved(const RunRecord& r, ObjectiveKind kind);

/// Time entering the aggregate: wall time for solved records, the dataset
/// limit otherwise.
double effective_time(const RunRecord& r, ObjectiveKind kind, double limit_s);

/// Summary of one solver over `ds`. With no label the log must hold exactly
/// one solver. Throws InputError listing instances without a record.
BenchmarkSummary summarize(const RunLog& log, const DatasetSpec& ds,
                           double shift = kDefaultShift,
                           const std::optional<std::string>& solver_label = std::nullopt);

/// Fills `scaled` on every summary relative to `reference_label`.
void apply_scaling(std::vector<BenchmarkSummary>& summaries, const std::string& reference_label);

struct DistributionPoint {
  std::size_t rank = 0;  // 1-based
  std::string instance;
  double baseline_time_s = 0.0;
  double adapted_time_s = 0.0;
};

struct DistributionSeries {
  std::vector<DistributionPoint> points;
  double time_limit_s = 0.0;
};

/// Instances ordered by baseline time, unsolved baseline runs last at the
/// limit, ties by name. Throws InputError when the instance sets differ.
DistributionSeries distribution(const RunLog& baseline, const RunLog& adapted);

std::string summaries_to_csv(const std::vector<BenchmarkSummary>& summaries);
std::string summaries_to_json(const std::vector<BenchmarkSummary>& summaries);

}  // namespace milpbench
