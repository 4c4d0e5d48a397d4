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

#include "milpbench/score.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "milpbench/instance.hpp"

namespace milpbench {

double shifted_geomean(std::span<const double> times, double shift) {
  if (times.empty()) throw InputError("shifted geometric mean of an empty list");
  if (!(shift >= 0.0)) throw InputError("shift must be nonnegative");
  double log_sum = 0.0;
  for (double v : times) log_sum += std::log(std::max(1.0, v + shift));
  return std::exp(log_sum / static_cast<double>(times.size())) - shift;
}

std::map<std::string, double> scale(const std::map<std::string, double>& unscal,
                                    const std::string& reference_label) {
  auto ref = unscal.find(reference_label);
  if (ref == unscal.end()) throw InputError("reference '" + reference_label + "' not present");
  if (ref->second == 0.0) throw InputError("reference '" + reference_label + "' is zero");
  std::map<std::string, double> out;
  for (const auto& [label, v] : unscal) out[label] = label == reference_label ? 1.0 : v / ref->second;
  return out;
}

bool counts_as_solved(const RunRecord& r, ObjectiveKind kind) {
  if (kind == ObjectiveKind::kDetectInfeasible) return r.status == RunStatus::kInfeasible;
  return r.status == RunStatus::kOptimal;
}

double effective_time(const RunRecord& r, ObjectiveKind kind, double limit_s) {
  return counts_as_solved(r, kind) ? r.wall_time_s : limit_s;
}

BenchmarkSummary summarize(const RunLog& log, const DatasetSpec& ds, double shift,
                           const std::optional<std::string>& solver_label) {
  const std::string label = solver_label ? *solver_label : log.solver_label();
  std::vector<double> times;
  std::vector<std::string> missing;
  BenchmarkSummary s;
  s.solver_label = label;
  for (const auto& name : ds.instance_names()) {
    const RunRecord* r = log.find(name, label);
    if (!r) {
      missing.push_back(name);
      continue;
    }
    times.push_back(effective_time(*r, ds.objective_kind, ds.time_limit_s));
    if (counts_as_solved(*r, ds.objective_kind)) ++s.solved;
  }
  if (!missing.empty()) {
    std::string msg = "run log incomplete for " + label + "; missing:";
    for (const auto& m : missing) msg += " " + m;
    throw InputError(msg);
  }
  s.n_instances = static_cast<int>(times.size());
  s.unscal = shifted_geomean(times, shift);
  return s;
}

void apply_scaling(std::vector<BenchmarkSummary>& summaries,
                   const std::string& reference_label) {
  std::map<std::string, double> unscal;
  for (const auto& s : summaries) unscal[s.solver_label] = s.unscal;
  const auto scaled = scale(unscal, reference_label);
  for (auto& s : summaries) s.scaled = scaled.at(s.solver_label);
}

DistributionSeries distribution(const RunLog& baseline, const RunLog& adapted) {
  std::set<std::string> a, b;
  for (const auto& r : baseline.records) a.insert(r.instance_name);
  for (const auto& r : adapted.records) b.insert(r.instance_name);
  if (a != b) throw InputError("baseline and adapted logs cover different instance sets");
  if (a.size() != baseline.records.size() || b.size() != adapted.records.size())
    throw InputError("distribution needs one record per instance in each log");

  const ObjectiveKind kind = baseline.dataset.objective_kind;
  const double limit = baseline.dataset.time_limit_s;
  struct Row {
    bool unsolved;
    double time;
    std::string name;
  };
  std::vector<Row> rows;
  for (const auto& r : baseline.records)
    rows.push_back({!counts_as_solved(r, kind), effective_time(r, kind, limit), r.instance_name});
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.unsolved, x.time, x.name) < std::tie(y.unsolved, y.time, y.name);
  });

  DistributionSeries out;
  out.time_limit_s = limit;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const RunRecord* ad = nullptr;
    for (const auto& r : adapted.records)
      if (r.instance_name == rows[k].name) ad = &r;
    out.points.push_back({k + 1, rows[k].name, rows[k].time,
                          effective_time(*ad, adapted.dataset.objective_kind,
                                         adapted.dataset.time_limit_s)});
  }
  return out;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string summaries_to_csv(const std::vector<BenchmarkSummary>& summaries) {
  std::string out = "solver,unscal,scaled,solved,n\n";
  for (const auto& s : summaries) {
    std::string label = s.solver_label;
    if (label.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : label) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      label = q + "\"";
    }
    out += label + "," + num(s.unscal) + "," + (s.scaled ? num(*s.scaled) : "") + "," +
           std::to_string(s.solved) + "," + std::to_string(s.n_instances) + "\n";
  }
  return out;
}

std::string summaries_to_json(const std::vector<BenchmarkSummary>& summaries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : summaries) {
    arr.push_back({{"solver", s.solver_label},
                   {"unscal", s.unscal},
                   {"scaled", s.scaled ? nlohmann::json(*s.scaled) : nlohmann::json(nullptr)},
                   {"solved", s.solved},
                   {"n", s.n_instances}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace milpbench
