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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "milpbench/instance.hpp"

namespace milpbench {

enum class NodeStrategy { kBestBound, kDepthFirst };
enum class BranchRule { kMostFractional, kPseudocost };

struct ReferenceSolverOptions {
  NodeStrategy node_strategy = NodeStrategy::kBestBound;
  BranchRule branch_rule = BranchRule::kMostFractional;
  int gomory_rounds = 0;
  bool cover_cuts = false;
  bool presolve_bound_tighten = true;
  bool presolve_coeff_reduce = true;
  bool diving = false;
  double rel_gap = 0.0;
  double abs_gap = 0.0;
  double time_limit_s = 1e30;
  std::optional<std::int64_t> node_limit;
  // Past this many open best-bound nodes, new children are searched depth-first.
  std::size_t max_open_nodes = 200000;
  int threads_recorded = 1;
  std::vector<int> ignored;  // registry indices the reference solver does not model

  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double int_tol = 1e-6;
};

const char* to_string(NodeStrategy s);
const char* to_string(BranchRule r);

enum class SolveStatus { kOptimal, kInfeasible, kTimeLimit, kNodeLimit, kError };

const char* to_string(SolveStatus s);
std::optional<SolveStatus> solve_status_from_string(const std::string& s);

struct Solution {
  std::map<std::string, double> values;
  double objective = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kError;
  std::optional<Solution> incumbent;
  double best_bound = 0.0;  // in the instance's sense
  double gap = kInf;
  std::int64_t nodes = 0;
  double wall_time_s = 0.0;
  std::int64_t deterministic_ticks = 0;  // simplex iterations over all LPs
  std::vector<double> bound_history;     // global bound after each node
  std::size_t cuts_added = 0;
  std::string message;
};

/// Seconds from an arbitrary monotonic origin.
using Clock = std::function<double()>;
Clock steady_clock_seconds();

/// |incumbent - bound| / max(1e-10, |incumbent|); infinity without incumbent.
double compute_gap(std::optional<double> incumbent_obj, double best_bound,
                   ObjSense sense);

struct PresolveResult {
  Instance reduced;
  /// back_map[k] = original index of reduced variable k.
  std::vector<std::size_t> back_map;
  /// Values of original variables removed as fixed.
  std::map<std::size_t, double> fixed;
  std::size_t original_vars = 0;
  bool infeasible = false;
  int bound_passes = 0;
  std::size_t bounds_tightened = 0;
  std::size_t coefficients_reduced = 0;

  /// Full-space point from a reduced-space point.
  std::vector<double> restore(const std::vector<double>& reduced_point) const;
};

/// Single-row bound tightening on integral variables (to a fixpoint, at most
/// 50 passes) and coefficient reduction on rows with binary variables. With
/// both toggles off the reduced instance equals the input.
PresolveResult presolve(const Instance& inst, const ReferenceSolverOptions& opts);

/// LP-based branch and bound. Deterministic for fixed (instance, options):
/// the clock only decides termination.
SolveOutcome branch_and_bound(const Instance& inst,
                              const ReferenceSolverOptions& opts,
                              const Clock& clock = steady_clock_seconds());

/// "name value" lines followed by "=obj= value".
void write_solution(const Solution& sol, std::ostream& out);
Solution read_solution(std::istream& in);
Solution read_solution_file(const std::filesystem::path& path);
void write_solution_file(const Solution& sol, const std::filesystem::path& path);

/// One-line status file: "<status>" optionally followed by "bound=<value>".
void write_status_file(SolveStatus status, std::optional<double> best_bound,
                       const std::filesystem::path& path);
struct StatusLine {
  SolveStatus status;
  std::optional<double> best_bound;
};
StatusLine read_status_file(const std::filesystem::path& path);

/// Dense full-space values in instance variable order (missing names -> 0).
std::vector<double> to_dense(const Instance& inst, const Solution& sol);

}  // namespace milpbench
