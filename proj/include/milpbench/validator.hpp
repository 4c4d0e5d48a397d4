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
#include <string>
#include <vector>

#include "milpbench/instance.hpp"
#include "milpbench/runlog.hpp"
#include "milpbench/solver.hpp"

namespace milpbench {

/// Violations are measured relative to max(1, |side|) of the violated row
/// or bound, so `feasible` is exactly "every maximum within its tolerance".
struct FeasibilityReport {
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_integrality_violation = 0.0;
  double objective_recomputed = 0.0;
  bool feasible = true;
  std::string worst_row;
  std::string worst_variable;  // largest bound violation
  std::vector<std::string> warnings;  // e.g. variables missing from the solution
};

struct Tolerances {
  double row = 1e-6;
  double bound = 1e-6;
  double integrality = 1e-6;
};

FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol,
                                    double row_tol = 1e-6, double bound_tol = 1e-6,
                                    double int_tol = 1e-6);

struct BestKnownEntry {
  double objective = 0.0;
  ObjSense sense = ObjSense::kMinimize;
  std::string source;
};

using BestKnownRegistry = std::map<std::string, BestKnownEntry>;

/// JSON object: name -> {"objective": x, "sense": "min"|"max", "source": s}.
BestKnownRegistry load_registry_string(const std::string& text);
BestKnownRegistry load_registry_file(const std::filesystem::path& path);
std::string registry_to_json(const BestKnownRegistry& reg);

enum class Verdict { kBetter, kTied, kWorse };
const char* to_string(Verdict v);

inline constexpr double kDefaultStrictTol = 1e-9;

/// `strict_tol` is relative: the absolute band is strict_tol * max(1, |best|).
Verdict compare_incumbent(double new_obj, const BestKnownEntry& best,
                          double strict_tol = kDefaultStrictTol);

enum class AuditVerdict {
  kBetter,
  kTied,
  kWorse,
  kInfeasible,    // solution fails the feasibility check
  kUnverifiable,  // instance or solution file unreadable
  kSkipped,       // record carries no solution
  kUnregistered,  // feasible, but no registry entry to compare with
};
const char* to_string(AuditVerdict v);

struct AuditEntry {
  std::string instance;
  AuditVerdict verdict = AuditVerdict::kSkipped;
  std::optional<FeasibilityReport> report;
  std::string note;
};

std::vector<AuditEntry> audit_log_incumbents(
    const RunLog& log, const std::map<std::string, std::filesystem::path>& instances,
    const BestKnownRegistry& registry, const Tolerances& tols = {},
    double strict_tol = kDefaultStrictTol);

}  // namespace milpbench
