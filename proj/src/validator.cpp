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

#include "milpbench/validator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace milpbench {

using nlohmann::json;

namespace {

double rel(double violation, double side) {
  return violation / std::max(1.0, std::isfinite(side) ? std::fabs(side) : 1.0);
}

}  // namespace

FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol,
                                    double row_tol, double bound_tol, double int_tol) {
  FeasibilityReport rep;
  std::vector<double> x(inst.variables.size(), 0.0);
  for (std::size_t j = 0; j < inst.variables.size(); ++j) {
    const Variable& v = inst.variables[j];
    auto it = sol.values.find(v.name);
    if (it == sol.values.end()) {
      rep.warnings.push_back("no value for " + v.name + ", using 0");
    } else {
      x[j] = it->second;
    }
    double bv = 0.0;
    if (x[j] < v.lower) bv = rel(v.lower - x[j], v.lower);
    if (x[j] > v.upper) bv = rel(x[j] - v.upper, v.upper);
    if (bv > rep.max_bound_violation) {
      rep.max_bound_violation = bv;
      rep.worst_variable = v.name;
    }
    if (v.is_integral())
      rep.max_integrality_violation =
          std::max(rep.max_integrality_violation, std::fabs(x[j] - std::round(x[j])));
  }
  for (const auto& [name, value] : sol.values)
    if (!inst.find_variable(name)) rep.warnings.push_back("unknown variable " + name + " ignored");

  for (const auto& row : inst.rows) {
    double act = 0.0;
    for (const auto& c : row.coefficients) act += c.value * x[c.var];
    auto [lo, hi] = row.bounds();
    double rv = 0.0;
    if (act < lo) rv = rel(lo - act, lo);
    if (act > hi) rv = rel(act - hi, hi);
    if (rv > rep.max_row_violation) {
      rep.max_row_violation = rv;
      rep.worst_row = row.name;
    }
  }
  rep.objective_recomputed = inst.objective_value(x);
  rep.feasible = rep.max_row_violation <= row_tol && rep.max_bound_violation <= bound_tol &&
                 rep.max_integrality_violation <= int_tol;
  return rep;
}

BestKnownRegistry load_registry_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("registry: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("registry: top level must be an object");
  BestKnownRegistry reg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const json& e = it.value();
    if (!e.is_object() || !e.contains("objective") || !e["objective"].is_number())
      throw InputError("registry: entry '" + it.key() + "' needs a numeric \"objective\"");
    BestKnownEntry entry;
    entry.objective = e["objective"].get<double>();
    const std::string sense = e.value("sense", "min");
    if (sense == "min")
      entry.sense = ObjSense::kMinimize;
    else if (sense == "max")
      entry.sense = ObjSense::kMaximize;
    else
      throw InputError("registry: entry '" + it.key() + "' has sense '" + sense + "'");
    entry.source = e.value("source", "");
    reg[it.key()] = entry;
  }
  return reg;
}

BestKnownRegistry load_registry_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open registry " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return load_registry_string(ss.str());
}

std::string registry_to_json(const BestKnownRegistry& reg) {
  json doc = json::object();
  for (const auto& [name, e] : reg)
    doc[name] = {{"objective", e.objective},
                 {"sense", e.sense == ObjSense::kMinimize ? "min" : "max"},
                 {"source", e.source}};
  return doc.dump(2) + "\n";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kBetter:
      return "better";
    case Verdict::kTied:
      return "tied";
    case Verdict::kWorse:
      return "worse";
  }
  return "worse";
}

Verdict compare_incumbent(double new_obj, const BestKnownEntry& best, double strict_tol) {
  const double band = strict_tol * std::max(1.0, std::fabs(best.objective));
  const double improvement =
      best.sense == ObjSense::kMinimize ? best.objective - new_obj : new_obj - best.objective;
  if (improvement > band) return Verdict::kBetter;
  if (std::fabs(improvement) <= band) return Verdict::kTied;
  return Verdict::kWorse;
}

const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::kBetter:
      return "better";
    case AuditVerdict::kTied:
      return "tied";
    case AuditVerdict::kWorse:
      return "worse";
    case AuditVerdict::kInfeasible:
      return "infeasible";
    case AuditVerdict::kUnverifiable:
      return "unverifiable";
    case AuditVerdict::kSkipped:
      return "skipped";
    case AuditVerdict::kUnregistered:
      return "unregistered";
  }
  return "skipped";
}

std::vector<AuditEntry> audit_log_incumbents(
    const RunLog& log, const std::map<std::string, std::filesystem::path>& instances,
    const BestKnownRegistry& registry, const Tolerances& tols, double strict_tol) {
  std::vector<AuditEntry> out;
  for (const auto& r : log.records) {
    AuditEntry e;
    e.instance = r.instance_name;
    if (!r.solution_path) {
      e.verdict = AuditVerdict::kSkipped;
      e.note = "record has no solution";
      out.push_back(std::move(e));
      continue;
    }
    auto ip = instances.find(r.instance_name);
    if (ip == instances.end()) {
      e.verdict = AuditVerdict::kUnverifiable;
      e.note = "no instance file for " + r.instance_name;
      out.push_back(std::move(e));
      continue;
    }
    Instance inst;
    Solution sol;
    try {
      inst = read_instance(ip->second);
      sol = read_solution_file(*r.solution_path);
    } catch (const std::exception& ex) {
      e.verdict = AuditVerdict::kUnverifiable;
      e.note = ex.what();
      out.push_back(std::move(e));
      continue;
    }
    e.report = check_feasibility(inst, sol, tols.row, tols.bound, tols.integrality);
    if (!e.report->feasible) {
      e.verdict = AuditVerdict::kInfeasible;
      e.note = "violations exceed tolerances";
    } else if (auto reg = registry.find(r.instance_name); reg == registry.end()) {
      e.verdict = AuditVerdict::kUnregistered;
      e.note = "no best-known entry";
    } else {
      switch (compare_incumbent(e.report->objective_recomputed, reg->second, strict_tol)) {
        case Verdict::kBetter:
          e.verdict = AuditVerdict::kBetter;
          break;
        case Verdict::kTied:
          e.verdict = AuditVerdict::kTied;
          break;
        case Verdict::kWorse:
          e.verdict = AuditVerdict::kWorse;
          break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace milpbench
