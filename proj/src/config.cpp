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

#include "milpbench/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace milpbench {

using json = nlohmann::json;

const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::kInteger:
      return "integer";
    case ValueKind::kReal:
      return "real";
    case ValueKind::kEnumeration:
      return "enumeration";
  }
  return "integer";
}

std::string format_value(const ParamValue& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto d = std::get_if<double>(&v)) {
    std::ostringstream os;
    os << *d;
    return os.str();
  }
  return std::get<std::string>(v);
}

namespace {

std::optional<double> numeric(const ParamValue& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (auto d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

bool same_value(const ParamValue& a, const ParamValue& b) {
  auto na = numeric(a);
  auto nb = numeric(b);
  if (na && nb) return *na == *nb;
  return a == b;
}

ParamDef def(int index, const char* name, ValueKind kind,
             std::optional<ParamValue> dflt = std::nullopt) {
  return ParamDef{index, name, kind, Domain{}, std::move(dflt)};
}

std::vector<ParamDef> build_registry() {
  using K = ValueKind;
  return {
      def(1, "CPXPARAM_MIP_Cuts_RLT", K::kInteger, std::int64_t{0}),
      def(2, "CPXPARAM_MIP_Cuts_MCFCut", K::kInteger, std::int64_t{0}),
      def(3, "CPXPARAM_Emphasis_Numerical", K::kInteger, std::int64_t{0}),
      def(4, "CPXPARAM_MIP_Strategy_Dive", K::kEnumeration, std::int64_t{0}),
      def(5, "CPXPARAM_Preprocessing_Dependency", K::kInteger, std::int64_t{-1}),
      def(6, "CPXPARAM_MIP_Limits_GomoryCand", K::kInteger, std::int64_t{200}),
      def(7, "CPXPARAM_MIP_Cuts_Disjunctive", K::kInteger, std::int64_t{0}),
      def(8, "CPXPARAM_Preprocessing_Folding", K::kInteger, std::int64_t{-1}),
      def(9, "CPXPARAM_MIP_Strategy_SubAlgorithm", K::kEnumeration, std::int64_t{0}),
      def(10, "CPXPARAM_Preprocessing_Relax", K::kInteger, std::int64_t{-1}),
      def(11, "CPXPARAM_Simplex_Crash", K::kInteger, std::int64_t{1}),
      def(12, "CPXPARAM_MIP_Strategy_Probe", K::kInteger, std::int64_t{0}),
      def(13, "CPXPARAM_MIP_Cuts_FlowCovers", K::kInteger, std::int64_t{0}),
      def(14, "CPXPARAM_MIP_Cuts_Covers", K::kInteger, std::int64_t{0}),
      def(15, "CPXPARAM_MIP_Cuts_Gomory", K::kInteger, std::int64_t{0}),
      def(16, "CPXPARAM_MIP_Cuts_Implied", K::kInteger, std::int64_t{0}),
      def(17, "CPXPARAM_Preprocessing_Symmetry", K::kInteger, std::int64_t{-1}),
      def(18, "CPXPARAM_MIP_Cuts_MIRCut", K::kInteger, std::int64_t{0}),
      def(19, "CPXPARAM_MIP_Strategy_VariableSelect", K::kEnumeration, std::int64_t{0}),
      def(20, "CPXPARAM_MIP_Cuts_LocalImplied", K::kInteger, std::int64_t{0}),
      def(21, "CPXPARAM_MIP_Cuts_ZeroHalfCut", K::kInteger, std::int64_t{0}),
      def(22, "CPXPARAM_Preprocessing_Dual", K::kInteger, std::int64_t{0}),
      def(23, "CPXPARAM_MIP_Cuts_BQP", K::kInteger, std::int64_t{0}),
      def(24, "CPXPARAM_Preprocessing_CoeffReduce", K::kInteger, std::int64_t{-1}),
      def(25, "CPXPARAM_MIP_Strategy_FPHeur", K::kInteger, std::int64_t{0}),
      def(26, "CPXPARAM_MIP_Limits_AggForCut", K::kInteger, std::int64_t{3}),
      def(27, "CPXPARAM_MIP_Strategy_StartAlgorithm", K::kEnumeration, std::int64_t{0}),
      def(28, "CPXPARAM_MIP_Strategy_Search", K::kEnumeration, std::int64_t{0}),
      def(29, "CPXPARAM_MIP_Cuts_Cliques", K::kInteger, std::int64_t{0}),
      def(30, "CPXPARAM_MIP_SubMIP_StartAlg", K::kEnumeration, std::int64_t{0}),
      def(31, "CPXPARAM_Preprocessing_Reduce", K::kInteger, std::int64_t{3}),
      def(32, "CPXPARAM_MIP_Limits_CutsFactor", K::kReal, -1.0),
      def(33, "CPXPARAM_Preprocessing_RepeatPresolve", K::kInteger, std::int64_t{-1}),
      def(34, "CPXPARAM_Threads", K::kInteger, std::int64_t{0}),
      def(35, "CPXPARAM_MIP_SubMIP_SubAlg", K::kEnumeration, std::int64_t{0}),
      def(36, "CPXPARAM_Preprocessing_BoundStrength", K::kInteger, std::int64_t{-1}),
      def(37, "CPXPARAM_MIP_Strategy_NodeSelect", K::kEnumeration, std::int64_t{1}),
      def(38, "CPXPARAM_MIP_Strategy_PresolveNode", K::kInteger, std::int64_t{0}),
      def(39, "CPXPARAM_MIP_Strategy_Branch", K::kInteger, std::int64_t{0}),
      def(40, "CPXPARAM_MIP_Cuts_PathCut", K::kInteger, std::int64_t{0}),
      def(41, "CPXPARAM_MIP_Cuts_LiftProj", K::kInteger, std::int64_t{0}),
      def(42, "CPXPARAM_Emphasis_MIP", K::kEnumeration, std::int64_t{0}),
      def(43, "CPXPARAM_Preprocessing_Linear", K::kInteger, std::int64_t{1}),
      def(44, "CPXPARAM_MIP_Strategy_RINSHeur", K::kInteger, std::int64_t{0}),
      def(45, "CPXPARAM_MIP_Cuts_GUBCovers", K::kInteger, std::int64_t{0}),
      def(46, "CPXPARAM_MIP_Tolerances_MIPGap", K::kReal, 1e-4),
      def(47, "CPXPARAM_Advance", K::kInteger, std::int64_t{1}),
  };
}

[[noreturn]] void schema_error(const std::string& what) {
  throw InputError("config store: " + what);
}

}  // namespace

bool Domain::contains(const ParamValue& v) const {
  if (!allowed.empty()) {
    return std::any_of(allowed.begin(), allowed.end(),
                       [&](const ParamValue& a) { return same_value(a, v); });
  }
  auto n = numeric(v);
  if (!n) return !min && !max;
  if (min && *n < *min) return false;
  if (max && *n > *max) return false;
  return true;
}

std::span<const ParamDef> parameter_registry() {
  static const std::vector<ParamDef> registry = build_registry();
  return registry;
}

const ParamDef& param_by_index(int index) {
  if (index < 1 || index > kRegistrySize)
    throw InputError("parameter index " + std::to_string(index) +
                     " outside 1.." + std::to_string(kRegistrySize));
  return parameter_registry()[static_cast<std::size_t>(index - 1)];
}

const ParamDef* param_by_name(const std::string& name) {
  for (const auto& d : parameter_registry())
    if (d.name == name) return &d;
  return nullptr;
}

bool value_fits_kind(const ParamDef& def, const ParamValue& v) {
  switch (def.value_kind) {
    case ValueKind::kInteger:
      if (std::holds_alternative<std::int64_t>(v)) return true;
      if (auto d = std::get_if<double>(&v)) return std::isfinite(*d) && *d == std::floor(*d);
      return false;
    case ValueKind::kReal:
      if (auto d = std::get_if<double>(&v)) return std::isfinite(*d);
      return std::holds_alternative<std::int64_t>(v);
    case ValueKind::kEnumeration:
      return !std::holds_alternative<double>(v) ||
             std::get<double>(v) == std::floor(std::get<double>(v));
  }
  return false;
}

Configuration merge(const Configuration& base, const Configuration& override) {
  Configuration out = base;
  for (const auto& [k, v] : override.assignments) out.assignments[k] = v;
  out.label = override.label;
  return out;
}

bool FeatureTest::holds(const FeatureVector& f) const {
  const double v = f.get(field);
  switch (op) {
    case CompareOp::kLess:
      return v < threshold;
    case CompareOp::kLessEqual:
      return v <= threshold;
    case CompareOp::kEqual:
      return v == threshold;
    case CompareOp::kGreaterEqual:
      return v >= threshold;
    case CompareOp::kGreater:
      return v > threshold;
  }
  return false;
}

bool ConfigRule::matches(const FeatureVector& f) const {
  return std::all_of(predicate.begin(), predicate.end(),
                     [&](const FeatureTest& t) { return t.holds(f); });
}

const Configuration& ConfigStore::config(const std::string& label) const {
  auto it = configs.find(label);
  if (it == configs.end()) throw InputError("unknown configuration label '" + label + "'");
  return it->second;
}

namespace {

int resolve_param(const std::string& key, const std::vector<ParamDef>& registry) {
  if (!key.empty() && std::all_of(key.begin(), key.end(), ::isdigit)) {
    int idx = 0;
    try {
      idx = std::stoi(key);
    } catch (const std::exception&) {
      schema_error("parameter index '" + key + "' out of range");
    }
    if (idx < 1 || idx > static_cast<int>(registry.size()))
      schema_error("parameter index " + key + " not in registry (1.." +
                   std::to_string(registry.size()) + ")");
    return idx;
  }
  for (const auto& d : registry)
    if (d.name == key) return d.index;
  schema_error("unknown parameter '" + key + "'");
}

ParamValue to_value(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  schema_error(where + ": value must be a number or string");
}

CompareOp parse_op(const std::string& op) {
  if (op == "<") return CompareOp::kLess;
  if (op == "<=") return CompareOp::kLessEqual;
  if (op == "=" || op == "==") return CompareOp::kEqual;
  if (op == ">=") return CompareOp::kGreaterEqual;
  if (op == ">") return CompareOp::kGreater;
  schema_error("unknown comparison operator '" + op + "'");
}

Configuration parse_assignments(const json& obj, const std::string& label,
                                const std::vector<ParamDef>& registry) {
  if (!obj.is_object()) schema_error("configuration '" + label + "' must be an object");
  Configuration cfg;
  cfg.label = label;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const int idx = resolve_param(it.key(), registry);
    const ParamDef& d = registry[static_cast<std::size_t>(idx - 1)];
    ParamValue v = to_value(it.value(), label + "." + it.key());
    if (!value_fits_kind(d, v))
      schema_error("configuration '" + label + "': value " + it.value().dump() +
                   " is not a valid " + to_string(d.value_kind) + " for " + d.name);
    if (!d.allowed.contains(v))
      schema_error("configuration '" + label + "': value " + it.value().dump() +
                   " outside the domain of " + d.name);
    if (d.value_kind == ValueKind::kReal)
      if (auto i = std::get_if<std::int64_t>(&v)) v = static_cast<double>(*i);
    if (d.value_kind == ValueKind::kInteger)
      if (auto f = std::get_if<double>(&v)) v = static_cast<std::int64_t>(*f);
    if (cfg.assignments.count(idx))
      schema_error("configuration '" + label + "' assigns " + d.name + " twice");
    cfg.assignments[idx] = v;
  }
  return cfg;
}

}  // namespace

ConfigStore load_store(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  static const std::set<std::string> known = {"configs", "by_instance", "rules",
                                              "default", "domains", "description"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key())) schema_error("unknown top-level key '" + it.key() + "'");
  if (!doc.contains("configs")) schema_error("missing \"configs\"");
  if (!doc.contains("default")) schema_error("missing \"default\"");

  ConfigStore store;
  auto reg = parameter_registry();
  store.registry.assign(reg.begin(), reg.end());

  if (doc.contains("domains")) {
    const json& doms = doc["domains"];
    if (!doms.is_object()) schema_error("\"domains\" must be an object");
    for (auto it = doms.begin(); it != doms.end(); ++it) {
      const int idx = resolve_param(it.key(), store.registry);
      Domain& dom = store.registry[static_cast<std::size_t>(idx - 1)].allowed;
      const json& spec = it.value();
      if (!spec.is_object()) schema_error("domain for " + it.key() + " must be an object");
      if (spec.contains("min")) dom.min = spec["min"].get<double>();
      if (spec.contains("max")) dom.max = spec["max"].get<double>();
      if (spec.contains("allowed")) {
        if (!spec["allowed"].is_array()) schema_error("\"allowed\" must be an array");
        for (const auto& v : spec["allowed"]) dom.allowed.push_back(to_value(v, it.key()));
      }
    }
  }

  const json& configs = doc["configs"];
  if (!configs.is_object()) schema_error("\"configs\" must be an object");
  for (auto it = configs.begin(); it != configs.end(); ++it)
    store.configs[it.key()] = parse_assignments(it.value(), it.key(), store.registry);

  auto check_label = [&](const std::string& label, const std::string& where) {
    if (!store.configs.count(label))
      schema_error(where + " references missing configuration label '" + label + "'");
  };

  if (!doc["default"].is_string()) schema_error("\"default\" must be a string");
  store.default_label = doc["default"].get<std::string>();
  check_label(store.default_label, "default");

  if (doc.contains("by_instance")) {
    const json& bi = doc["by_instance"];
    if (!bi.is_object()) schema_error("\"by_instance\" must be an object");
    for (auto it = bi.begin(); it != bi.end(); ++it) {
      if (!it.value().is_string())
        schema_error("by_instance entry '" + it.key() + "' must name a label");
      check_label(it.value().get<std::string>(), "by_instance entry '" + it.key() + "'");
      store.by_instance[it.key()] = it.value().get<std::string>();
    }
  }

  if (doc.contains("rules")) {
    const json& rules = doc["rules"];
    if (!rules.is_array()) schema_error("\"rules\" must be an array");
    std::set<int> priorities;
    for (const auto& r : rules) {
      if (!r.is_object() || !r.contains("config") || !r.contains("priority"))
        schema_error("each rule needs \"config\" and \"priority\"");
      ConfigRule rule;
      rule.config_label = r["config"].get<std::string>();
      if (!r["priority"].is_number_integer()) schema_error("rule priority must be an integer");
      rule.priority = r["priority"].get<int>();
      check_label(rule.config_label, "rule");
      if (!priorities.insert(rule.priority).second)
        schema_error("duplicate rule priority " + std::to_string(rule.priority));
      if (r.contains("when")) {
        if (!r["when"].is_array()) schema_error("rule \"when\" must be an array");
        for (const auto& t : r["when"]) {
          if (!t.is_object() || !t.contains("feature") || !t.contains("op") ||
              !t.contains("value") || !t["value"].is_number())
            schema_error("rule test needs \"feature\", \"op\" and numeric \"value\"");
          FeatureTest test;
          test.field = t["feature"].get<std::string>();
          if (!FeatureVector::has_field(test.field))
            schema_error("rule tests unknown feature '" + test.field + "'");
          test.op = parse_op(t["op"].get<std::string>());
          test.threshold = t["value"].get<double>();
          rule.predicate.push_back(test);
        }
      }
      store.rules.push_back(std::move(rule));
    }
    std::sort(store.rules.begin(), store.rules.end(),
              [](const ConfigRule& a, const ConfigRule& b) { return a.priority > b.priority; });
  }
  return store;
}

ConfigStore load_store_string(const std::string& text) {
  std::istringstream is(text);
  return load_store(is);
}

ConfigStore load_store_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config store " + path);
  return load_store(in);
}

ConfigStore minimal_store() {
  ConfigStore store;
  auto reg = parameter_registry();
  store.registry.assign(reg.begin(), reg.end());
  store.configs["default"] = Configuration{{}, "default"};
  store.default_label = "default";
  return store;
}

Configuration adapt(const std::string& name, const FeatureVector& features,
                    const ConfigStore& store) {
  if (auto it = store.by_instance.find(name); it != store.by_instance.end())
    return store.config(it->second);
  for (const auto& rule : store.rules)
    if (rule.matches(features)) return store.config(rule.config_label);
  return store.config(store.default_label);
}

namespace {

std::optional<std::int64_t> as_int(const ParamValue& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return *i;
  if (auto d = std::get_if<double>(&v)) return static_cast<std::int64_t>(*d);
  return std::nullopt;
}

}  // namespace

ReferenceSolverOptions map_to_reference(const Configuration& cfg,
                                        const ReferenceSolverOptions& base) {
  ReferenceSolverOptions o = base;
  o.ignored.clear();
  for (const auto& [idx, value] : cfg.assignments) {
    const auto code = as_int(value);
    const std::string* name = std::get_if<std::string>(&value);
    switch (idx) {
      case 37:  // NodeSelect: 0 depth-first, 1..3 best-bound family
        if (name)
          o.node_strategy = *name == "depth_first" ? NodeStrategy::kDepthFirst
                                                   : NodeStrategy::kBestBound;
        else if (code)
          o.node_strategy = *code == 0 ? NodeStrategy::kDepthFirst : NodeStrategy::kBestBound;
        break;
      case 19:  // VariableSelect: 2..4 pseudocost family, 0 keeps the base rule
        if (name)
          o.branch_rule = *name == "pseudocost" ? BranchRule::kPseudocost
                                                : BranchRule::kMostFractional;
        else if (code && *code >= 2)
          o.branch_rule = BranchRule::kPseudocost;
        else if (code && *code != 0)
          o.branch_rule = BranchRule::kMostFractional;
        break;
      case 15:  // Gomory: -1 off, 0 keep, k > 0 -> k rounds
        if (code && *code < 0) o.gomory_rounds = 0;
        if (code && *code > 0) o.gomory_rounds = static_cast<int>(*code);
        break;
      case 14:
        if (code && *code < 0) o.cover_cuts = false;
        if (code && *code > 0) o.cover_cuts = true;
        break;
      case 36:  // -1 auto keeps, 0 off, 1 on
        if (code && *code >= 0) o.presolve_bound_tighten = *code > 0;
        break;
      case 24:
        if (code && *code >= 0) o.presolve_coeff_reduce = *code > 0;
        break;
      case 4:  // Dive: 0 keep, 1 traditional (no dive), 2/3 probing/guided dive
        if (code && *code == 1) o.diving = false;
        if (code && *code >= 2) o.diving = true;
        break;
      case 46:
        if (auto d = std::get_if<double>(&value)) o.rel_gap = *d;
        else if (code) o.rel_gap = static_cast<double>(*code);
        break;
      case 34:
        if (code) o.threads_recorded = static_cast<int>(std::max<std::int64_t>(1, *code));
        break;
      default:
        o.ignored.push_back(idx);
    }
  }
  return o;
}

std::string configuration_to_json(const Configuration& cfg) {
  json doc;
  doc["label"] = cfg.label;
  json assign = json::object();
  for (const auto& [idx, v] : cfg.assignments) {
    const std::string& key = param_by_index(idx).name;
    std::visit([&](const auto& x) { assign[key] = x; }, v);
  }
  doc["assignments"] = assign;
  return doc.dump(2);
}

Configuration configuration_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("invalid configuration JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("assignments"))
    schema_error("configuration document needs \"assignments\"");
  std::vector<ParamDef> reg(parameter_registry().begin(), parameter_registry().end());
  Configuration cfg = parse_assignments(doc["assignments"], doc.value("label", ""), reg);
  return cfg;
}

}  // namespace milpbench
