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

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "milpbench/instance.hpp"
#include "milpbench/solver.hpp"

namespace milpbench {

enum class ValueKind { kInteger, kReal, kEnumeration };

const char* to_string(ValueKind k);

/// Parameter value. Enumerations accept integer codes or symbolic names.
using ParamValue = std::variant<std::int64_t, double, std::string>;

std::string format_value(const ParamValue& v);

/// Optional per-store tightening of a parameter's (otherwise open) domain.
struct Domain {
  std::optional<double> min;
  std::optional<double> max;
  std::vector<ParamValue> allowed;  // empty: unrestricted

  bool contains(const ParamValue& v) const;
};

struct ParamDef {
  int index;  // 1..47
  std::string name;
  ValueKind value_kind;
  Domain allowed;
  std::optional<ParamValue> default_value;
};

inline constexpr int kRegistrySize = 47;

/// The 47 CPLEX parameters of the published configuration tables, in order.
std::span<const ParamDef> parameter_registry();

/// Throws InputError outside 1..47.
const ParamDef& param_by_index(int index);
const ParamDef* param_by_name(const std::string& name);

/// Checks that `v` fits the parameter's kind (integers must be integral).
bool value_fits_kind(const ParamDef& def, const ParamValue& v);

struct Configuration {
  std::map<int, ParamValue> assignments;
  std::string label;

  bool operator==(const Configuration&) const = default;
};

/// Base assignments with `override` replacing collisions; label from override.
Configuration merge(const Configuration& base, const Configuration& override);

enum class CompareOp { kLess, kLessEqual, kEqual, kGreaterEqual, kGreater };

struct FeatureTest {
  std::string field;
  CompareOp op;
  double threshold;

  bool holds(const FeatureVector& f) const;
};

struct ConfigRule {
  std::vector<FeatureTest> predicate;  // conjunction
  std::string config_label;
  int priority = 0;

  bool matches(const FeatureVector& f) const;
};

struct ConfigStore {
  std::vector<ParamDef> registry;  // registry with store-level domain tightening
  std::map<std::string, Configuration> configs;
  std::map<std::string, std::string> by_instance;
  std::vector<ConfigRule> rules;  // sorted by descending priority
  std::string default_label;

  const Configuration& config(const std::string& label) const;
};

/// Parses and validates a JSON store document. Throws InputError.
ConfigStore load_store(std::istream& in);
ConfigStore load_store_string(const std::string& text);
ConfigStore load_store_file(const std::string& path);

/// Store with a single empty configuration named "default".
ConfigStore minimal_store();

/// Resolution: by-instance name, then highest-priority matching rule, then
/// the default label.
Configuration adapt(const std::string& name, const FeatureVector& features,
                    const ConfigStore& store);

/// Translates the modeled subset of parameters to reference solver options,
/// starting from `base`. Unmodeled indices land in `ignored`.
ReferenceSolverOptions map_to_reference(const Configuration& cfg,
                                        const ReferenceSolverOptions& base = {});

/// Single-configuration JSON ({"label": ..., "assignments": {name: value}})
/// used to hand a configuration to an external solver process.
std::string configuration_to_json(const Configuration& cfg);
Configuration configuration_from_json(const std::string& text);

}  // namespace milpbench
