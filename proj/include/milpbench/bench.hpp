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
#include <functional>
#include <map>
#include <string>

#include "milpbench/config.hpp"
#include "milpbench/runlog.hpp"
#include "milpbench/solver.hpp"

namespace milpbench {

enum class BackendKind { kBuiltin, kExternal };

/// How a job is executed.
///
/// External command templates must contain {instance}, {config},
/// {timelimit} and {solution}; values are shell-quoted on expansion. The
/// child writes the solution file and a status file at "<solution>.status"
/// (see write_status_file) and exits 0.
///
/// solution_path_template may use {name}, {solver} and {config_label}. For
/// the builtin backend an empty template means no solution file is kept.
struct BackendSpec {
  BackendKind kind = BackendKind::kBuiltin;
  std::string label = "reference";
  std::string command_template;
  std::string solution_path_template;
  std::map<std::string, std::string> env;
  ReferenceSolverOptions base_options;  // builtin only

  /// Throws InputError on missing placeholders.
  void check() const;
};

/// Forced-kill margin after the limit: max(5% of the limit, 30 s).
double grace_seconds(double limit_s);

/// Replaces {key} occurrences; unknown placeholders are left untouched.
std::string expand_template(const std::string& tpl,
                            const std::map<std::string, std::string>& values);

/// Single-quoted form safe for /bin/sh.
std::string shell_quote(const std::string& s);

/// Runs one instance. Never throws for solver-side failures; those become
/// error records with a diagnostic message.
RunRecord run_job(const std::filesystem::path& instance_path, const BackendSpec& backend,
                  const Configuration& cfg, double limit_s);

/// Called after every executed job (not for records carried over on resume).
using JobObserver = std::function<void(const RunRecord&)>;

/// Runs every instance in order, writing the log at `log_path` as it goes.
/// The protocol gap (0) is merged over the selected configuration.
RunLog run_suite(const DatasetSpec& ds, const BackendSpec& backend, const ConfigStore& store,
                 bool adapt_enabled, const std::filesystem::path& log_path,
                 const JobObserver& observer = {});

/// Completes a partial log: keeps non-error records, re-runs the rest.
/// Throws InputError when `partial` belongs to another dataset.
RunLog resume_suite(const DatasetSpec& ds, const BackendSpec& backend, const ConfigStore& store,
                    const RunLog& partial, const std::filesystem::path& log_path,
                    const JobObserver& observer = {});

}  // namespace milpbench
