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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace milpbench {

enum class DatasetName { kMiplib240, kPathological45, kInfeasibility32, kCustom };
enum class ObjectiveKind { kOptimize, kDetectInfeasible };

const char* to_string(DatasetName d);
const char* to_string(ObjectiveKind k);
std::optional<DatasetName> dataset_name_from_string(const std::string& s);
std::optional<ObjectiveKind> objective_kind_from_string(const std::string& s);

/// Per-dataset wall-clock limit of the benchmark protocol; nullopt for custom.
std::optional<double> protocol_time_limit(DatasetName d);

struct DatasetSpec {
  DatasetName name = DatasetName::kCustom;
  std::vector<std::filesystem::path> instance_paths;
  double time_limit_s = 0.0;
  ObjectiveKind objective_kind = ObjectiveKind::kOptimize;

  /// Named dataset with its protocol limit. The infeasibility set uses
  /// detect_infeasible, the others optimize.
  static DatasetSpec named(DatasetName name, std::vector<std::filesystem::path> paths);

  /// Throws InputError when the limit does not match the named dataset.
  void check() const;

  std::vector<std::string> instance_names() const;
};

enum class RunStatus { kOptimal, kInfeasible, kTimeLimit, kError };

const char* to_string(RunStatus s);
std::optional<RunStatus> run_status_from_string(const std::string& s);

struct RunRecord {
  std::string instance_name;
  std::string solver_label;
  std::string config_label;
  RunStatus status = RunStatus::kError;
  double wall_time_s = 0.0;
  std::optional<double> objective;
  std::optional<double> best_bound;
  std::optional<std::string> solution_path;
  std::string started_at;  // ISO-8601 UTC
  std::string host_descriptor;
  std::optional<std::int64_t> nodes;
  std::optional<std::int64_t> ticks;
  std::string message;  // diagnostics for error records
};

struct Protocol {
  double time_limit_s = 0.0;
  double gap_tolerance = 0.0;
  double shift = 10.0;
};

struct RunLog {
  DatasetSpec dataset;
  Protocol protocol;
  bool adapt_enabled = false;
  std::vector<RunRecord> records;

  const RunRecord* find(const std::string& instance, const std::string& solver) const;
  /// Single solver label of the log, or InputError when mixed or empty.
  std::string solver_label() const;
};

std::string record_to_json(const RunRecord& r);
RunRecord record_from_json(const std::string& line);

/// Reads a JSON-lines log. A torn final line (crash mid-write) is dropped;
/// for repeated (instance, solver) keys the later record wins.
RunLog read_log(const std::filesystem::path& path);

/// Append-only writer: each record is flushed and synced before append()
/// returns, so a crash loses at most the record being written.
class RunLogWriter {
 public:
  /// Creates (or atomically replaces) `path` with the header and `existing`
  /// records, then keeps it open for appending.
  RunLogWriter(const std::filesystem::path& path, const RunLog& header_and_existing);
  ~RunLogWriter();
  RunLogWriter(const RunLogWriter&) = delete;
  RunLogWriter& operator=(const RunLogWriter&) = delete;

  void append(const RunRecord& r);

 private:
  int fd_ = -1;
  std::filesystem::path path_;
};

/// "<sysname> <release> <machine>, <n> cpus" from uname/sysconf.
std::string host_descriptor();
/// Current UTC time as 2026-01-01T00:00:00Z.
std::string utc_timestamp();

}  // namespace milpbench
