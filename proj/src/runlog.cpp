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

#include "milpbench/runlog.hpp"

#include <fcntl.h>
#include <sys/utsname.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>

#include "json.hpp"
#include "milpbench/instance.hpp"

namespace milpbench {

using nlohmann::json;

const char* to_string(DatasetName d) {
  switch (d) {
    case DatasetName::kMiplib240:
      return "miplib240";
    case DatasetName::kPathological45:
      return "pathological45";
    case DatasetName::kInfeasibility32:
      return "infeasibility32";
    case DatasetName::kCustom:
      return "custom";
  }
  return "custom";
}

const char* to_string(ObjectiveKind k) {
  return k == ObjectiveKind::kOptimize ? "optimize" : "detect_infeasible";
}

std::optional<DatasetName> dataset_name_from_string(const std::string& s) {
  for (auto d : {DatasetName::kMiplib240, DatasetName::kPathological45,
                 DatasetName::kInfeasibility32, DatasetName::kCustom})
    if (s == to_string(d)) return d;
  return std::nullopt;
}

std::optional<ObjectiveKind> objective_kind_from_string(const std::string& s) {
  if (s == "optimize") return ObjectiveKind::kOptimize;
  if (s == "detect_infeasible") return ObjectiveKind::kDetectInfeasible;
  return std::nullopt;
}

std::optional<double> protocol_time_limit(DatasetName d) {
  switch (d) {
    case DatasetName::kMiplib240:
      return 7200.0;
    case DatasetName::kPathological45:
      return 3600.0;
    case DatasetName::kInfeasibility32:
      return 10800.0;
    case DatasetName::kCustom:
      return std::nullopt;
  }
  return std::nullopt;
}

DatasetSpec DatasetSpec::named(DatasetName name, std::vector<std::filesystem::path> paths) {
  DatasetSpec ds;
  ds.name = name;
  ds.instance_paths = std::move(paths);
  ds.time_limit_s = protocol_time_limit(name).value_or(0.0);
  ds.objective_kind = name == DatasetName::kInfeasibility32 ? ObjectiveKind::kDetectInfeasible
                                                            : ObjectiveKind::kOptimize;
  return ds;
}

void DatasetSpec::check() const {
  if (!(time_limit_s > 0.0)) throw InputError("dataset time limit must be positive");
  if (auto lim = protocol_time_limit(name); lim && *lim != time_limit_s)
    throw InputError(std::string("dataset ") + to_string(name) + " requires a time limit of " +
                     std::to_string(static_cast<int>(*lim)) + " s");
}

std::vector<std::string> DatasetSpec::instance_names() const {
  std::vector<std::string> out;
  for (const auto& p : instance_paths) out.push_back(instance_name_from_path(p));
  return out;
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kOptimal:
      return "optimal";
    case RunStatus::kInfeasible:
      return "infeasible";
    case RunStatus::kTimeLimit:
      return "time_limit";
    case RunStatus::kError:
      return "error";
  }
  return "error";
}

std::optional<RunStatus> run_status_from_string(const std::string& s) {
  for (auto st : {RunStatus::kOptimal, RunStatus::kInfeasible, RunStatus::kTimeLimit,
                  RunStatus::kError})
    if (s == to_string(st)) return st;
  return std::nullopt;
}

const RunRecord* RunLog::find(const std::string& instance, const std::string& solver) const {
  for (const auto& r : records)
    if (r.instance_name == instance && r.solver_label == solver) return &r;
  return nullptr;
}

std::string RunLog::solver_label() const {
  if (records.empty()) throw InputError("run log has no records");
  const std::string& first = records.front().solver_label;
  for (const auto& r : records)
    if (r.solver_label != first)
      throw InputError("run log mixes solvers '" + first + "' and '" + r.solver_label + "'");
  return first;
}

namespace {

json record_json(const RunRecord& r) {
  json j;
  j["type"] = "record";
  j["instance"] = r.instance_name;
  j["solver"] = r.solver_label;
  j["config"] = r.config_label;
  j["status"] = to_string(r.status);
  j["wall_time_s"] = r.wall_time_s;
  j["objective"] = r.objective ? json(*r.objective) : json(nullptr);
  // JSON has no infinity; unbounded bounds are stored as null.
  j["best_bound"] =
      r.best_bound && std::isfinite(*r.best_bound) ? json(*r.best_bound) : json(nullptr);
  j["solution_path"] = r.solution_path ? json(*r.solution_path) : json(nullptr);
  j["started_at"] = r.started_at;
  j["host"] = r.host_descriptor;
  if (r.nodes) j["nodes"] = *r.nodes;
  if (r.ticks) j["ticks"] = *r.ticks;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

RunRecord record_of(const json& j) {
  RunRecord r;
  r.instance_name = j.at("instance").get<std::string>();
  r.solver_label = j.at("solver").get<std::string>();
  r.config_label = j.at("config").get<std::string>();
  auto st = run_status_from_string(j.at("status").get<std::string>());
  if (!st) throw InputError("unknown run status " + j.at("status").dump());
  r.status = *st;
  r.wall_time_s = j.at("wall_time_s").get<double>();
  if (j.contains("objective") && !j["objective"].is_null())
    r.objective = j["objective"].get<double>();
  if (j.contains("best_bound") && !j["best_bound"].is_null())
    r.best_bound = j["best_bound"].get<double>();
  if (j.contains("solution_path") && !j["solution_path"].is_null())
    r.solution_path = j["solution_path"].get<std::string>();
  r.started_at = j.value("started_at", "");
  r.host_descriptor = j.value("host", "");
  if (j.contains("nodes")) r.nodes = j["nodes"].get<std::int64_t>();
  if (j.contains("ticks")) r.ticks = j["ticks"].get<std::int64_t>();
  r.message = j.value("message", "");
  return r;
}

json header_json(const RunLog& log) {
  json j;
  j["type"] = "header";
  json ds;
  ds["name"] = to_string(log.dataset.name);
  ds["time_limit_s"] = log.dataset.time_limit_s;
  ds["objective_kind"] = to_string(log.dataset.objective_kind);
  json paths = json::array();
  for (const auto& p : log.dataset.instance_paths) paths.push_back(p.string());
  ds["instances"] = paths;
  j["dataset"] = ds;
  j["protocol"] = {{"time_limit_s", log.protocol.time_limit_s},
                   {"gap_tolerance", log.protocol.gap_tolerance},
                   {"shift", log.protocol.shift}};
  j["adapt"] = log.adapt_enabled;
  return j;
}

void header_of(const json& j, RunLog& log) {
  const json& ds = j.at("dataset");
  auto name = dataset_name_from_string(ds.at("name").get<std::string>());
  auto kind = objective_kind_from_string(ds.at("objective_kind").get<std::string>());
  if (!name || !kind) throw InputError("run log header has an unknown dataset name or kind");
  log.dataset.name = *name;
  log.dataset.objective_kind = *kind;
  log.dataset.time_limit_s = ds.at("time_limit_s").get<double>();
  log.dataset.instance_paths.clear();
  for (const auto& p : ds.at("instances")) log.dataset.instance_paths.emplace_back(p.get<std::string>());
  const json& pr = j.at("protocol");
  log.protocol.time_limit_s = pr.at("time_limit_s").get<double>();
  log.protocol.gap_tolerance = pr.at("gap_tolerance").get<double>();
  log.protocol.shift = pr.at("shift").get<double>();
  log.adapt_enabled = j.value("adapt", false);
}

void write_all(int fd, const std::string& s, const std::filesystem::path& path) {
  std::size_t done = 0;
  while (done < s.size()) {
    const ssize_t n = ::write(fd, s.data() + done, s.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw InputError("cannot write " + path.string() + ": " + std::strerror(errno));
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

std::string record_to_json(const RunRecord& r) { return record_json(r).dump(); }

RunRecord record_from_json(const std::string& line) {
  try {
    return record_of(json::parse(line));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed run record: ") + e.what());
  }
}

RunLog read_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open run log " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  RunLog log;
  bool have_header = false;
  std::map<std::pair<std::string, std::string>, std::size_t> where;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    const bool terminated = end != std::string::npos;
    if (!terminated) end = content.size();
    const std::string line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      if (!terminated) break;  // torn tail
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed JSON");
    }
    try {
      if (j.value("type", "") == "header") {
        header_of(j, log);
        have_header = true;
        continue;
      }
      RunRecord r = record_of(j);
      auto key = std::make_pair(r.instance_name, r.solver_label);
      if (auto it = where.find(key); it != where.end()) {
        log.records[it->second] = std::move(r);
      } else {
        where[key] = log.records.size();
        log.records.push_back(std::move(r));
      }
    } catch (const json::exception& e) {
      if (!terminated) break;
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw InputError(path.string() + ": run log has no header line");
  return log;
}

RunLogWriter::RunLogWriter(const std::filesystem::path& path, const RunLog& log)
    : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  std::string body = header_json(log).dump() + "\n";
  for (const auto& r : log.records) body += record_to_json(r) + "\n";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw InputError("cannot create " + tmp.string() + ": " + std::strerror(errno));
  write_all(fd, body, tmp);
  ::fsync(fd);
  ::close(fd);
  std::filesystem::rename(tmp, path);
  fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND);
  if (fd_ < 0) throw InputError("cannot open " + path.string() + ": " + std::strerror(errno));
}

RunLogWriter::~RunLogWriter() {
  if (fd_ >= 0) ::close(fd_);
}

void RunLogWriter::append(const RunRecord& r) {
  write_all(fd_, record_to_json(r) + "\n", path_);
  ::fsync(fd_);
}

std::string host_descriptor() {
  struct utsname u {};
  std::string out = "unknown";
  if (::uname(&u) == 0)
    out = std::string(u.sysname) + " " + u.release + " " + u.machine;
  const long cpus = ::sysconf(_SC_NPROCESSORS_ONLN);
  return out + ", " + std::to_string(cpus > 0 ? cpus : 1) + " cpus";
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace milpbench
