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

#include "milpbench/bench.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace milpbench {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

std::string format_limit(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunStatus run_status_of(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return RunStatus::kOptimal;
    case SolveStatus::kInfeasible:
      return RunStatus::kInfeasible;
    case SolveStatus::kTimeLimit:
    case SolveStatus::kNodeLimit:
      return RunStatus::kTimeLimit;
    case SolveStatus::kError:
      return RunStatus::kError;
  }
  return RunStatus::kError;
}

// A decisive status reported after limit + 5% does not count.
void enforce_limit(RunRecord& r, double limit_s) {
  if ((r.status == RunStatus::kOptimal || r.status == RunStatus::kInfeasible) &&
      r.wall_time_s > limit_s * 1.05) {
    r.message = std::string("reported ") + to_string(r.status) + " after the time limit";
    r.status = RunStatus::kTimeLimit;
  }
}

std::string tail_of_file(const std::filesystem::path& p, std::size_t max_bytes = 2000) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "";
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (s.size() > max_bytes) s = "..." + s.substr(s.size() - max_bytes);
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::filesystem::path solution_path_for(const BackendSpec& b, const std::string& name,
                                        const Configuration& cfg) {
  return expand_template(b.solution_path_template,
                         {{"name", name}, {"solver", b.label}, {"config_label", cfg.label}});
}

RunRecord run_builtin(const std::filesystem::path& path, const BackendSpec& backend,
                      const Configuration& cfg, double limit_s, RunRecord r) {
  Instance inst;
  try {
    inst = read_instance(path);
  } catch (const std::exception& e) {
    r.message = e.what();
    return r;
  }
  ReferenceSolverOptions opts = map_to_reference(cfg, backend.base_options);
  opts.time_limit_s = limit_s;
  const double t0 = now_seconds();
  SolveOutcome out = branch_and_bound(inst, opts);
  r.wall_time_s = now_seconds() - t0;
  r.status = run_status_of(out.status);
  r.nodes = out.nodes;
  r.ticks = out.deterministic_ticks;
  r.message = out.message;
  if (out.incumbent) r.objective = out.incumbent->objective;
  if (out.status != SolveStatus::kInfeasible && out.status != SolveStatus::kError &&
      std::isfinite(out.best_bound))
    r.best_bound = out.best_bound;
  if (out.incumbent && !backend.solution_path_template.empty()) {
    const auto sp = solution_path_for(backend, r.instance_name, cfg);
    try {
      if (sp.has_parent_path()) std::filesystem::create_directories(sp.parent_path());
      write_solution_file(*out.incumbent, sp);
      r.solution_path = sp.string();
    } catch (const std::exception& e) {
      r.message = e.what();
    }
  }
  return r;
}

RunRecord run_external(const std::filesystem::path& path, const BackendSpec& backend,
                       const Configuration& cfg, double limit_s, RunRecord r) {
  std::filesystem::path sol;
  std::filesystem::path scratch;
  if (backend.solution_path_template.empty()) {
    char tmpl[] = "/tmp/milpbench-XXXXXX";
    if (!::mkdtemp(tmpl)) {
      r.message = "cannot create scratch directory";
      return r;
    }
    scratch = tmpl;
    sol = scratch / (r.instance_name + ".sol");
  } else {
    sol = solution_path_for(backend, r.instance_name, cfg);
  }
  const std::filesystem::path status_path = sol.string() + ".status";
  const std::filesystem::path config_path = sol.string() + ".config.json";
  const std::filesystem::path output_path = sol.string() + ".out";
  std::error_code ec;
  if (sol.has_parent_path()) std::filesystem::create_directories(sol.parent_path(), ec);
  std::filesystem::remove(sol, ec);
  std::filesystem::remove(status_path, ec);
  {
    std::ofstream cf(config_path);
    cf << configuration_to_json(cfg) << "\n";
    if (!cf) {
      r.message = "cannot write " + config_path.string();
      return r;
    }
  }
  const std::string cmd =
      expand_template(backend.command_template, {{"instance", shell_quote(path.string())},
                                                 {"config", shell_quote(config_path.string())},
                                                 {"timelimit", format_limit(limit_s)},
                                                 {"solution", shell_quote(sol.string())}});

  const double t0 = now_seconds();
  const pid_t pid = ::fork();
  if (pid < 0) {
    r.message = "fork failed";
    return r;
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    const int out = ::open(output_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (out >= 0) {
      ::dup2(out, STDOUT_FILENO);
      ::dup2(out, STDERR_FILENO);
      ::close(out);
    }
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    for (const auto& [k, v] : backend.env) ::setenv(k.c_str(), v.c_str(), 1);
    ::execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  const double kill_at = t0 + limit_s + grace_seconds(limit_s);
  int wstatus = 0;
  bool killed = false;
  auto nap = std::chrono::microseconds(100);
  while (true) {
    const pid_t w = ::waitpid(pid, &wstatus, WNOHANG);
    if (w == pid) break;
    if (w < 0 && errno != EINTR) break;
    if (now_seconds() >= kill_at) {
      ::killpg(pid, SIGKILL);
      ::waitpid(pid, &wstatus, 0);
      killed = true;
      break;
    }
    std::this_thread::sleep_for(nap);
    nap = std::min<std::chrono::microseconds>(nap * 2, std::chrono::milliseconds(5));
  }
  // Reap anything the child left in its group.
  ::killpg(pid, SIGKILL);
  r.wall_time_s = now_seconds() - t0;

  std::optional<Solution> solution;
  if (std::filesystem::exists(sol)) {
    try {
      solution = read_solution_file(sol);
      r.solution_path = sol.string();
      r.objective = solution->objective;
    } catch (const std::exception& e) {
      r.message = e.what();
    }
  }
  if (killed) {
    r.status = RunStatus::kTimeLimit;
    r.message = "killed after exceeding the time limit plus grace";
  } else if (!WIFEXITED(wstatus) || WEXITSTATUS(wstatus) != 0) {
    r.status = RunStatus::kError;
    std::string how = WIFEXITED(wstatus) ? "exit code " + std::to_string(WEXITSTATUS(wstatus))
                                         : "signal " + std::to_string(WTERMSIG(wstatus));
    r.message = "solver failed with " + how;
    const std::string tail = tail_of_file(output_path);
    if (!tail.empty()) r.message += ": " + tail;
  } else {
    try {
      const StatusLine st = read_status_file(status_path);
      r.status = run_status_of(st.status);
      if (st.best_bound) r.best_bound = st.best_bound;
      if (r.status == RunStatus::kOptimal && !solution) {
        r.status = RunStatus::kError;
        r.message = "optimal status without a readable solution file";
      }
    } catch (const std::exception& e) {
      r.status = RunStatus::kError;
      r.message = e.what();
    }
  }
  if (!scratch.empty()) {
    r.solution_path.reset();
    std::filesystem::remove_all(scratch, ec);
  }
  return r;
}

void validate_paths(const DatasetSpec& ds) {
  for (const auto& p : ds.instance_paths)
    if (!std::filesystem::exists(p)) throw InputError("instance file not found: " + p.string());
}

RunLog execute(const DatasetSpec& ds, const BackendSpec& backend, const ConfigStore& store,
               RunLog log, const std::filesystem::path& log_path, const JobObserver& observer) {
  RunLogWriter writer(log_path, log);
  const Configuration protocol_gap{{{46, 0.0}}, ""};
  for (const auto& path : ds.instance_paths) {
    const std::string name = instance_name_from_path(path);
    if (log.find(name, backend.label)) continue;
    Configuration cfg = store.config(store.default_label);
    if (log.adapt_enabled) {
      try {
        const Instance inst = read_instance(path);
        cfg = adapt(name, extract_features(inst), store);
      } catch (const std::exception&) {
        // run_job reports the parse failure as an error record.
      }
    }
    Configuration run_cfg = merge(cfg, protocol_gap);
    run_cfg.label = cfg.label;
    RunRecord r = run_job(path, backend, run_cfg, ds.time_limit_s);
    writer.append(r);
    log.records.push_back(r);
    if (observer) observer(r);
  }
  return log;
}

}  // namespace

void BackendSpec::check() const {
  if (label.empty()) throw InputError("backend label must not be empty");
  if (kind == BackendKind::kExternal) {
    for (const char* ph : {"{instance}", "{config}", "{timelimit}", "{solution}"})
      if (command_template.find(ph) == std::string::npos)
        throw InputError(std::string("command template lacks placeholder ") + ph);
  }
}

double grace_seconds(double limit_s) { return std::max(0.05 * limit_s, 30.0); }

std::string expand_template(const std::string& tpl,
                            const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < tpl.size()) {
    if (tpl[i] == '{') {
      const std::size_t close = tpl.find('}', i);
      if (close != std::string::npos) {
        auto it = values.find(tpl.substr(i + 1, close - i - 1));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tpl[i++];
  }
  return out;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

RunRecord run_job(const std::filesystem::path& instance_path, const BackendSpec& backend,
                  const Configuration& cfg, double limit_s) {
  RunRecord r;
  r.instance_name = instance_name_from_path(instance_path);
  r.solver_label = backend.label;
  r.config_label = cfg.label;
  r.status = RunStatus::kError;
  r.started_at = utc_timestamp();
  r.host_descriptor = host_descriptor();
  try {
    backend.check();
    r = backend.kind == BackendKind::kBuiltin
            ? run_builtin(instance_path, backend, cfg, limit_s, std::move(r))
            : run_external(instance_path, backend, cfg, limit_s, std::move(r));
  } catch (const std::exception& e) {
    r.status = RunStatus::kError;
    r.message = e.what();
  }
  enforce_limit(r, limit_s);
  return r;
}

RunLog run_suite(const DatasetSpec& ds, const BackendSpec& backend, const ConfigStore& store,
                 bool adapt_enabled, const std::filesystem::path& log_path,
                 const JobObserver& observer) {
  ds.check();
  backend.check();
  validate_paths(ds);
  RunLog log;
  log.dataset = ds;
  log.protocol = Protocol{ds.time_limit_s, 0.0, 10.0};
  log.adapt_enabled = adapt_enabled;
  return execute(ds, backend, store, std::move(log), log_path, observer);
}

RunLog resume_suite(const DatasetSpec& ds, const BackendSpec& backend, const ConfigStore& store,
                    const RunLog& partial, const std::filesystem::path& log_path,
                    const JobObserver& observer) {
  ds.check();
  backend.check();
  if (partial.dataset.name != ds.name || partial.dataset.time_limit_s != ds.time_limit_s ||
      partial.dataset.objective_kind != ds.objective_kind ||
      partial.dataset.instance_names() != ds.instance_names())
    throw InputError("partial log belongs to a different dataset");
  validate_paths(ds);
  RunLog log;
  log.dataset = ds;
  log.protocol = partial.protocol;
  log.adapt_enabled = partial.adapt_enabled;
  const auto names = ds.instance_names();
  // Keep completed records in dataset order; drop error records so they re-run.
  for (const auto& name : names)
    if (const RunRecord* r = partial.find(name, backend.label); r && r->status != RunStatus::kError)
      log.records.push_back(*r);
  if (log.records.size() == names.size() && partial.records.size() == names.size()) return partial;
  return execute(ds, backend, store, std::move(log), log_path, observer);
}

}  // namespace milpbench
