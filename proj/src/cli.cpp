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

#include "milpbench/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "milpbench/bench.hpp"
#include "milpbench/config.hpp"
#include "milpbench/report.hpp"
#include "milpbench/score.hpp"
#include "milpbench/solver.hpp"
#include "milpbench/validator.hpp"

namespace milpbench {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_instance_file(const std::filesystem::path& p) {
  const std::string s = p.filename().string();
  auto ends = [&](const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
  };
  return ends(".mps") || ends(".mps.gz") || ends(".MPS") || ends(".MPS.gz");
}

std::vector<std::filesystem::path> expand_instances(const std::vector<std::string>& args) {
  std::vector<std::filesystem::path> out;
  for (const auto& a : args) {
    if (std::filesystem::is_directory(a)) {
      std::vector<std::filesystem::path> found;
      for (const auto& e : std::filesystem::directory_iterator(a))
        if (e.is_regular_file() && is_instance_file(e.path())) found.push_back(e.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(a);
    }
  }
  if (out.empty()) throw InputError("no instance files given");
  return out;
}

ConfigStore store_from(const std::string& path) {
  std::string p = path;
  if (p.empty())
    if (const char* env = std::getenv("MILPBENCH_STORE")) p = env;
  return p.empty() ? minimal_store() : load_store_file(p);
}

void print_options(const ReferenceSolverOptions& o, std::ostream& out) {
  out << "  node_strategy = " << to_string(o.node_strategy) << "\n"
      << "  branch_rule = " << to_string(o.branch_rule) << "\n"
      << "  gomory_rounds = " << o.gomory_rounds << "\n"
      << "  cover_cuts = " << (o.cover_cuts ? "on" : "off") << "\n"
      << "  presolve_bound_tighten = " << (o.presolve_bound_tighten ? "on" : "off") << "\n"
      << "  presolve_coeff_reduce = " << (o.presolve_coeff_reduce ? "on" : "off") << "\n"
      << "  diving = " << (o.diving ? "on" : "off") << "\n"
      << "  rel_gap = " << fmt(o.rel_gap) << "\n"
      << "  threads_recorded = " << o.threads_recorded << "\n";
  if (!o.ignored.empty()) {
    out << "  ignored =";
    for (int i : o.ignored) out << " " << i;
    out << "\n";
  }
}

struct BackendArgs {
  std::string kind = "builtin";
  std::string label = "reference";
  std::string command;
  std::string solutions;
  std::vector<std::string> env;

  void add_to(CLI::App* app) {
    app->add_option("--backend", kind, "builtin or external")
        ->check(CLI::IsMember({"builtin", "external"}));
    app->add_option("--label", label, "solver label recorded in the log");
    app->add_option("--command", command,
                    "external command template with {instance} {config} {timelimit} {solution}");
    app->add_option("--solutions", solutions,
                    "solution path template using {name} {solver} {config_label}");
    app->add_option("--env", env, "KEY=VALUE passed to external solvers");
  }

  BackendSpec build() const {
    BackendSpec b;
    b.kind = kind == "external" ? BackendKind::kExternal : BackendKind::kBuiltin;
    b.label = label;
    b.command_template = command;
    b.solution_path_template = solutions;
    for (const auto& kv : env) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw InputError("--env expects KEY=VALUE, got " + kv);
      b.env[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    b.check();
    return b;
  }
};

int cmd_solve(const std::string& mps, const std::string& config_path,
              const std::string& store_path, double time_limit, long node_limit,
              const std::string& solution_path, std::string status_path, std::ostream& out) {
  const Instance inst = read_instance(mps);
  Configuration cfg;
  if (!config_path.empty()) {
    cfg = configuration_from_json(read_file(config_path));
  } else if (!store_path.empty() || std::getenv("MILPBENCH_STORE")) {
    const ConfigStore store = store_from(store_path);
    cfg = adapt(instance_name_from_path(mps), extract_features(inst), store);
  }
  ReferenceSolverOptions opts = map_to_reference(cfg);
  opts.time_limit_s = time_limit;
  if (node_limit > 0) opts.node_limit = node_limit;
  const SolveOutcome res = branch_and_bound(inst, opts);

  if (!solution_path.empty() && res.incumbent) write_solution_file(*res.incumbent, solution_path);
  if (status_path.empty() && !solution_path.empty()) status_path = solution_path + ".status";
  if (!status_path.empty()) {
    std::optional<double> bound;
    if (std::isfinite(res.best_bound) && res.status != SolveStatus::kError) bound = res.best_bound;
    write_status_file(res.status, bound, status_path);
  }
  out << "instance: " << instance_name_from_path(mps) << "\n";
  if (!cfg.label.empty()) out << "config: " << cfg.label << "\n";
  out << "status: " << to_string(res.status) << "\n";
  if (res.incumbent) out << "objective: " << fmt(res.incumbent->objective) << "\n";
  out << "best_bound: " << fmt(res.best_bound) << "\n"
      << "gap: " << fmt(res.gap) << "\n"
      << "nodes: " << res.nodes << "\n"
      << "ticks: " << res.deterministic_ticks << "\n"
      << "cuts: " << res.cuts_added << "\n"
      << "time_s: " << fmt(res.wall_time_s) << "\n";
  if (!res.message.empty()) out << "message: " << res.message << "\n";
  return res.status == SolveStatus::kError ? 2 : 0;
}

DatasetSpec dataset_from(const std::string& name, const std::vector<std::string>& instances,
                         double time_limit, const std::string& kind) {
  auto dn = dataset_name_from_string(name);
  if (!dn) throw InputError("unknown dataset '" + name + "'");
  DatasetSpec ds = DatasetSpec::named(*dn, expand_instances(instances));
  if (*dn == DatasetName::kCustom) {
    if (!(time_limit > 0)) throw InputError("custom datasets need --time-limit");
    ds.time_limit_s = time_limit;
    if (!kind.empty()) {
      auto k = objective_kind_from_string(kind);
      if (!k) throw InputError("unknown objective kind '" + kind + "'");
      ds.objective_kind = *k;
    }
  } else if (time_limit > 0 && time_limit != ds.time_limit_s) {
    throw InputError(std::string("dataset ") + to_string(*dn) + " uses a fixed time limit of " +
                     fmt(ds.time_limit_s) + " s");
  }
  ds.check();
  return ds;
}

void print_log_summary(const RunLog& log, std::ostream& out) {
  int counts[4] = {0, 0, 0, 0};
  for (const auto& r : log.records) ++counts[static_cast<int>(r.status)];
  out << "records: " << log.records.size() << " (optimal " << counts[0] << ", infeasible "
      << counts[1] << ", time_limit " << counts[2] << ", error " << counts[3] << ")\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"MILP benchmarking harness with a built-in reference solver", "milpbench"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one instance with the reference solver");
  std::string mps, config_path, store_path, solution_path, status_path;
  double time_limit = 1e30;
  long node_limit = 0;
  solve->add_option("instance", mps, "MPS file (.mps or .mps.gz)")->required();
  solve->add_option("--config", config_path, "configuration JSON ({label, assignments})");
  solve->add_option("--store", store_path, "configuration store to adapt from");
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("--node-limit", node_limit, "maximum number of nodes");
  solve->add_option("--solution", solution_path, "write the incumbent here");
  solve->add_option("--status", status_path, "status file (default <solution>.status)");

  // bench
  auto* bench = app.add_subcommand("bench", "benchmark suites");
  bench->require_subcommand(1);
  auto* brun = bench->add_subcommand("run", "run a dataset");
  std::string dataset = "custom", kind, log_out;
  std::vector<std::string> instances;
  double bench_limit = 0;
  bool use_adapt = false, use_default = false;
  BackendArgs backend_run;
  brun->add_option("--dataset", dataset,
                   "miplib240, pathological45, infeasibility32 or custom");
  brun->add_option("--instances", instances, "instance files or directories")->required();
  brun->add_option("--time-limit", bench_limit, "seconds (custom datasets)");
  brun->add_option("--objective", kind, "optimize or detect_infeasible (custom datasets)");
  brun->add_option("--store", store_path, "configuration store (default $MILPBENCH_STORE)");
  auto* fa = brun->add_flag("--adapt", use_adapt, "select configurations per instance");
  auto* fd = brun->add_flag("--default", use_default, "use the store default for all");
  fa->excludes(fd);
  brun->add_option("--out", log_out, "JSON-lines run log")->required();
  backend_run.add_to(brun);

  auto* bresume = bench->add_subcommand("resume", "complete a partial run log");
  std::string resume_log;
  BackendArgs backend_resume;
  bresume->add_option("--log", resume_log, "run log to complete")->required();
  bresume->add_option("--store", store_path, "configuration store (default $MILPBENCH_STORE)");
  backend_resume.add_to(bresume);

  auto* breport = bench->add_subcommand("report", "tables, CSV/JSON and SVG from two logs");
  std::string baseline_log, adapted_log, report_dir;
  breport->add_option("--baseline", baseline_log, "default-configuration log")->required();
  breport->add_option("--adapted", adapted_log, "adapted-configuration log")->required();
  breport->add_option("--out", report_dir, "output directory")->required();

  // validate
  auto* validate = app.add_subcommand("validate", "check a solution or audit a run log");
  std::string v_instance, v_solution, v_registry, v_log;
  Tolerances tols;
  double strict_tol = kDefaultStrictTol;
  validate->add_option("--instance", v_instance, "MPS file");
  validate->add_option("--solution", v_solution, "solution file");
  validate->add_option("--log", v_log, "audit every solution in a run log");
  validate->add_option("--registry", v_registry, "best-known objective registry (JSON)");
  validate->add_option("--row-tol", tols.row);
  validate->add_option("--bound-tol", tols.bound);
  validate->add_option("--int-tol", tols.integrality);
  validate->add_option("--strict-tol", strict_tol, "relative tolerance for 'better'");

  // config
  auto* config = app.add_subcommand("config", "configuration store tools");
  config->require_subcommand(1);
  auto* cshow = config->add_subcommand("show", "print the configuration chosen for an instance");
  std::string c_instance;
  cshow->add_option("--store", store_path, "configuration store (default $MILPBENCH_STORE)");
  cshow->add_option("--instance", c_instance, "MPS file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  if (solve->parsed())
    return cmd_solve(mps, config_path, store_path, time_limit, node_limit, solution_path,
                     status_path, out);

  if (brun->parsed()) {
    const DatasetSpec ds = dataset_from(dataset, instances, bench_limit, kind);
    const BackendSpec backend = backend_run.build();
    const ConfigStore store = store_from(store_path);
    const RunLog log = run_suite(ds, backend, store, use_adapt, log_out, [&](const RunRecord& r) {
      out << r.instance_name << " " << to_string(r.status) << " " << fmt(r.wall_time_s) << " s ["
          << r.config_label << "]\n";
    });
    print_log_summary(log, out);
    return 0;
  }
  if (bresume->parsed()) {
    const RunLog partial = read_log(resume_log);
    const BackendSpec backend = backend_resume.build();
    const ConfigStore store = store_from(store_path);
    const RunLog log = resume_suite(partial.dataset, backend, store, partial, resume_log,
                                    [&](const RunRecord& r) {
                                      out << r.instance_name << " " << to_string(r.status) << "\n";
                                    });
    print_log_summary(log, out);
    return 0;
  }
  if (breport->parsed()) {
    const ReportBundle b =
        write_comparison_report(read_log(baseline_log), read_log(adapted_log), report_dir);
    for (const auto& t : b.tables) out << t;
    for (const auto& p : b.csv_paths) out << "wrote " << p.string() << "\n";
    for (const auto& p : b.other_paths) out << "wrote " << p.string() << "\n";
    for (const auto& p : b.svg_paths) out << "wrote " << p.string() << "\n";
    return 0;
  }
  if (validate->parsed()) {
    BestKnownRegistry registry;
    if (!v_registry.empty()) registry = load_registry_file(v_registry);
    if (!v_log.empty()) {
      const RunLog log = read_log(v_log);
      std::map<std::string, std::filesystem::path> paths;
      for (const auto& p : log.dataset.instance_paths) paths[instance_name_from_path(p)] = p;
      for (const auto& e : audit_log_incumbents(log, paths, registry, tols, strict_tol)) {
        out << e.instance << " " << to_string(e.verdict);
        if (e.report) out << " objective=" << fmt(e.report->objective_recomputed);
        if (!e.note.empty()) out << " (" << e.note << ")";
        out << "\n";
      }
      return 0;
    }
    if (v_instance.empty() || v_solution.empty())
      throw InputError("validate needs --instance and --solution, or --log");
    const Instance inst = read_instance(v_instance);
    const Solution sol = read_solution_file(v_solution);
    const FeasibilityReport rep =
        check_feasibility(inst, sol, tols.row, tols.bound, tols.integrality);
    out << "feasible: " << (rep.feasible ? "yes" : "no") << "\n"
        << "max_row_violation: " << fmt(rep.max_row_violation)
        << (rep.worst_row.empty() ? "" : " (" + rep.worst_row + ")") << "\n"
        << "max_bound_violation: " << fmt(rep.max_bound_violation)
        << (rep.worst_variable.empty() ? "" : " (" + rep.worst_variable + ")") << "\n"
        << "max_integrality_violation: " << fmt(rep.max_integrality_violation) << "\n"
        << "objective: " << fmt(rep.objective_recomputed) << "\n";
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
    const std::string name = instance_name_from_path(v_instance);
    if (auto it = registry.find(name); it != registry.end()) {
      const char* verdict =
          rep.feasible ? to_string(compare_incumbent(rep.objective_recomputed, it->second, strict_tol))
                       : "infeasible";
      out << "verdict: " << verdict << " (best known " << fmt(it->second.objective) << ")\n";
    }
    return 0;
  }
  if (cshow->parsed()) {
    const ConfigStore store = store_from(store_path);
    const Instance inst = read_instance(c_instance);
    const std::string name = instance_name_from_path(c_instance);
    const Configuration cfg = adapt(name, extract_features(inst), store);
    out << "instance: " << name << "\n" << "config: " << cfg.label << "\n";
    for (const auto& [idx, v] : cfg.assignments)
      out << "  " << idx << " " << param_by_index(idx).name << " = " << format_value(v) << "\n";
    out << "reference options:\n";
    print_options(map_to_reference(cfg), out);
    return 0;
  }
  err << app.help();
  return 1;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace milpbench
