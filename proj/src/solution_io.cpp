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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "milpbench/solver.hpp"

namespace milpbench {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_solution(const Solution& sol, std::ostream& out) {
  for (const auto& [name, v] : sol.values) out << name << " " << format_double(v) << "\n";
  out << "=obj= " << format_double(sol.objective) << "\n";
}

Solution read_solution(std::istream& in) {
  Solution sol;
  std::string line;
  std::size_t lineno = 0;
  bool have_obj = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream is(line);
    std::string name;
    if (!(is >> name) || name[0] == '#') continue;
    double v;
    if (!(is >> v))
      throw InputError("solution line " + std::to_string(lineno) + ": expected 'name value'");
    if (name == "=obj=") {
      sol.objective = v;
      have_obj = true;
    } else {
      sol.values[name] = v;
    }
  }
  if (!have_obj) throw InputError("solution file lacks an '=obj=' line");
  return sol;
}

Solution read_solution_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open solution file " + path.string());
  return read_solution(in);
}

void write_solution_file(const Solution& sol, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write solution file " + path.string());
  write_solution(sol, out);
}

void write_status_file(SolveStatus status, std::optional<double> best_bound,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write status file " + path.string());
  out << to_string(status);
  if (best_bound && std::isfinite(*best_bound)) out << " bound=" << format_double(*best_bound);
  out << "\n";
}

StatusLine read_status_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open status file " + path.string());
  std::string word;
  in >> word;
  auto st = solve_status_from_string(word);
  if (!st) throw InputError("unrecognized status '" + word + "' in " + path.string());
  StatusLine line{*st, std::nullopt};
  std::string extra;
  if (in >> extra && extra.rfind("bound=", 0) == 0) {
    try {
      line.best_bound = std::stod(extra.substr(6));
    } catch (const std::exception&) {
      throw InputError("bad bound in status file " + path.string());
    }
  }
  return line;
}

}  // namespace milpbench
