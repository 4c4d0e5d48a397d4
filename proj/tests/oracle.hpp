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

// Test-only oracles and instance builders. Nothing here calls into the
// solver; optima come from exhaustive enumeration.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "milpbench/instance.hpp"

namespace milpbench::testing {

inline Variable binary_var(const std::string& name, double cost) {
  return Variable{name, 0.0, 1.0, VarKind::kBinary, cost};
}

inline Variable int_var(const std::string& name, double lo, double hi, double cost) {
  return Variable{name, lo, hi, VarKind::kInteger, cost};
}

inline Variable cont_var(const std::string& name, double lo, double hi, double cost) {
  return Variable{name, lo, hi, VarKind::kContinuous, cost};
}

inline LinearRow row(const std::string& name, std::vector<Coefficient> coefs,
                     RowRelation rel, double rhs) {
  LinearRow r;
  r.name = name;
  r.coefficients = std::move(coefs);
  r.relation = rel;
  r.rhs = rhs;
  return r;
}

/// min -x1 - 2 x2  s.t. x1 + x2 <= 1, binaries.
inline Instance two_binary_knapsack() {
  Instance inst;
  inst.name = "knap2";
  inst.variables = {binary_var("x1", -1.0), binary_var("x2", -2.0)};
  inst.rows = {row("c1", {{0, 1.0}, {1, 1.0}}, RowRelation::kLessEqual, 1.0)};
  return inst;
}

inline bool satisfies(const Instance& inst, const std::vector<double>& x,
                      double tol = 1e-9) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < inst.variables[j].lower - tol || x[j] > inst.variables[j].upper + tol)
      return false;
  for (const auto& r : inst.rows) {
    double act = 0.0;
    for (const auto& c : r.coefficients) act += c.value * x[c.var];
    auto [lo, hi] = r.bounds();
    if (act < lo - tol || act > hi + tol) return false;
  }
  return true;
}

/// Calls fn(x) for every integer point in the (finite) box of a pure
/// integer instance.
template <typename Fn>
void for_each_integer_point(const Instance& inst, Fn&& fn) {
  const std::size_t n = inst.variables.size();
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = inst.variables[j].lower;
  while (true) {
    fn(x);
    std::size_t j = 0;
    for (; j < n; ++j) {
      if (x[j] + 1 <= inst.variables[j].upper) {
        x[j] += 1;
        break;
      }
      x[j] = inst.variables[j].lower;
    }
    if (j == n) return;
  }
}

/// Exhaustive optimum in the instance sense; nullopt when infeasible.
inline std::optional<double> enumerate_optimum(const Instance& inst) {
  std::optional<double> best;
  const bool maximize = inst.sense == ObjSense::kMaximize;
  for_each_integer_point(inst, [&](const std::vector<double>& x) {
    if (!satisfies(inst, x)) return;
    const double obj = inst.objective_value(x);
    if (!best || (maximize ? obj > *best : obj < *best)) best = obj;
  });
  return best;
}

/// Random pure-binary instance with integer data, n <= 10, m <= 6.
inline Instance random_binary_instance(std::mt19937_64& rng, std::size_t n,
                                       std::size_t m) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> rel(0, 9);
  Instance inst;
  inst.name = "rand";
  for (std::size_t j = 0; j < n; ++j)
    inst.variables.push_back(binary_var("x" + std::to_string(j), coef(rng)));
  for (std::size_t i = 0; i < m; ++i) {
    LinearRow r;
    r.name = "r" + std::to_string(i);
    double sum_pos = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      int a = coef(rng);
      if (a == 0 || rel(rng) < 3) continue;
      r.coefficients.push_back({j, static_cast<double>(a)});
      if (a > 0) sum_pos += a;
    }
    if (r.coefficients.empty()) r.coefficients.push_back({i % n, 1.0});
    const int kind = rel(rng);
    const double rhs = std::floor(sum_pos / 2.0) + coef(rng) / 3;
    if (kind < 6) {
      r.relation = RowRelation::kLessEqual;
      r.rhs = rhs;
    } else if (kind < 9) {
      r.relation = RowRelation::kGreaterEqual;
      r.rhs = -std::fabs(rhs) / 2;
    } else {
      r.relation = RowRelation::kEqual;
      // Equality through a feasible-looking value: the activity at all-ones/2.
      double act = 0.0;
      for (std::size_t k = 0; k < r.coefficients.size(); k += 2)
        act += r.coefficients[k].value;
      r.rhs = act;
    }
    inst.rows.push_back(std::move(r));
  }
  if (rel(rng) < 3) inst.sense = ObjSense::kMaximize;
  return inst;
}

}  // namespace milpbench::testing
