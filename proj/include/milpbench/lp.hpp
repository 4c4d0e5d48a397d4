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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "milpbench/instance.hpp"

namespace milpbench {

/// Dense LP in bounded row form:
///   min c.x   s.t.  row_lower <= A x <= row_upper,  col_lower <= x <= col_upper
struct LpModel {
  std::size_t num_cols = 0;
  std::size_t num_rows = 0;
  std::vector<double> cost;
  std::vector<double> col_lower;
  std::vector<double> col_upper;
  std::vector<double> matrix;  // row-major, num_rows * num_cols
  std::vector<double> row_lower;
  std::vector<double> row_upper;

  double at(std::size_t i, std::size_t j) const { return matrix[i * num_cols + j]; }
  void add_row(const std::vector<double>& dense, double lo, double hi);

  /// Relaxes integrality; maximization becomes minimization of -c.
  static LpModel from_instance(const Instance& inst);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kError, kInterrupted };

const char* to_string(LpStatus s);

enum class VarState : std::uint8_t { kBasic, kAtLower, kAtUpper, kFreeZero };

/// Basis over structural columns followed by row slacks.
struct Basis {
  std::vector<std::size_t> basic;  // variable index held by each basis row
  std::vector<VarState> state;     // num_cols + num_rows entries
};

struct LpResult {
  LpStatus status = LpStatus::kError;
  double objective = 0.0;     // meaningful when optimal
  std::vector<double> point;  // structural values
  Basis basis;
  std::int64_t iterations = 0;
};

struct LpTolerances {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  int degenerate_limit = 1000;  // consecutive degenerate pivots before Bland
  int refactor_interval = 64;
};

/// Two-phase bounded-variable primal simplex on a dense explicit inverse.
/// Phase 1 minimizes the sum of artificials added on rows the starting point
/// violates; phase 2 fixes artificials at zero and optimizes the true cost.
class BoundedSimplex {
 public:
  BoundedSimplex(const LpModel& model, LpTolerances tol = {});

  /// `should_stop` is polled periodically; returning true yields kInterrupted.
  LpResult solve(const std::function<bool()>& should_stop = {});

  /// Row `r` of B^-1 [A | -I] after a successful solve, one entry per
  /// structural and slack column. Row activity is a.x = s, so the row reads
  /// x_B(r) + sum_nonbasic coef_j * x_j = 0.
  std::vector<double> tableau_row(std::size_t r) const;

  std::size_t basic_var(std::size_t r) const { return head_[r]; }
  double value(std::size_t j) const { return x_[j]; }
  double lower(std::size_t j) const { return lower_[j]; }
  double upper(std::size_t j) const { return upper_[j]; }
  VarState state(std::size_t j) const { return state_[j]; }
  std::size_t num_rows() const { return m_; }
  std::size_t num_structural() const { return n_; }

 private:
  enum class Outcome { kOptimal, kUnbounded, kError, kInterrupted };

  void column(std::size_t j, std::vector<double>& out) const;
  double column_dot(std::size_t j, const std::vector<double>& y) const;
  bool refactor();
  void recompute_basics();
  Outcome iterate(const std::vector<double>& cost,
                  const std::function<bool()>& should_stop);

  const LpModel& model_;
  LpTolerances tol_;
  std::size_t n_;  // structural columns
  std::size_t m_;  // rows
  std::size_t total_;
  std::vector<double> sigma_;  // artificial column signs
  std::vector<double> x_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<VarState> state_;
  std::vector<std::size_t> head_;
  std::vector<double> binv_;  // m x m row-major
  std::int64_t iterations_ = 0;
  int since_refactor_ = 0;
};

/// LP relaxation of `inst`; the objective is reported in the instance sense
/// and includes the objective constant.
LpResult solve_lp(const Instance& inst, double feas_tol = 1e-7,
                  double opt_tol = 1e-9);

}  // namespace milpbench
