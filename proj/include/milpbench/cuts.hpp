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
#include <vector>

#include "milpbench/lp.hpp"

namespace milpbench {

/// A cut lower <= coef . x <= upper over structural columns (one side is
/// infinite for every cut produced here).
struct Cut {
  std::vector<double> coef;
  double lower = -kInf;
  double upper = kInf;

  double activity(const std::vector<double>& x) const;
  double violation(const std::vector<double>& x) const;
};

/// Gomory mixed-integer cuts read from the optimal tableau of `simplex`, one
/// per basic integer column with fractional value. `integral[j]` marks
/// integer structural columns; their bounds must be integral.
std::vector<Cut> gomory_mixed_integer_cuts(const BoundedSimplex& simplex,
                                           const LpModel& model,
                                           const std::vector<bool>& integral,
                                           std::size_t max_cuts = 50);

/// Minimal cover inequalities for rows of `model` whose nonzeros are all on
/// binary columns, separated at `point`. Only violated cuts are returned.
/// Rows with index >= `row_limit` are skipped (cuts added earlier).
std::vector<Cut> cover_cuts(const LpModel& model, const std::vector<bool>& binary,
                            const std::vector<double>& point, std::size_t row_limit);

}  // namespace milpbench
