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

#include <algorithm>
#include <cmath>

#include "milpbench/solver.hpp"

namespace milpbench {

std::vector<double> PresolveResult::restore(
    const std::vector<double>& reduced_point) const {
  std::vector<double> full(original_vars, 0.0);
  for (std::size_t k = 0; k < back_map.size() && k < reduced_point.size(); ++k)
    full[back_map[k]] = reduced_point[k];
  for (auto [j, v] : fixed) full[j] = v;
  return full;
}

namespace {

// Running min/max activity of one row, counting infinite contributions
// separately so that "activity of the others" stays computable.
struct Activity {
  double min_finite = 0.0;
  double max_finite = 0.0;
  int min_inf = 0;
  int max_inf = 0;

  static Activity of(const LinearRow& row, const std::vector<Variable>& vars) {
    Activity a;
    for (const auto& c : row.coefficients) a.add(c.value, vars[c.var], 1.0);
    return a;
  }

  void add(double coef, const Variable& v, double sign) {
    const double lo_term = coef > 0 ? coef * v.lower : coef * v.upper;
    const double hi_term = coef > 0 ? coef * v.upper : coef * v.lower;
    if (std::isfinite(lo_term))
      min_finite += sign * lo_term;
    else
      min_inf += static_cast<int>(sign);
    if (std::isfinite(hi_term))
      max_finite += sign * hi_term;
    else
      max_inf += static_cast<int>(sign);
  }

  double min_act() const { return min_inf > 0 ? -kInf : min_finite; }
  double max_act() const { return max_inf > 0 ? kInf : max_finite; }
};

double margin(double v) { return 1e-9 * std::max(1.0, std::fabs(v)); }

// Returns false when the instance is proven infeasible.
bool tighten_bounds(Instance& inst, PresolveResult& res) {
  auto& vars = inst.variables;
  for (int pass = 0; pass < 50; ++pass) {
    bool changed = false;
    res.bound_passes = pass + 1;
    for (const auto& row : inst.rows) {
      auto [lo, hi] = row.bounds();
      Activity act = Activity::of(row, vars);
      double scale = 1.0;
      if (std::isfinite(lo)) scale = std::max(scale, std::fabs(lo));
      if (std::isfinite(hi)) scale = std::max(scale, std::fabs(hi));
      if (act.min_act() > hi + 1e-6 * scale || act.max_act() < lo - 1e-6 * scale)
        return false;
      for (const auto& c : row.coefficients) {
        Variable& v = vars[c.var];
        const double a = c.value;
        if (a == 0.0) continue;
        Activity others = act;
        others.add(a, v, -1.0);
        double new_lo = v.lower;
        double new_hi = v.upper;
        // a x <= hi - min(others)
        if (std::isfinite(hi) && others.min_inf == 0) {
          const double bound = (hi - others.min_finite) / a;
          if (a > 0)
            new_hi = std::min(new_hi, bound);
          else
            new_lo = std::max(new_lo, bound);
        }
        // a x >= lo - max(others)
        if (std::isfinite(lo) && others.max_inf == 0) {
          const double bound = (lo - others.max_finite) / a;
          if (a > 0)
            new_lo = std::max(new_lo, bound);
          else
            new_hi = std::min(new_hi, bound);
        }
        if (v.is_integral()) {
          if (std::isfinite(new_lo)) new_lo = std::ceil(new_lo - 1e-6);
          if (std::isfinite(new_hi)) new_hi = std::floor(new_hi + 1e-6);
        } else {
          // Accept only material improvements, slightly relaxed.
          if (new_lo > v.lower + 1e-6 * std::max(1.0, std::fabs(v.lower)))
            new_lo -= margin(new_lo);
          else
            new_lo = v.lower;
          if (new_hi < v.upper - 1e-6 * std::max(1.0, std::fabs(v.upper)))
            new_hi += margin(new_hi);
          else
            new_hi = v.upper;
        }
        if (new_lo > v.lower || new_hi < v.upper) {
          if (new_lo > new_hi + (v.is_integral() ? 0.0 : 1e-6)) return false;
          act.add(a, v, -1.0);
          if (new_lo > v.lower) {
            v.lower = new_lo;
            ++res.bounds_tightened;
          }
          if (new_hi < v.upper) {
            v.upper = new_hi;
            ++res.bounds_tightened;
          }
          if (v.lower > v.upper) v.upper = v.lower;  // continuous within margin
          act.add(a, v, 1.0);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return true;
}

// Coefficient tightening on a <= b rows (>= rows handled by negation) for
// binary columns: if the row is slack whenever x_j takes one value, shrink
// |a_j| so it stays slack but cuts off more of the relaxation.
void reduce_coefficients(Instance& inst, PresolveResult& res) {
  const auto& vars = inst.variables;
  for (auto& row : inst.rows) {
    if (row.relation != RowRelation::kLessEqual &&
        row.relation != RowRelation::kGreaterEqual)
      continue;
    const double sgn = row.relation == RowRelation::kLessEqual ? 1.0 : -1.0;
    double b = sgn * row.rhs;
    double maxact = 0.0;
    bool finite = true;
    for (const auto& c : row.coefficients) {
      const Variable& v = vars[c.var];
      const double a = sgn * c.value;
      const double t = a > 0 ? a * v.upper : a * v.lower;
      if (!std::isfinite(t)) {
        finite = false;
        break;
      }
      maxact += t;
    }
    if (!finite) continue;
    for (auto& c : row.coefficients) {
      const Variable& v = vars[c.var];
      if (v.kind != VarKind::kBinary || v.lower != 0.0 || v.upper != 1.0) continue;
      if (maxact <= b + 1e-9) break;  // redundant row
      const double a = sgn * c.value;
      if (a > 0) {
        const double d = b - (maxact - a);
        if (d > 1e-9) {
          c.value = sgn * (a - d);
          b -= d;
          maxact -= d;
          ++res.coefficients_reduced;
        }
      } else if (a < 0) {
        const double d = (b - a) - maxact;
        if (d > 1e-9) {
          c.value = sgn * (a + d);
          ++res.coefficients_reduced;
        }
      }
    }
    row.rhs = sgn * b;
  }
}

}  // namespace

PresolveResult presolve(const Instance& inst, const ReferenceSolverOptions& opts) {
  PresolveResult res;
  res.original_vars = inst.variables.size();
  res.reduced = inst;
  for (std::size_t j = 0; j < inst.variables.size(); ++j) res.back_map.push_back(j);
  if (!opts.presolve_bound_tighten && !opts.presolve_coeff_reduce) return res;

  Instance& work = res.reduced;
  for (const auto& v : work.variables) {
    if (v.lower > v.upper) {
      res.infeasible = true;
      return res;
    }
  }
  if (opts.presolve_bound_tighten) {
    if (!tighten_bounds(work, res)) {
      res.infeasible = true;
      return res;
    }
  }
  if (opts.presolve_coeff_reduce) reduce_coefficients(work, res);
  if (!opts.presolve_bound_tighten) return res;

  // Remove fixed columns, folding them into row sides and the objective.
  std::vector<long> new_index(work.variables.size(), -1);
  Instance out;
  out.name = work.name;
  out.sense = work.sense;
  out.objective_constant = work.objective_constant;
  res.back_map.clear();
  for (std::size_t j = 0; j < work.variables.size(); ++j) {
    const Variable& v = work.variables[j];
    if (v.lower == v.upper) {
      res.fixed[j] = v.lower;
      out.objective_constant += v.cost * v.lower;
    } else {
      new_index[j] = static_cast<long>(out.variables.size());
      res.back_map.push_back(j);
      out.variables.push_back(v);
    }
  }
  for (const auto& row : work.rows) {
    LinearRow r;
    r.name = row.name;
    r.relation = row.relation;
    r.range_width = row.range_width;
    double shift = 0.0;
    for (const auto& c : row.coefficients) {
      if (new_index[c.var] < 0)
        shift += c.value * work.variables[c.var].lower;
      else
        r.coefficients.push_back({static_cast<std::size_t>(new_index[c.var]), c.value});
    }
    r.rhs = row.rhs - shift;
    if (r.coefficients.empty()) {
      auto [lo, hi] = r.bounds();
      const double tol = 1e-6 * std::max(1.0, std::fabs(r.rhs));
      if (lo > tol || hi < -tol) {
        res.infeasible = true;
        return res;
      }
      continue;
    }
    out.rows.push_back(std::move(r));
  }
  normalize(out);
  res.reduced = std::move(out);
  return res;
}

}  // namespace milpbench
