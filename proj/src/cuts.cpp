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

#include "milpbench/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace milpbench {

double Cut::activity(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < coef.size() && j < x.size(); ++j) s += coef[j] * x[j];
  return s;
}

double Cut::violation(const std::vector<double>& x) const {
  const double a = activity(x);
  return std::max({0.0, lower - a, a - upper});
}

namespace {

double frac(double v) { return v - std::floor(v); }

}  // namespace

std::vector<Cut> gomory_mixed_integer_cuts(const BoundedSimplex& simplex,
                                           const LpModel& model,
                                           const std::vector<bool>& integral,
                                           std::size_t max_cuts) {
  const std::size_t n = simplex.num_structural();
  const std::size_t m = simplex.num_rows();
  std::vector<Cut> cuts;
  for (std::size_t r = 0; r < m && cuts.size() < max_cuts; ++r) {
    const std::size_t b = simplex.basic_var(r);
    if (b >= n || !integral[b]) continue;
    const double f0 = frac(simplex.value(b));
    if (f0 < 0.005 || f0 > 0.995) continue;

    const std::vector<double> row = simplex.tableau_row(r);
    // In shifted nonbasics t_j >= 0 the row reads x_b + sum a'_j t_j = beta.
    // The cut is sum g_j t_j >= 1; expand t_j back to structurals, where a
    // slack t is a bound distance of the row activity a_i.x.
    std::vector<double> coef(n, 0.0);
    double rhs = 1.0;
    bool usable = true;
    double max_g = 0.0;
    for (std::size_t j = 0; j < n + m && usable; ++j) {
      const VarState st = simplex.state(j);
      if (st == VarState::kBasic) continue;
      const double a = row[j];
      if (std::fabs(a) < 1e-12) continue;
      const double lo = simplex.lower(j);
      const double hi = simplex.upper(j);
      if (lo == hi) continue;
      double ap;
      double shift_sign;  // t_j = shift_sign * (z_j - bound)
      double bound;
      if (st == VarState::kAtLower) {
        ap = a;
        shift_sign = 1.0;
        bound = lo;
      } else if (st == VarState::kAtUpper) {
        ap = -a;
        shift_sign = -1.0;
        bound = hi;
      } else {
        usable = false;
        break;
      }
      const bool is_int = j < n && integral[j];
      double g;
      if (is_int) {
        double fj = frac(ap);
        if (fj < 1e-9 || fj > 1.0 - 1e-9) fj = 0.0;
        g = fj <= f0 ? fj / f0 : (1.0 - fj) / (1.0 - f0);
      } else {
        g = ap >= 0 ? ap / f0 : -ap / (1.0 - f0);
      }
      if (g == 0.0) continue;
      max_g = std::max(max_g, std::fabs(g));
      // g * shift_sign * (z_j - bound)
      const double c = g * shift_sign;
      rhs += c * bound;
      if (j < n) {
        coef[j] += c;
      } else {
        const std::size_t i = j - n;
        for (std::size_t k = 0; k < n; ++k) coef[k] += c * model.at(i, k);
      }
    }
    if (!usable || max_g > 1e6) continue;

    // Drop tiny coefficients by weakening the rhs over the column's range.
    double max_abs = 0.0;
    for (double c : coef) max_abs = std::max(max_abs, std::fabs(c));
    if (max_abs < 1e-9) {
      // 0 >= rhs: no integer point is left under this basis.
      if (rhs > 1e-6) {
        Cut proof;
        proof.coef.assign(n, 0.0);
        proof.lower = rhs;
        cuts.push_back(std::move(proof));
        return cuts;
      }
      continue;
    }
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (coef[k] == 0.0 || std::fabs(coef[k]) >= 1e-9 * max_abs) continue;
      // c x >= c*ub when c < 0, c*lb when c > 0: move the worst case to rhs.
      const double worst = coef[k] > 0 ? model.col_upper[k] : model.col_lower[k];
      if (!std::isfinite(worst)) {
        ok = false;
        break;
      }
      rhs -= coef[k] * worst;
      coef[k] = 0.0;
    }
    if (!ok) continue;
    double min_abs = kInf;
    for (double c : coef)
      if (c != 0.0) min_abs = std::min(min_abs, std::fabs(c));
    if (max_abs / min_abs > 1e8) continue;

    Cut cut;
    cut.coef = std::move(coef);
    cut.lower = rhs - 1e-9 * std::max(1.0, std::fabs(rhs));
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = simplex.value(k);
    if (cut.violation(x) < 1e-6) continue;
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<Cut> cover_cuts(const LpModel& model, const std::vector<bool>& binary,
                            const std::vector<double>& point, std::size_t row_limit) {
  const std::size_t n = model.num_cols;
  std::vector<Cut> cuts;
  const std::size_t rows = std::min(row_limit, model.num_rows);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::size_t> support;
    bool all_binary = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (model.at(i, j) == 0.0) continue;
      if (!binary[j]) {
        all_binary = false;
        break;
      }
      support.push_back(j);
    }
    if (!all_binary || support.size() < 2) continue;

    for (int side = 0; side < 2; ++side) {
      // side 0: a.x <= hi ; side 1: -a.x <= -lo
      const double sgn = side == 0 ? 1.0 : -1.0;
      const double cap0 = side == 0 ? model.row_upper[i] : -model.row_lower[i];
      if (!std::isfinite(cap0)) continue;
      // Complement negative coefficients: literal y = x or 1 - x, weight |a|.
      double cap = cap0;
      struct Item {
        std::size_t var;
        double weight;
        bool complemented;
        double value;
      };
      std::vector<Item> items;
      for (std::size_t j : support) {
        const double a = sgn * model.at(i, j);
        if (a > 0) {
          items.push_back({j, a, false, point[j]});
        } else {
          cap -= a;  // a < 0: a x = a - a (1 - x) -> |a| * xbar, cap += |a|
          items.push_back({j, -a, true, 1.0 - point[j]});
        }
      }
      double total = 0.0;
      for (const auto& it : items) total += it.weight;
      if (cap < 0 || total <= cap + 1e-9) continue;

      std::vector<std::size_t> order(items.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
        return (1.0 - items[p].value) / items[p].weight <
               (1.0 - items[q].value) / items[q].weight;
      });
      std::vector<std::size_t> cover;
      double w = 0.0;
      for (std::size_t k : order) {
        cover.push_back(k);
        w += items[k].weight;
        if (w > cap + 1e-9) break;
      }
      if (w <= cap + 1e-9) continue;
      // Make minimal, dropping the least attractive members first.
      for (std::size_t pos = cover.size(); pos-- > 0;) {
        const std::size_t k = cover[pos];
        if (w - items[k].weight > cap + 1e-9) {
          w -= items[k].weight;
          cover.erase(cover.begin() + static_cast<std::ptrdiff_t>(pos));
        }
      }
      double lhs = 0.0;
      for (std::size_t k : cover) lhs += items[k].value;
      const double limit = static_cast<double>(cover.size()) - 1.0;
      if (lhs <= limit + 1e-6) continue;

      Cut cut;
      cut.coef.assign(n, 0.0);
      double ub = limit;
      for (std::size_t k : cover) {
        if (items[k].complemented) {
          cut.coef[items[k].var] -= 1.0;
          ub -= 1.0;
        } else {
          cut.coef[items[k].var] += 1.0;
        }
      }
      cut.upper = ub;
      cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

}  // namespace milpbench
