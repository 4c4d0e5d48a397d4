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

#include "milpbench/lp.hpp"

#include <algorithm>
#include <cmath>

namespace milpbench {

void LpModel::add_row(const std::vector<double>& dense, double lo, double hi) {
  matrix.insert(matrix.end(), dense.begin(), dense.end());
  row_lower.push_back(lo);
  row_upper.push_back(hi);
  ++num_rows;
}

LpModel LpModel::from_instance(const Instance& inst) {
  LpModel lp;
  lp.num_cols = inst.variables.size();
  const double sign = inst.sense == ObjSense::kMaximize ? -1.0 : 1.0;
  for (const auto& v : inst.variables) {
    lp.cost.push_back(sign * v.cost);
    lp.col_lower.push_back(v.lower);
    lp.col_upper.push_back(v.upper);
  }
  std::vector<double> dense(lp.num_cols);
  for (const auto& r : inst.rows) {
    std::fill(dense.begin(), dense.end(), 0.0);
    for (const auto& c : r.coefficients) dense[c.var] += c.value;
    auto [lo, hi] = r.bounds();
    lp.add_row(dense, lo, hi);
  }
  return lp;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kError:
      return "error";
    case LpStatus::kInterrupted:
      return "interrupted";
  }
  return "error";
}

// Variables: [0, n) structural, [n, n+m) slacks with column -e_i (so the
// slack equals the row activity), [n+m, n+2m) artificials with column
// sigma_i * e_i.
BoundedSimplex::BoundedSimplex(const LpModel& model, LpTolerances tol)
    : model_(model),
      tol_(tol),
      n_(model.num_cols),
      m_(model.num_rows),
      total_(model.num_cols + 2 * model.num_rows) {}

void BoundedSimplex::column(std::size_t j, std::vector<double>& out) const {
  out.assign(m_, 0.0);
  if (j < n_) {
    for (std::size_t i = 0; i < m_; ++i) out[i] = model_.at(i, j);
  } else if (j < n_ + m_) {
    out[j - n_] = -1.0;
  } else {
    out[j - n_ - m_] = sigma_[j - n_ - m_];
  }
}

double BoundedSimplex::column_dot(std::size_t j,
                                  const std::vector<double>& y) const {
  if (j < n_) {
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s += model_.at(i, j) * y[i];
    return s;
  }
  if (j < n_ + m_) return -y[j - n_];
  return sigma_[j - n_ - m_] * y[j - n_ - m_];
}

bool BoundedSimplex::refactor() {
  // Gauss-Jordan with partial pivoting on [B | I].
  std::vector<double> b(m_ * m_, 0.0);
  std::vector<double> col;
  for (std::size_t r = 0; r < m_; ++r) {
    column(head_[r], col);
    for (std::size_t i = 0; i < m_; ++i) b[i * m_ + r] = col[i];
  }
  std::vector<double> inv(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
  for (std::size_t c = 0; c < m_; ++c) {
    std::size_t piv = c;
    double best = std::fabs(b[c * m_ + c]);
    for (std::size_t i = c + 1; i < m_; ++i) {
      double v = std::fabs(b[i * m_ + c]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-11) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < m_; ++k) {
        std::swap(b[c * m_ + k], b[piv * m_ + k]);
        std::swap(inv[c * m_ + k], inv[piv * m_ + k]);
      }
    }
    const double d = b[c * m_ + c];
    for (std::size_t k = 0; k < m_; ++k) {
      b[c * m_ + k] /= d;
      inv[c * m_ + k] /= d;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == c) continue;
      const double f = b[i * m_ + c];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        b[i * m_ + k] -= f * b[c * m_ + k];
        inv[i * m_ + k] -= f * inv[c * m_ + k];
      }
    }
  }
  binv_ = std::move(inv);
  since_refactor_ = 0;
  return true;
}

void BoundedSimplex::recompute_basics() {
  // B x_B = -N x_N
  std::vector<double> rhs(m_, 0.0);
  for (std::size_t j = 0; j < total_; ++j) {
    if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
    if (j < n_) {
      for (std::size_t i = 0; i < m_; ++i) rhs[i] -= model_.at(i, j) * x_[j];
    } else if (j < n_ + m_) {
      rhs[j - n_] += x_[j];
    } else {
      rhs[j - n_ - m_] -= sigma_[j - n_ - m_] * x_[j];
    }
  }
  for (std::size_t r = 0; r < m_; ++r) {
    double s = 0.0;
    for (std::size_t k = 0; k < m_; ++k) s += binv_[r * m_ + k] * rhs[k];
    x_[head_[r]] = s;
  }
}

BoundedSimplex::Outcome BoundedSimplex::iterate(
    const std::vector<double>& cost, const std::function<bool()>& should_stop) {
  std::vector<double> y(m_), alpha(m_), col;
  int degenerate_run = 0;
  const std::int64_t max_iter = 200 * static_cast<std::int64_t>(total_) + 20000;
  std::int64_t local = 0;
  while (true) {
    if (since_refactor_ >= tol_.refactor_interval) {
      if (!refactor()) return Outcome::kError;
      recompute_basics();
    }
    if (++local > max_iter) return Outcome::kError;
    if (should_stop && (local & 63) == 0 && should_stop())
      return Outcome::kInterrupted;
    const bool bland = degenerate_run >= tol_.degenerate_limit;

    // Duals y = c_B B^-1.
    std::fill(y.begin(), y.end(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost[head_[r]];
      if (cb == 0.0) continue;
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * binv_[r * m_ + k];
    }

    // Pricing: Dantzig, or lowest eligible index under Bland.
    std::size_t enter = total_;
    double enter_d = 0.0;
    double best_score = 0.0;
    for (std::size_t j = 0; j < total_; ++j) {
      const VarState st = state_[j];
      if (st == VarState::kBasic) continue;
      if (lower_[j] == upper_[j]) continue;
      const double d = cost[j] - column_dot(j, y);
      bool eligible = false;
      if (d < -tol_.opt_tol && (st == VarState::kAtLower || st == VarState::kFreeZero))
        eligible = true;
      if (d > tol_.opt_tol && (st == VarState::kAtUpper || st == VarState::kFreeZero))
        eligible = true;
      if (!eligible) continue;
      if (bland) {
        enter = j;
        enter_d = d;
        break;
      }
      if (std::fabs(d) > best_score) {
        best_score = std::fabs(d);
        enter = j;
        enter_d = d;
      }
    }
    if (enter == total_) return Outcome::kOptimal;

    const double dir = enter_d < 0 ? 1.0 : -1.0;
    column(enter, col);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t k = 0; k < m_; ++k) {
        if (col[k] != 0.0) s += binv_[r * m_ + k] * col[k];
      }
      alpha[r] = s;
    }

    // Harris two-pass ratio test. Basic r moves by -dir*alpha[r] per unit step.
    double theta_relaxed = kInf;
    for (std::size_t r = 0; r < m_; ++r) {
      if (std::fabs(alpha[r]) < tol_.pivot_tol) continue;
      const std::size_t b = head_[r];
      const double delta = -dir * alpha[r];
      double t = kInf;
      if (delta < 0 && std::isfinite(lower_[b]))
        t = (x_[b] - lower_[b] + tol_.feas_tol) / -delta;
      else if (delta > 0 && std::isfinite(upper_[b]))
        t = (upper_[b] - x_[b] + tol_.feas_tol) / delta;
      theta_relaxed = std::min(theta_relaxed, t);
    }
    std::size_t leave = m_;
    double theta = kInf;
    double best_alpha = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (std::fabs(alpha[r]) < tol_.pivot_tol) continue;
      const std::size_t b = head_[r];
      const double delta = -dir * alpha[r];
      double t = kInf;
      if (delta < 0 && std::isfinite(lower_[b]))
        t = (x_[b] - lower_[b]) / -delta;
      else if (delta > 0 && std::isfinite(upper_[b]))
        t = (upper_[b] - x_[b]) / delta;
      if (!std::isfinite(t)) continue;
      t = std::max(t, 0.0);
      if (bland) {
        if (t < theta - 1e-12 ||
            (std::fabs(t - theta) <= 1e-12 && leave < m_ && b < head_[leave])) {
          theta = t;
          leave = r;
        }
      } else if (t <= theta_relaxed && std::fabs(alpha[r]) > best_alpha) {
        best_alpha = std::fabs(alpha[r]);
        theta = t;
        leave = r;
      }
    }

    const double span = upper_[enter] - lower_[enter];
    const bool flip = std::isfinite(span) && span <= theta;
    if (leave == m_ && !flip) {
      if (!std::isfinite(theta)) return Outcome::kUnbounded;
    }
    const double step = flip ? span : theta;

    x_[enter] += dir * step;
    for (std::size_t r = 0; r < m_; ++r) x_[head_[r]] -= dir * step * alpha[r];
    ++iterations_;
    degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

    if (flip) {
      state_[enter] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      x_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
      continue;
    }

    const std::size_t out = head_[leave];
    const double delta = -dir * alpha[leave];
    if (delta < 0) {
      state_[out] = VarState::kAtLower;
      x_[out] = lower_[out];
    } else {
      state_[out] = VarState::kAtUpper;
      x_[out] = upper_[out];
    }
    state_[enter] = VarState::kBasic;
    head_[leave] = enter;

    // Eta update of the explicit inverse.
    const double piv = alpha[leave];
    double* prow = &binv_[leave * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] /= piv;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave || alpha[r] == 0.0) continue;
      const double f = alpha[r];
      double* row = &binv_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    ++since_refactor_;
  }
}

LpResult BoundedSimplex::solve(const std::function<bool()>& should_stop) {
  LpResult res;
  x_.assign(total_, 0.0);
  lower_.assign(total_, 0.0);
  upper_.assign(total_, 0.0);
  state_.assign(total_, VarState::kAtLower);
  sigma_.assign(m_, 1.0);
  head_.assign(m_, 0);
  iterations_ = 0;

  for (std::size_t j = 0; j < n_; ++j) {
    lower_[j] = model_.col_lower[j];
    upper_[j] = model_.col_upper[j];
    if (lower_[j] > upper_[j] + tol_.feas_tol) {
      res.status = LpStatus::kInfeasible;
      return res;
    }
    if (std::isfinite(lower_[j])) {
      x_[j] = lower_[j];
      state_[j] = VarState::kAtLower;
    } else if (std::isfinite(upper_[j])) {
      x_[j] = upper_[j];
      state_[j] = VarState::kAtUpper;
    } else {
      x_[j] = 0.0;
      state_[j] = VarState::kFreeZero;
    }
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t s = n_ + i;
    lower_[s] = model_.row_lower[i];
    upper_[s] = model_.row_upper[i];
    if (lower_[s] > upper_[s] + tol_.feas_tol) {
      res.status = LpStatus::kInfeasible;
      return res;
    }
  }

  // Crash basis: slack where the starting point satisfies the row, else an
  // artificial absorbing the violation.
  std::vector<double> phase1_cost(total_, 0.0);
  bool need_phase1 = false;
  for (std::size_t i = 0; i < m_; ++i) {
    double act = 0.0;
    for (std::size_t j = 0; j < n_; ++j) act += model_.at(i, j) * x_[j];
    const std::size_t s = n_ + i;
    const std::size_t a = n_ + m_ + i;
    if (act >= lower_[s] - tol_.feas_tol && act <= upper_[s] + tol_.feas_tol) {
      head_[i] = s;
      state_[s] = VarState::kBasic;
      x_[s] = act;
      lower_[a] = upper_[a] = 0.0;
      state_[a] = VarState::kAtLower;
    } else {
      const double target = act < lower_[s] ? lower_[s] : upper_[s];
      x_[s] = target;
      state_[s] = act < lower_[s] ? VarState::kAtLower : VarState::kAtUpper;
      sigma_[i] = target > act ? 1.0 : -1.0;
      head_[i] = a;
      state_[a] = VarState::kBasic;
      lower_[a] = 0.0;
      upper_[a] = kInf;
      x_[a] = std::fabs(target - act);
      phase1_cost[a] = 1.0;
      need_phase1 = true;
    }
  }
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    binv_[i * m_ + i] = head_[i] < n_ + m_ ? -1.0 : sigma_[i];
  since_refactor_ = 0;

  auto finish = [&](LpStatus st) {
    res.status = st;
    res.iterations = iterations_;
    return res;
  };

  if (need_phase1) {
    Outcome o = iterate(phase1_cost, should_stop);
    if (o == Outcome::kInterrupted) return finish(LpStatus::kInterrupted);
    if (o != Outcome::kOptimal) return finish(LpStatus::kError);
    if (!refactor()) return finish(LpStatus::kError);
    recompute_basics();
    double infeas = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      infeas += std::max(0.0, x_[n_ + m_ + i]) * (phase1_cost[n_ + m_ + i]);
      for (double b : {model_.row_lower[i], model_.row_upper[i]})
        if (std::isfinite(b)) scale = std::max(scale, std::fabs(b));
    }
    if (infeas > tol_.feas_tol * scale) return finish(LpStatus::kInfeasible);
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t a = n_ + m_ + i;
    lower_[a] = upper_[a] = 0.0;
    if (state_[a] != VarState::kBasic) {
      state_[a] = VarState::kAtLower;
      x_[a] = 0.0;
    }
  }

  std::vector<double> cost(total_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) cost[j] = model_.cost[j];
  Outcome o = iterate(cost, should_stop);
  if (o == Outcome::kInterrupted) return finish(LpStatus::kInterrupted);
  if (o == Outcome::kUnbounded) return finish(LpStatus::kUnbounded);
  if (o != Outcome::kOptimal) return finish(LpStatus::kError);
  if (!refactor()) return finish(LpStatus::kError);
  recompute_basics();

  res.point.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
  // Snap structurals onto bounds they sit at within tolerance.
  for (std::size_t j = 0; j < n_; ++j) {
    if (std::fabs(res.point[j] - lower_[j]) <= tol_.feas_tol) res.point[j] = lower_[j];
    if (std::fabs(res.point[j] - upper_[j]) <= tol_.feas_tol) res.point[j] = upper_[j];
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n_; ++j) res.objective += model_.cost[j] * res.point[j];
  res.basis.basic = head_;
  res.basis.state.assign(state_.begin(),
                         state_.begin() + static_cast<std::ptrdiff_t>(n_ + m_));
  return finish(LpStatus::kOptimal);
}

std::vector<double> BoundedSimplex::tableau_row(std::size_t r) const {
  std::vector<double> row(n_ + m_, 0.0);
  const double* brow = &binv_[r * m_];
  for (std::size_t j = 0; j < n_ + m_; ++j) {
    if (j < n_) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += brow[i] * model_.at(i, j);
      row[j] = s;
    } else {
      row[j] = -brow[j - n_];
    }
  }
  return row;
}

LpResult solve_lp(const Instance& inst, double feas_tol, double opt_tol) {
  LpModel model = LpModel::from_instance(inst);
  LpTolerances tol;
  tol.feas_tol = feas_tol;
  tol.opt_tol = opt_tol;
  BoundedSimplex simplex(model, tol);
  LpResult res = simplex.solve();
  if (res.status == LpStatus::kOptimal) {
    if (inst.sense == ObjSense::kMaximize) res.objective = -res.objective;
    res.objective += inst.objective_constant;
  }
  return res;
}

}  // namespace milpbench
