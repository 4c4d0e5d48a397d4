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
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <tuple>

#include "milpbench/cuts.hpp"
#include "milpbench/lp.hpp"
#include "milpbench/solver.hpp"

namespace milpbench {

const char* to_string(NodeStrategy s) {
  return s == NodeStrategy::kBestBound ? "best_bound" : "depth_first";
}

const char* to_string(BranchRule r) {
  return r == BranchRule::kMostFractional ? "most_fractional" : "pseudocost";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kNodeLimit:
      return "node_limit";
    case SolveStatus::kError:
      return "error";
  }
  return "error";
}

std::optional<SolveStatus> solve_status_from_string(const std::string& s) {
  for (auto st : {SolveStatus::kOptimal, SolveStatus::kInfeasible,
                  SolveStatus::kTimeLimit, SolveStatus::kNodeLimit,
                  SolveStatus::kError})
    if (s == to_string(st)) return st;
  return std::nullopt;
}

Clock steady_clock_seconds() {
  return [] {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
  };
}

double compute_gap(std::optional<double> incumbent_obj, double best_bound,
                   ObjSense /*sense*/) {
  if (!incumbent_obj) return kInf;
  return std::fabs(*incumbent_obj - best_bound) /
         std::max(1e-10, std::fabs(*incumbent_obj));
}

std::vector<double> to_dense(const Instance& inst, const Solution& sol) {
  std::vector<double> x(inst.variables.size(), 0.0);
  for (std::size_t j = 0; j < inst.variables.size(); ++j) {
    auto it = sol.values.find(inst.variables[j].name);
    if (it != sol.values.end()) x[j] = it->second;
  }
  return x;
}

namespace {

struct BoundChange {
  std::size_t var;
  double lower;
  double upper;
};

struct Node {
  std::int64_t id = 0;
  int depth = 0;
  double bound = -kInf;  // parent LP objective (internal minimization)
  std::vector<BoundChange> changes;
  // Branching that created this node, for pseudocost updates.
  std::optional<std::size_t> branch_var;
  bool branch_up = false;
  double branch_dist = 0.0;
};

struct BestFirstOrder {
  bool operator()(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) const {
    return std::tie(a->bound, b->depth, a->id) < std::tie(b->bound, a->depth, b->id);
  }
};

class Search {
 public:
  Search(const Instance& original, const ReferenceSolverOptions& opts,
         const Clock& clock)
      : original_(original), opts_(opts), clock_(clock) {}

  SolveOutcome run();

 private:
  bool out_of_time() const { return clock_() >= deadline_; }
  LpResult solve_node_lp(const std::vector<BoundChange>& changes,
                         std::unique_ptr<BoundedSimplex>* keep = nullptr);
  std::pair<double, double> node_bounds(const std::vector<BoundChange>& changes,
                                        std::size_t var) const;
  void apply_bounds(const std::vector<BoundChange>& changes);
  bool is_integral_point(const std::vector<double>& x) const;
  void try_incumbent(const std::vector<double>& x,
                     const std::vector<BoundChange>& changes);
  std::size_t select_branch_var(const std::vector<double>& x) const;
  void update_pseudocost(const Node& node, double lp_obj, double parent_obj);
  double cutoff() const;
  bool prunable(double bound) const;
  void root_cuts(LpResult& root);
  void dive(const LpResult& root);
  SolveOutcome finish(SolveStatus status);

  const Instance& original_;
  ReferenceSolverOptions opts_;
  const Clock& clock_;
  double start_ = 0.0;
  double deadline_ = 0.0;

  double sign_ = 1.0;
  PresolveResult pre_;
  LpModel model_;
  std::vector<double> root_lower_;
  std::vector<double> root_upper_;
  std::vector<bool> integral_;
  std::vector<bool> binary_;
  bool integral_objective_ = false;
  bool has_continuous_ = false;

  std::optional<double> incumbent_obj_;  // reduced-space minimization, no constant
  std::vector<double> incumbent_x_;      // reduced space
  std::int64_t nodes_ = 0;
  std::int64_t ticks_ = 0;
  std::int64_t next_id_ = 0;
  std::size_t lp_errors_ = 0;
  double global_bound_ = -kInf;
  std::vector<double> bound_history_;
  std::size_t cuts_added_ = 0;

  std::vector<double> pc_sum_[2];
  std::vector<int> pc_count_[2];
  std::vector<double> pc_init_;
};

void Search::apply_bounds(const std::vector<BoundChange>& changes) {
  model_.col_lower = root_lower_;
  model_.col_upper = root_upper_;
  for (const auto& c : changes) {
    model_.col_lower[c.var] = c.lower;
    model_.col_upper[c.var] = c.upper;
  }
}

LpResult Search::solve_node_lp(const std::vector<BoundChange>& changes,
                               std::unique_ptr<BoundedSimplex>* keep) {
  apply_bounds(changes);
  LpTolerances tol;
  tol.feas_tol = opts_.feas_tol;
  tol.opt_tol = opts_.opt_tol;
  auto simplex = std::make_unique<BoundedSimplex>(model_, tol);
  LpResult res = simplex->solve([this] { return out_of_time(); });
  ticks_ += res.iterations;
  if (keep) *keep = std::move(simplex);
  return res;
}

std::pair<double, double> Search::node_bounds(const std::vector<BoundChange>& changes,
                                              std::size_t var) const {
  std::pair<double, double> b{root_lower_[var], root_upper_[var]};
  for (const auto& c : changes)
    if (c.var == var) b = {c.lower, c.upper};
  return b;
}

bool Search::is_integral_point(const std::vector<double>& x) const {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (integral_[j] && std::fabs(x[j] - std::round(x[j])) > opts_.int_tol) return false;
  return true;
}

double Search::cutoff() const {
  if (!incumbent_obj_) return kInf;
  const double inc = *incumbent_obj_;
  if (integral_objective_) return inc - 1.0 + 1e-6;
  const double tol = std::max({opts_.abs_gap, opts_.rel_gap * std::fabs(inc),
                               1e-9 * std::max(1.0, std::fabs(inc))});
  return inc - tol;
}

bool Search::prunable(double bound) const { return bound >= cutoff(); }

void Search::try_incumbent(const std::vector<double>& x,
                           const std::vector<BoundChange>& changes) {
  std::vector<double> cand = x;
  for (std::size_t j = 0; j < cand.size(); ++j)
    if (integral_[j]) cand[j] = std::round(cand[j]);
  if (has_continuous_) {
    // Re-optimize the continuous part with integers fixed at rounded values.
    std::vector<BoundChange> fixed = changes;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (integral_[j]) fixed.push_back({j, cand[j], cand[j]});
    LpResult lp = solve_node_lp(fixed);
    if (lp.status != LpStatus::kOptimal) return;
    cand = lp.point;
    for (std::size_t j = 0; j < cand.size(); ++j)
      if (integral_[j]) cand[j] = std::round(cand[j]);
  }
  // Check against the reduced instance rows (cuts are implied by them).
  const Instance& p = pre_.reduced;
  for (std::size_t j = 0; j < cand.size(); ++j) {
    const auto& v = p.variables[j];
    const double tol = 1e-6 * std::max(1.0, std::fabs(cand[j]));
    if (cand[j] < v.lower - tol || cand[j] > v.upper + tol) return;
  }
  for (const auto& row : p.rows) {
    double act = 0.0;
    for (const auto& c : row.coefficients) act += c.value * cand[c.var];
    auto [lo, hi] = row.bounds();
    const double tol_lo = 1e-7 * std::max(1.0, std::isfinite(lo) ? std::fabs(lo) : 1.0);
    const double tol_hi = 1e-7 * std::max(1.0, std::isfinite(hi) ? std::fabs(hi) : 1.0);
    if (act < lo - tol_lo || act > hi + tol_hi) return;
  }
  double obj = 0.0;  // same space as node LP objectives (no constant)
  for (std::size_t j = 0; j < cand.size(); ++j) obj += p.variables[j].cost * cand[j];
  if (!incumbent_obj_ || obj < *incumbent_obj_ - 1e-12) {
    incumbent_obj_ = obj;
    incumbent_x_ = cand;
  }
}

std::size_t Search::select_branch_var(const std::vector<double>& x) const {
  std::size_t best = x.size();
  double best_score = -1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!integral_[j]) continue;
    const double f = x[j] - std::floor(x[j]);
    if (f <= opts_.int_tol || f >= 1.0 - opts_.int_tol) continue;
    double score;
    if (opts_.branch_rule == BranchRule::kMostFractional) {
      score = std::min(f, 1.0 - f);
    } else {
      auto pc = [&](int dir) {
        return pc_count_[dir][j] > 0 ? pc_sum_[dir][j] / pc_count_[dir][j]
                                     : pc_init_[j];
      };
      score = std::max(1e-6, f * pc(0)) * std::max(1e-6, (1.0 - f) * pc(1));
    }
    if (score > best_score) {  // strict: ties keep the lowest index
      best_score = score;
      best = j;
    }
  }
  return best;
}

void Search::update_pseudocost(const Node& node, double lp_obj, double parent_obj) {
  if (!node.branch_var || node.branch_dist <= 0) return;
  const int dir = node.branch_up ? 1 : 0;
  const double gain = std::max(0.0, lp_obj - parent_obj) / node.branch_dist;
  pc_sum_[dir][*node.branch_var] += gain;
  ++pc_count_[dir][*node.branch_var];
}

void Search::root_cuts(LpResult& root) {
  const std::size_t original_rows = model_.num_rows;
  const int rounds = std::max(opts_.gomory_rounds, opts_.cover_cuts ? 5 : 0);
  for (int round = 0; round < rounds; ++round) {
    if (out_of_time() || root.status != LpStatus::kOptimal) return;
    if (is_integral_point(root.point)) return;
    std::vector<Cut> cuts;
    if (round < opts_.gomory_rounds) {
      std::unique_ptr<BoundedSimplex> simplex;
      LpResult again = solve_node_lp({}, &simplex);
      if (again.status == LpStatus::kOptimal)
        cuts = gomory_mixed_integer_cuts(*simplex, model_, integral_);
    }
    if (opts_.cover_cuts) {
      auto covers = cover_cuts(model_, binary_, root.point, original_rows);
      cuts.insert(cuts.end(), covers.begin(), covers.end());
    }
    if (cuts.empty()) return;
    for (const auto& c : cuts) model_.add_row(c.coef, c.lower, c.upper);
    cuts_added_ += cuts.size();
    root = solve_node_lp({});
  }
}

void Search::dive(const LpResult& root) {
  std::vector<BoundChange> changes;
  LpResult lp = root;
  const std::size_t max_depth = model_.num_cols + 1;
  for (std::size_t depth = 0; depth < max_depth; ++depth) {
    if (lp.status != LpStatus::kOptimal || out_of_time()) return;
    if (prunable(lp.objective)) return;
    if (is_integral_point(lp.point)) {
      try_incumbent(lp.point, changes);
      return;
    }
    // Fix the least fractional variable to its nearest integer.
    std::size_t pick = lp.point.size();
    double best = 2.0;
    for (std::size_t j = 0; j < lp.point.size(); ++j) {
      if (!integral_[j]) continue;
      const double f = lp.point[j] - std::floor(lp.point[j]);
      const double dist = std::min(f, 1.0 - f);
      if (dist <= opts_.int_tol) continue;
      if (dist < best) {
        best = dist;
        pick = j;
      }
    }
    if (pick == lp.point.size()) return;
    const double near = std::round(lp.point[pick]);
    const double far = near > lp.point[pick] ? std::floor(lp.point[pick])
                                             : std::ceil(lp.point[pick]);
    changes.push_back({pick, near, near});
    LpResult next = solve_node_lp(changes);
    if (next.status != LpStatus::kOptimal) {
      changes.back() = {pick, far, far};
      next = solve_node_lp(changes);
    }
    lp = std::move(next);
  }
}

SolveOutcome Search::finish(SolveStatus status) {
  SolveOutcome out;
  out.status = status;
  out.nodes = nodes_;
  out.deterministic_ticks = ticks_;
  out.cuts_added = cuts_added_;
  if (incumbent_obj_) {
    const std::vector<double> full = pre_.restore(incumbent_x_);
    Solution sol;
    for (std::size_t j = 0; j < original_.variables.size(); ++j)
      sol.values[original_.variables[j].name] = full[j];
    sol.objective = original_.objective_value(full);
    out.incumbent = sol;
  }
  double bound = global_bound_;
  if (status == SolveStatus::kOptimal && incumbent_obj_) bound = *incumbent_obj_;
  if (incumbent_obj_) bound = std::min(bound, *incumbent_obj_);
  const double offset = pre_.reduced.objective_constant;
  out.best_bound = sign_ * (bound + offset);
  for (double b : bound_history_) out.bound_history.push_back(sign_ * (b + offset));
  std::optional<double> inc_user;
  if (out.incumbent) inc_user = out.incumbent->objective;
  out.gap = compute_gap(inc_user, out.best_bound, original_.sense);
  if (status == SolveStatus::kOptimal) out.gap = 0.0;
  out.wall_time_s = clock_() - start_;
  return out;
}

SolveOutcome Search::run() {
  start_ = clock_();
  deadline_ = start_ + opts_.time_limit_s;
  sign_ = original_.sense == ObjSense::kMaximize ? -1.0 : 1.0;

  if (!validate_instance(original_).empty()) {
    SolveOutcome o;
    o.status = SolveStatus::kError;
    o.message = "invalid instance";
    return o;
  }
  // Work in minimization form.
  Instance work = original_;
  if (sign_ < 0) {
    work.sense = ObjSense::kMinimize;
    for (auto& v : work.variables) v.cost = -v.cost;
    work.objective_constant = -work.objective_constant;
  }
  pre_ = presolve(work, opts_);
  if (pre_.infeasible) {
    global_bound_ = kInf;
    return finish(SolveStatus::kInfeasible);
  }
  const Instance& p = pre_.reduced;
  model_ = LpModel::from_instance(p);
  root_lower_ = model_.col_lower;
  root_upper_ = model_.col_upper;
  const std::size_t n = p.variables.size();
  integral_.resize(n);
  binary_.resize(n);
  integral_objective_ = true;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = p.variables[j];
    integral_[j] = v.is_integral();
    binary_[j] = v.is_integral() && v.lower >= 0 && v.upper <= 1;
    if (!v.is_integral()) has_continuous_ = true;
    if (v.cost != 0.0 && (!v.is_integral() || v.cost != std::round(v.cost)))
      integral_objective_ = false;
  }
  for (int d = 0; d < 2; ++d) {
    pc_sum_[d].assign(n, 0.0);
    pc_count_[d].assign(n, 0);
  }
  pc_init_.resize(n);
  for (std::size_t j = 0; j < n; ++j) pc_init_[j] = std::fabs(p.variables[j].cost);

  if (out_of_time()) return finish(SolveStatus::kTimeLimit);

  LpResult root = solve_node_lp({});
  nodes_ = 1;
  switch (root.status) {
    case LpStatus::kOptimal:
      break;
    case LpStatus::kInfeasible:
      global_bound_ = kInf;
      return finish(SolveStatus::kInfeasible);
    case LpStatus::kInterrupted:
      return finish(SolveStatus::kTimeLimit);
    case LpStatus::kUnbounded: {
      auto o = finish(SolveStatus::kError);
      o.message = "LP relaxation is unbounded";
      return o;
    }
    case LpStatus::kError: {
      auto o = finish(SolveStatus::kError);
      o.message = "numerical failure in root LP";
      return o;
    }
  }
  root_cuts(root);
  if (root.status == LpStatus::kInfeasible) {
    global_bound_ = kInf;
    return finish(SolveStatus::kInfeasible);
  }
  if (root.status == LpStatus::kInterrupted) return finish(SolveStatus::kTimeLimit);
  if (root.status != LpStatus::kOptimal) {
    auto o = finish(SolveStatus::kError);
    o.message = "numerical failure in root LP after cuts";
    return o;
  }
  global_bound_ = root.objective;
  bound_history_.push_back(global_bound_);
  if (opts_.diving) dive(root);

  // Open nodes; the root's LP is reused for the first node.
  std::set<std::unique_ptr<Node>, BestFirstOrder> best_first;
  std::vector<std::unique_ptr<Node>> stack;
  std::multiset<double> open_bounds;

  auto push = [&](std::unique_ptr<Node> node) {
    open_bounds.insert(node->bound);
    if (opts_.node_strategy == NodeStrategy::kBestBound &&
        best_first.size() < opts_.max_open_nodes)
      best_first.insert(std::move(node));
    else
      stack.push_back(std::move(node));
  };
  auto pop = [&]() -> std::unique_ptr<Node> {
    std::unique_ptr<Node> node;
    if (!stack.empty()) {
      node = std::move(stack.back());
      stack.pop_back();
    } else {
      node = std::move(best_first.extract(best_first.begin()).value());
    }
    open_bounds.erase(open_bounds.find(node->bound));
    return node;
  };
  auto empty = [&] { return best_first.empty() && stack.empty(); };
  auto record_bound = [&](double current) {
    double b = open_bounds.empty() ? kInf : *open_bounds.begin();
    b = std::min(b, current);
    if (incumbent_obj_) b = std::min(b, *incumbent_obj_);
    if (!std::isfinite(b) && !incumbent_obj_) b = global_bound_;
    global_bound_ = b;
    bound_history_.push_back(global_bound_);
  };

  auto root_node = std::make_unique<Node>();
  root_node->id = next_id_++;
  root_node->bound = root.objective;
  push(std::move(root_node));
  bool first = true;

  while (!empty()) {
    if (out_of_time()) return finish(SolveStatus::kTimeLimit);
    if (opts_.node_limit && nodes_ >= *opts_.node_limit && !first)
      return finish(SolveStatus::kNodeLimit);
    const std::unique_ptr<Node> node = pop();
    if (prunable(node->bound)) {
      record_bound(kInf);
      continue;
    }
    LpResult lp;
    if (first) {
      lp = root;
      first = false;
    } else {
      lp = solve_node_lp(node->changes);
      ++nodes_;
    }
    if (lp.status == LpStatus::kInterrupted) {
      open_bounds.insert(node->bound);  // still open
      return finish(SolveStatus::kTimeLimit);
    }
    if (lp.status == LpStatus::kError) {
      ++lp_errors_;
      record_bound(kInf);
      continue;
    }
    if (lp.status != LpStatus::kOptimal) {
      record_bound(kInf);
      continue;
    }
    update_pseudocost(*node, lp.objective, node->bound);
    const double node_obj = std::max(lp.objective, node->bound);
    if (prunable(node_obj)) {
      record_bound(kInf);
      continue;
    }
    if (is_integral_point(lp.point)) {
      try_incumbent(lp.point, node->changes);
      record_bound(kInf);
      if (incumbent_obj_ && prunable(global_bound_)) break;
      continue;
    }
    const std::size_t var = select_branch_var(lp.point);
    if (var == lp.point.size()) {
      record_bound(kInf);
      continue;
    }
    const double val = lp.point[var];
    const double down_ub = std::floor(val);
    const double up_lb = std::ceil(val);
    auto make_child = [&](bool up) {
      auto child = std::make_unique<Node>();
      child->id = next_id_++;
      child->depth = node->depth + 1;
      child->bound = node_obj;
      child->changes = node->changes;
      auto [lo, hi] = node_bounds(node->changes, var);
      if (up)
        lo = up_lb;
      else
        hi = down_ub;
      child->changes.push_back({var, lo, hi});
      child->branch_var = var;
      child->branch_up = up;
      child->branch_dist = up ? up_lb - val : val - down_ub;
      return child;
    };
    // Depth-first explores the nearer rounding first (pushed last).
    const bool up_first = val - down_ub >= 0.5;
    if (up_first) {
      push(make_child(false));
      push(make_child(true));
    } else {
      push(make_child(true));
      push(make_child(false));
    }
    record_bound(kInf);
    if (incumbent_obj_ && prunable(global_bound_)) break;
  }

  if (lp_errors_ > 0) {
    auto o = finish(SolveStatus::kError);
    o.message = std::to_string(lp_errors_) + " node LPs failed numerically";
    return o;
  }
  if (!incumbent_obj_) {
    global_bound_ = kInf;
    return finish(SolveStatus::kInfeasible);
  }
  return finish(SolveStatus::kOptimal);
}

}  // namespace

SolveOutcome branch_and_bound(const Instance& inst, const ReferenceSolverOptions& opts,
                              const Clock& clock) {
  Search search(inst, opts, clock);
  return search.run();
}

}  // namespace milpbench
