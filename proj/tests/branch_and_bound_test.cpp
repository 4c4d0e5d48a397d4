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

#include <gtest/gtest.h>

#include <random>

#include "milpbench/cuts.hpp"
#include "milpbench/lp.hpp"
#include "milpbench/solver.hpp"
#include "oracle.hpp"

namespace milpbench {
namespace {

using testing::binary_var;
using testing::int_var;
using testing::row;

ReferenceSolverOptions plain_options() {
  ReferenceSolverOptions o;
  o.presolve_bound_tighten = false;
  o.presolve_coeff_reduce = false;
  return o;
}

TEST(ComputeGap, Formula) {
  EXPECT_EQ(compute_gap(10.0, 10.0, ObjSense::kMinimize), 0.0);
  EXPECT_DOUBLE_EQ(compute_gap(10.0, 9.0, ObjSense::kMinimize), 0.1);
  EXPECT_TRUE(std::isinf(compute_gap(std::nullopt, 9.0, ObjSense::kMinimize)));
}

TEST(BranchAndBound, TwoBinaryKnapsack) {
  // Enumeration: (0,0)=0 (1,0)=-1 (0,1)=-2 (1,1) infeasible.
  const Instance inst = testing::two_binary_knapsack();
  ASSERT_EQ(testing::enumerate_optimum(inst).value(), -2.0);
  SolveOutcome out = branch_and_bound(inst, ReferenceSolverOptions{});
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  ASSERT_TRUE(out.incumbent);
  EXPECT_NEAR(out.incumbent->objective, -2.0, 1e-9);
  EXPECT_NEAR(out.incumbent->values.at("x1"), 0.0, 1e-9);
  EXPECT_NEAR(out.incumbent->values.at("x2"), 1.0, 1e-9);
  EXPECT_EQ(out.gap, 0.0);
}

TEST(BranchAndBound, GomoryRoundClosesSingleRowGap) {
  // min -y s.t. 2y <= 3, y integer >= 0: root y = 1.5, Chvatal rounding y <= 1.
  Instance inst;
  inst.variables = {int_var("y", 0, kInf, -1.0)};
  inst.rows = {row("c", {{0, 2.0}}, RowRelation::kLessEqual, 3.0)};
  ReferenceSolverOptions o = plain_options();

  LpModel model = LpModel::from_instance(inst);
  BoundedSimplex simplex(model);
  LpResult root = simplex.solve();
  ASSERT_EQ(root.status, LpStatus::kOptimal);
  EXPECT_NEAR(root.point[0], 1.5, 1e-12);
  auto cuts = gomory_mixed_integer_cuts(simplex, model, {true});
  ASSERT_EQ(cuts.size(), 1u);
  // Normalized, the cut is y <= 1.
  const auto& cut = cuts[0];
  ASSERT_LT(cut.coef[0], 0.0);
  EXPECT_NEAR(cut.lower / cut.coef[0], 1.0, 1e-6);

  o.gomory_rounds = 1;
  SolveOutcome out = branch_and_bound(inst, o);
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  EXPECT_NEAR(out.incumbent->objective, -1.0, 1e-9);
  EXPECT_EQ(out.nodes, 1);
  EXPECT_EQ(out.cuts_added, 1u);
}

TEST(BranchAndBound, ContradictoryIntegerBoundsInfeasible) {
  Instance inst;
  inst.variables = {int_var("x", -10, 10, 1.0)};
  inst.rows = {row("lo", {{0, 1.0}}, RowRelation::kGreaterEqual, 1.0),
               row("hi", {{0, 1.0}}, RowRelation::kLessEqual, 0.0)};
  for (bool pre : {false, true}) {
    ReferenceSolverOptions o;
    o.presolve_bound_tighten = pre;
    SolveOutcome out = branch_and_bound(inst, o);
    EXPECT_EQ(out.status, SolveStatus::kInfeasible);
    EXPECT_LE(out.nodes, 1);
    EXPECT_FALSE(out.incumbent);
  }
}

TEST(BranchAndBound, MaximizationAndMixedInteger) {
  // max 5x + 4y + 3z  s.t. 2x + 3y + z <= 5, 4x + y + 2z <= 11, 3x + 4y + 2z <= 8,
  // x, y integer in [0, 5], z continuous >= 0. Optimum 13 at (2, 0, 1).
  Instance inst;
  inst.sense = ObjSense::kMaximize;
  inst.variables = {int_var("x", 0, 5, 5), int_var("y", 0, 5, 4),
                    testing::cont_var("z", 0, kInf, 3)};
  inst.rows = {row("a", {{0, 2}, {1, 3}, {2, 1}}, RowRelation::kLessEqual, 5),
               row("b", {{0, 4}, {1, 1}, {2, 2}}, RowRelation::kLessEqual, 11),
               row("c", {{0, 3}, {1, 4}, {2, 2}}, RowRelation::kLessEqual, 8)};
  for (auto strategy : {NodeStrategy::kBestBound, NodeStrategy::kDepthFirst}) {
    ReferenceSolverOptions o;
    o.node_strategy = strategy;
    o.gomory_rounds = 2;
    SolveOutcome out = branch_and_bound(inst, o);
    ASSERT_EQ(out.status, SolveStatus::kOptimal);
    EXPECT_NEAR(out.incumbent->objective, 13.0, 1e-7);
    EXPECT_NEAR(out.best_bound, 13.0, 1e-7);
  }
}

TEST(BranchAndBound, TimeLimitPreservesIncumbentAndBound) {
  // Market-split style equalities: hard for LP-based branching.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 99);
  Instance inst;
  for (int j = 0; j < 30; ++j) inst.variables.push_back(binary_var("x" + std::to_string(j), 0));
  for (int i = 0; i < 4; ++i) {
    LinearRow r;
    r.name = "r" + std::to_string(i);
    double sum = 0;
    for (int j = 0; j < 30; ++j) {
      double a = d(rng);
      sum += a;
      r.coefficients.push_back({static_cast<std::size_t>(j), a});
    }
    r.relation = RowRelation::kEqual;
    r.rhs = std::floor(sum / 2);
    inst.rows.push_back(r);
  }
  ReferenceSolverOptions o;
  o.time_limit_s = 0.001;
  SolveOutcome out = branch_and_bound(inst, o);
  EXPECT_EQ(out.status, SolveStatus::kTimeLimit);
  EXPECT_LE(out.wall_time_s, 0.001 + 0.05);
}

TEST(BranchAndBound, NodeLimit) {
  std::mt19937_64 rng(11);
  Instance inst = testing::random_binary_instance(rng, 10, 3);
  ReferenceSolverOptions o = plain_options();
  o.node_limit = 1;
  SolveOutcome out = branch_and_bound(inst, o);
  EXPECT_TRUE(out.status == SolveStatus::kNodeLimit || out.status == SolveStatus::kOptimal ||
              out.status == SolveStatus::kInfeasible);
  EXPECT_LE(out.nodes, 1);
}

struct Combination {
  NodeStrategy node;
  BranchRule branch;
  int gomory;
};

std::vector<Combination> all_combinations() {
  std::vector<Combination> out;
  for (auto n : {NodeStrategy::kBestBound, NodeStrategy::kDepthFirst})
    for (auto b : {BranchRule::kMostFractional, BranchRule::kPseudocost})
      for (int g : {0, 1, 2}) out.push_back({n, b, g});
  return out;
}

TEST(BranchAndBoundProperty, MatchesEnumerationAcrossStrategies) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> nd(1, 10), md(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = testing::random_binary_instance(rng, nd(rng), md(rng));
    const auto expected = testing::enumerate_optimum(inst);
    for (const auto& c : all_combinations()) {
      ReferenceSolverOptions o;
      o.node_strategy = c.node;
      o.branch_rule = c.branch;
      o.gomory_rounds = c.gomory;
      o.cover_cuts = trial % 2 == 0;
      o.diving = trial % 3 == 0;
      SolveOutcome out = branch_and_bound(inst, o);
      if (!expected) {
        EXPECT_EQ(out.status, SolveStatus::kInfeasible) << "trial " << trial;
        continue;
      }
      ASSERT_EQ(out.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(out.incumbent->objective, *expected, 1e-6) << "trial " << trial;
      // Incumbent is feasible for the original instance.
      EXPECT_TRUE(testing::satisfies(inst, to_dense(inst, *out.incumbent), 1e-6));
    }
  }
}

TEST(BranchAndBoundProperty, OpenNodeCapKeepsOptimum) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = testing::random_binary_instance(rng, 10, 4);
    const auto expected = testing::enumerate_optimum(inst);
    for (std::size_t cap : {0, 1, 3}) {
      ReferenceSolverOptions o;
      o.max_open_nodes = cap;
      SolveOutcome out = branch_and_bound(inst, o);
      if (!expected) {
        EXPECT_EQ(out.status, SolveStatus::kInfeasible) << "trial " << trial;
        continue;
      }
      ASSERT_EQ(out.status, SolveStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(out.incumbent->objective, *expected, 1e-6) << "trial " << trial;
    }
  }
}

TEST(BranchAndBound, EvenRowOddRhsClosedAtRoot) {
  // 2 * sum(x) = 7 has no integer solution; one GMI round proves it.
  Instance inst;
  std::vector<Coefficient> coefs;
  for (std::size_t j = 0; j < 7; ++j) {
    inst.variables.push_back(binary_var("x" + std::to_string(j), 1.0));
    coefs.push_back({j, 2.0});
  }
  inst.rows = {row("parity", coefs, RowRelation::kEqual, 7.0)};
  ReferenceSolverOptions o = plain_options();
  SolveOutcome plain = branch_and_bound(inst, o);
  EXPECT_EQ(plain.status, SolveStatus::kInfeasible);
  EXPECT_GT(plain.nodes, 1);
  o.gomory_rounds = 1;
  SolveOutcome cut = branch_and_bound(inst, o);
  EXPECT_EQ(cut.status, SolveStatus::kInfeasible);
  EXPECT_EQ(cut.nodes, 1);
}

TEST(BranchAndBoundProperty, BoundHistoryIsMonotone) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = testing::random_binary_instance(rng, 10, 4);
    for (auto node : {NodeStrategy::kBestBound, NodeStrategy::kDepthFirst}) {
      ReferenceSolverOptions o = plain_options();
      o.node_strategy = node;
      SolveOutcome out = branch_and_bound(inst, o);
      const double dir = inst.sense == ObjSense::kMinimize ? 1.0 : -1.0;
      for (std::size_t k = 1; k < out.bound_history.size(); ++k)
        EXPECT_GE(dir * out.bound_history[k], dir * out.bound_history[k - 1] - 1e-9);
    }
  }
}

TEST(BranchAndBoundProperty, Deterministic) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Instance inst = testing::random_binary_instance(rng, 10, 5);
    ReferenceSolverOptions o;
    o.branch_rule = BranchRule::kPseudocost;
    o.gomory_rounds = 1;
    o.diving = true;
    SolveOutcome a = branch_and_bound(inst, o);
    SolveOutcome b = branch_and_bound(inst, o);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.deterministic_ticks, b.deterministic_ticks);
    ASSERT_EQ(a.incumbent.has_value(), b.incumbent.has_value());
    if (a.incumbent) EXPECT_EQ(a.incumbent->values, b.incumbent->values);
  }
}

// Cuts never remove integer feasible points: enumerate the box and check
// every generated cut over several rounds.
TEST(CutsProperty, NeverExcludeIntegerFeasiblePoints) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Instance inst = testing::random_binary_instance(rng, 8, 4);
    if (inst.sense == ObjSense::kMaximize)
      for (auto& v : inst.variables) v.cost = -v.cost;
    inst.sense = ObjSense::kMinimize;
    LpModel model = LpModel::from_instance(inst);
    const std::size_t original_rows = model.num_rows;
    std::vector<bool> integral(inst.variables.size(), true);
    std::vector<Cut> all;
    for (int round = 0; round < 3; ++round) {
      BoundedSimplex simplex(model);
      LpResult lp = simplex.solve();
      if (lp.status != LpStatus::kOptimal) break;
      auto cuts = gomory_mixed_integer_cuts(simplex, model, integral);
      auto covers = cover_cuts(model, integral, lp.point, original_rows);
      cuts.insert(cuts.end(), covers.begin(), covers.end());
      if (cuts.empty()) break;
      for (const auto& c : cuts) {
        EXPECT_GT(c.violation(lp.point), 1e-7);
        model.add_row(c.coef, c.lower, c.upper);
        all.push_back(c);
      }
    }
    testing::for_each_integer_point(inst, [&](const std::vector<double>& x) {
      if (!testing::satisfies(inst, x)) return;
      for (const auto& c : all) {
        EXPECT_LE(c.violation(x), 1e-7);
        ++checked;
      }
    });
  }
  EXPECT_GT(checked, 0);
}

TEST(Presolve, SingleRowBoundTightening) {
  Instance inst;
  inst.variables = {int_var("x", 0, kInf, -1), int_var("y", 0, kInf, -1)};
  inst.rows = {row("c", {{0, 1}, {1, 1}}, RowRelation::kLessEqual, 1)};
  ReferenceSolverOptions o;
  o.presolve_coeff_reduce = false;
  PresolveResult res = presolve(inst, o);
  ASSERT_FALSE(res.infeasible);
  ASSERT_EQ(res.reduced.variables.size(), 2u);
  EXPECT_EQ(res.reduced.variables[0].upper, 1.0);
  EXPECT_EQ(res.reduced.variables[1].upper, 1.0);
}

TEST(Presolve, DisabledIsIdentity) {
  std::mt19937_64 rng(1);
  Instance inst = testing::random_binary_instance(rng, 6, 3);
  PresolveResult res = presolve(inst, plain_options());
  EXPECT_EQ(write_mps_string(res.reduced), write_mps_string(inst));
  EXPECT_EQ(res.back_map.size(), inst.variables.size());
}

TEST(Presolve, CrossedRowsProvenInfeasible) {
  Instance inst;
  inst.variables = {testing::cont_var("x", 0, kInf, 0)};
  inst.rows = {row("a", {{0, 1}}, RowRelation::kGreaterEqual, 2),
               row("b", {{0, 1}}, RowRelation::kLessEqual, 1)};
  EXPECT_TRUE(presolve(inst, ReferenceSolverOptions{}).infeasible);
}

TEST(Presolve, FixedColumnsRestoreThroughBackMap) {
  // x + y <= 0 with x, y >= 0 integer fixes both; z remains.
  Instance inst;
  inst.variables = {int_var("x", 0, 5, 1), int_var("y", 0, 5, 1), int_var("z", 0, 3, -1)};
  inst.rows = {row("c", {{0, 1}, {1, 1}}, RowRelation::kLessEqual, 0),
               row("d", {{0, 1}, {2, 1}}, RowRelation::kLessEqual, 2)};
  PresolveResult res = presolve(inst, ReferenceSolverOptions{});
  ASSERT_FALSE(res.infeasible);
  ASSERT_EQ(res.reduced.variables.size(), 1u);
  EXPECT_EQ(res.back_map, std::vector<std::size_t>{2});
  const auto full = res.restore({2.0});
  EXPECT_EQ(full, (std::vector<double>{0.0, 0.0, 2.0}));
  SolveOutcome out = branch_and_bound(inst, ReferenceSolverOptions{});
  ASSERT_EQ(out.status, SolveStatus::kOptimal);
  EXPECT_NEAR(out.incumbent->objective, -2.0, 1e-9);
}

TEST(Presolve, CoefficientReductionKeepsIntegerSolutions) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst = testing::random_binary_instance(rng, 7, 3);
    ReferenceSolverOptions o;
    o.presolve_bound_tighten = false;
    PresolveResult res = presolve(inst, o);
    ASSERT_EQ(res.reduced.variables.size(), inst.variables.size());
    testing::for_each_integer_point(inst, [&](const std::vector<double>& x) {
      EXPECT_EQ(testing::satisfies(inst, x), testing::satisfies(res.reduced, x, 1e-9));
    });
  }
}

}  // namespace
}  // namespace milpbench
