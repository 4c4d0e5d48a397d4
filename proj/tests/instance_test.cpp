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
#include <zlib.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "milpbench/instance.hpp"
#include "oracle.hpp"

namespace milpbench {
namespace {

const char* kTwoBinary = R"(NAME          tiny
ROWS
 N  obj
 L  c1
COLUMNS
    x         obj       1            c1        1
    y         obj       1            c1        1
RHS
    RHS       c1        1
BOUNDS
 BV BND       x
 BV BND       y
ENDATA
)";

std::string with_bounds(const std::string& bounds) {
  std::string text = kTwoBinary;
  const auto at = text.find("BOUNDS");
  return text.substr(0, at) + "BOUNDS\n" + bounds + "ENDATA\n";
}

TEST(ParseMps, TwoBinaryFile) {
  Instance inst = parse_mps_string(kTwoBinary);
  EXPECT_EQ(inst.name, "tiny");
  ASSERT_EQ(inst.variables.size(), 2u);
  for (const auto& v : inst.variables) {
    EXPECT_EQ(v.kind, VarKind::kBinary);
    EXPECT_EQ(v.lower, 0.0);
    EXPECT_EQ(v.upper, 1.0);
    EXPECT_EQ(v.cost, 1.0);
  }
  ASSERT_EQ(inst.rows.size(), 1u);
  EXPECT_EQ(inst.rows[0].relation, RowRelation::kLessEqual);
  EXPECT_EQ(inst.rows[0].rhs, 1.0);
  EXPECT_EQ(inst.rows[0].coefficients.size(), 2u);
  EXPECT_EQ(inst.sense, ObjSense::kMinimize);
}

TEST(ParseMps, MinusInfinityBound) {
  Instance inst = parse_mps_string(with_bounds(" MI BND x\n"));
  EXPECT_EQ(inst.variables[0].lower, -kInf);
  EXPECT_EQ(inst.variables[0].kind, VarKind::kContinuous);
}

TEST(ParseMps, UndeclaredRowReportsLine) {
  std::string text = kTwoBinary;
  text.replace(text.find("y         obj       1            c1"), 34,
               "y         obj       1            zz");
  try {
    parse_mps_string(text);
    FAIL() << "expected MpsError";
  } catch (const MpsError& e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
}

TEST(ParseMps, ErrorPaths) {
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\n L c\n L c\nCOLUMNS\nRHS\nENDATA\n"),
               MpsError);  // duplicate row
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\nCOLUMNS\n x obj 1\nRHS\n"),
               MpsError);  // no ENDATA
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\nCOLUMNS\n x obj 1\n y obj 1\n"
                                " x obj 2\nENDATA\n"),
               MpsError);  // duplicate column after another column
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\nBOGUS\nENDATA\n"), MpsError);
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\nCOLUMNS\n x obj abc\nENDATA\n"),
               MpsError);
  EXPECT_THROW(parse_mps_string("NAME a\nROWS\n N obj\nRHS\n RHS nope 1\nENDATA\n"),
               MpsError);
}

TEST(ParseMps, MarkersRangesObjsenseAndConstant) {
  const char* text = R"(* comment line
NAME          mixed
OBJSENSE
    MAX
ROWS
 N  cost
 L  lim
 G  low
 E  bal
 E  neg
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    n         cost      2            lim       1
    n         bal       1            neg       1
    MARKER                 'MARKER'                 'INTEND'
    z         cost      1            low       1
    z         lim       1
RHS
    RHS       cost      -5           lim       10
    RHS       low       1            bal       3
    RHS       neg       4
RANGES
    RNG       lim       4            low       2
    RNG       bal       2            neg       -3
BOUNDS
 UP BND       z         8
ENDATA
)";
  Instance inst = parse_mps_string(text);
  EXPECT_EQ(inst.sense, ObjSense::kMaximize);
  EXPECT_EQ(inst.objective_constant, 5.0);
  const auto& n = inst.variables[*inst.find_variable("n")];
  EXPECT_EQ(n.kind, VarKind::kInteger);
  EXPECT_EQ(n.lower, 0.0);
  EXPECT_EQ(n.upper, kInf);
  const auto& z = inst.variables[*inst.find_variable("z")];
  EXPECT_EQ(z.kind, VarKind::kContinuous);
  EXPECT_EQ(z.upper, 8.0);
  using B = std::pair<double, double>;
  EXPECT_EQ(inst.rows[0].bounds(), (B{6.0, 10.0}));  // L: [rhs-|R|, rhs]
  EXPECT_EQ(inst.rows[1].bounds(), (B{1.0, 3.0}));   // G: [rhs, rhs+|R|]
  EXPECT_EQ(inst.rows[2].bounds(), (B{3.0, 5.0}));   // E, R>0: [rhs, rhs+R]
  EXPECT_EQ(inst.rows[3].bounds(), (B{1.0, 4.0}));   // E, R<0: [rhs+R, rhs]
}

TEST(ParseMps, BoundCodes) {
  Instance inst = parse_mps_string(with_bounds(
      " UP BND x 4\n LO BND x -2\n FR BND y\n"));
  EXPECT_EQ(inst.variables[0].lower, -2.0);
  EXPECT_EQ(inst.variables[0].upper, 4.0);
  EXPECT_EQ(inst.variables[0].kind, VarKind::kContinuous);
  EXPECT_EQ(inst.variables[1].lower, -kInf);
  EXPECT_EQ(inst.variables[1].upper, kInf);

  inst = parse_mps_string(with_bounds(" UI BND x 7\n LI BND x 2\n FX BND y 3.5\n"));
  EXPECT_EQ(inst.variables[0].kind, VarKind::kInteger);
  EXPECT_EQ(inst.variables[0].lower, 2.0);
  EXPECT_EQ(inst.variables[0].upper, 7.0);
  EXPECT_EQ(inst.variables[1].lower, 3.5);
  EXPECT_EQ(inst.variables[1].upper, 3.5);

  inst = parse_mps_string(with_bounds(" PL BND x\n UP BND y -1\n"));
  EXPECT_EQ(inst.variables[0].upper, kInf);
  EXPECT_EQ(inst.variables[1].lower, -kInf);
  EXPECT_EQ(inst.variables[1].upper, -1.0);

  // Without a bound-set name.
  inst = parse_mps_string(with_bounds(" UP x 4\n MI y\n"));
  EXPECT_EQ(inst.variables[0].upper, 4.0);
  EXPECT_EQ(inst.variables[1].lower, -kInf);
}

TEST(ParseMps, BinaryKeepsTighterIntersection) {
  Instance inst = parse_mps_string(with_bounds(" BV BND x\n UP BND x 5\n BV BND y\n"
                                               " LO BND y 1\n"));
  EXPECT_EQ(inst.variables[0].kind, VarKind::kBinary);
  EXPECT_EQ(inst.variables[0].upper, 1.0);
  EXPECT_EQ(inst.variables[1].lower, 1.0);
  EXPECT_EQ(inst.variables[1].upper, 1.0);
  EXPECT_EQ(inst.variables[1].kind, VarKind::kInteger);
}

TEST(ParseMps, DeterministicOnIdenticalBytes) {
  EXPECT_EQ(write_mps_string(parse_mps_string(kTwoBinary)),
            write_mps_string(parse_mps_string(kTwoBinary)));
}

TEST(ReadInstance, PlainAndGzip) {
  const auto dir = std::filesystem::temp_directory_path() / "milpbench_instance_test";
  std::filesystem::create_directories(dir);
  const auto plain = dir / "tiny.mps";
  { std::ofstream(plain) << kTwoBinary; }
  const auto gz = dir / "tiny.mps.gz";
  gzFile f = gzopen(gz.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  gzputs(f, kTwoBinary);
  gzclose(f);
  const Instance a = read_instance(plain);
  const Instance b = read_instance(gz);
  EXPECT_EQ(write_mps_string(a), write_mps_string(b));
  EXPECT_EQ(instance_name_from_path(gz), "tiny");
  EXPECT_EQ(instance_name_from_path(plain), "tiny");
  EXPECT_THROW(read_instance(dir / "absent.mps"), InputError);
  std::filesystem::remove_all(dir);
}

TEST(ValidateInstance, Diagnostics) {
  Instance inst = parse_mps_string(kTwoBinary);
  EXPECT_TRUE(validate_instance(inst).empty());

  Instance crossed = inst;
  crossed.variables[0].kind = VarKind::kInteger;
  crossed.variables[0].lower = 2;
  crossed.variables[0].upper = 1;
  auto d = validate_instance(crossed);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kCrossedBounds);

  Instance empty_row = inst;
  empty_row.rows.push_back(testing::row("e", {}, RowRelation::kLessEqual, 0));
  d = validate_instance(empty_row);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kEmptyRow);

  Instance dup = inst;
  dup.rows[0].coefficients.push_back({0, 3.0});
  d = validate_instance(dup);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].kind, DiagnosticKind::kDuplicateCoefficient);
}

TEST(ExtractFeatures, Counts) {
  FeatureVector f = extract_features(parse_mps_string(kTwoBinary));
  EXPECT_EQ(f.n_vars, 2u);
  EXPECT_EQ(f.n_bin_vars, 2u);
  EXPECT_EQ(f.n_rows, 1u);
  EXPECT_EQ(f.n_nonzeros, 2u);
  EXPECT_EQ(f.density, 1.0);

  Instance none;
  none.variables = {testing::cont_var("x", 0, 1, 1)};
  f = extract_features(none);
  EXPECT_EQ(f.n_rows, 0u);
  EXPECT_EQ(f.density, 0.0);

  // 3 variables, 2 rows, 4 nonzeros: density 4/6.
  Instance three;
  three.variables = {testing::cont_var("a", 0, 1, 0), testing::int_var("b", 0, 5, 0),
                     testing::binary_var("c", 0)};
  three.rows = {testing::row("r1", {{0, 1}, {1, -3}}, RowRelation::kEqual, 0),
                testing::row("r2", {{1, 0.5}, {2, 2}}, RowRelation::kLessEqual, 1)};
  f = extract_features(three);
  EXPECT_DOUBLE_EQ(f.density, 4.0 / 6.0);
  EXPECT_EQ(f.n_cont_vars, 1u);
  EXPECT_EQ(f.n_int_vars, 1u);
  EXPECT_EQ(f.n_bin_vars, 1u);
  EXPECT_EQ(f.n_eq_rows, 1u);
  EXPECT_EQ(f.n_ineq_rows, 1u);
  EXPECT_EQ(f.max_abs_coeff, 3.0);
  EXPECT_EQ(f.min_abs_nonzero_coeff, 0.5);
  EXPECT_EQ(f.get("n_int_vars"), 1.0);
  EXPECT_TRUE(FeatureVector::has_field("density"));
  EXPECT_FALSE(FeatureVector::has_field("colour"));
}

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_real_distribution<double> val(-100, 100);
  Instance inst;
  inst.name = "rt";
  inst.sense = pick(rng) < 3 ? ObjSense::kMaximize : ObjSense::kMinimize;
  inst.objective_constant = pick(rng) < 5 ? 0.0 : val(rng);
  const int n = 1 + pick(rng);
  for (int j = 0; j < n; ++j) {
    Variable v;
    v.name = "v" + std::to_string(j);
    v.cost = pick(rng) < 3 ? 0.0 : val(rng);
    switch (pick(rng) % 5) {
      case 0: v = testing::binary_var(v.name, v.cost); break;
      case 1: v.kind = VarKind::kInteger; v.lower = -3; v.upper = 9; break;
      case 2: v.lower = -kInf; v.upper = kInf; break;
      case 3: v.lower = -kInf; v.upper = val(rng); break;
      default: v.lower = val(rng) - 200; v.upper = v.lower + 50; break;
    }
    inst.variables.push_back(v);
  }
  const int m = pick(rng);
  for (int i = 0; i < m; ++i) {
    LinearRow r;
    r.name = "r" + std::to_string(i);
    for (int j = 0; j < n; ++j)
      if (pick(rng) < 5) r.coefficients.push_back({static_cast<std::size_t>(j), val(rng)});
    if (r.coefficients.empty()) r.coefficients.push_back({0, 1.0});
    r.relation = static_cast<RowRelation>(pick(rng) % 4);
    r.rhs = val(rng);
    if (r.relation == RowRelation::kRange) r.range_width = std::fabs(val(rng));
    inst.rows.push_back(r);
  }
  return inst;
}

TEST(MpsProperty, WriteParseRoundTrip) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng);
    const Instance back = parse_mps_string(write_mps_string(inst));
    EXPECT_EQ(back.name, inst.name);
    EXPECT_EQ(back.sense, inst.sense);
    EXPECT_EQ(back.objective_constant, inst.objective_constant);
    ASSERT_EQ(back.variables.size(), inst.variables.size());
    for (std::size_t j = 0; j < inst.variables.size(); ++j) {
      const auto& a = inst.variables[j];
      const auto& b = back.variables[j];
      EXPECT_EQ(a.name, b.name);
      EXPECT_EQ(a.lower, b.lower);
      EXPECT_EQ(a.upper, b.upper);
      EXPECT_EQ(a.kind, b.kind);
      EXPECT_EQ(a.cost, b.cost);
    }
    ASSERT_EQ(back.rows.size(), inst.rows.size());
    for (std::size_t i = 0; i < inst.rows.size(); ++i) {
      EXPECT_EQ(back.rows[i].name, inst.rows[i].name);
      EXPECT_EQ(back.rows[i].bounds(), inst.rows[i].bounds());
      auto key = [](std::vector<Coefficient> c) {
        std::sort(c.begin(), c.end(),
                  [](const Coefficient& x, const Coefficient& y) { return x.var < y.var; });
        std::vector<std::pair<std::size_t, double>> out;
        for (auto& e : c) out.push_back({e.var, e.value});
        return out;
      };
      EXPECT_EQ(key(back.rows[i].coefficients), key(inst.rows[i].coefficients));
    }
  }
}

TEST(FeatureProperty, NonzerosEqualCoefficientCount) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = random_instance(rng);
    std::size_t nnz = 0;
    for (const auto& r : inst.rows) nnz += r.coefficients.size();
    const FeatureVector f = extract_features(inst);
    EXPECT_EQ(f.n_nonzeros, nnz);
    EXPECT_EQ(f.n_vars, f.n_int_vars + f.n_bin_vars + f.n_cont_vars);
  }
}

}  // namespace
}  // namespace milpbench
