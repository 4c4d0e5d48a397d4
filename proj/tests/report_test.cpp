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

#include "milpbench/report.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "milpbench/instance.hpp"
#include "published_tables.hpp"

namespace milpbench {
namespace {

std::filesystem::path scratch_dir(const std::string& tag) {
  auto d = std::filesystem::temp_directory_path() /
           ("milpbench-report-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string f; in >> f;) out.push_back(f);
  return out;
}

int count_of(const std::string& s, const std::string& what) {
  int n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

std::size_t polyline_vertices(const std::string& svg, const std::string& id) {
  const std::regex re("<polyline id=\"" + id + "\"[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  if (!std::regex_search(svg, m, re)) return 0;
  return fields(m[1].str()).size();
}

DistributionSeries series(std::vector<double> base, std::vector<double> adap, double limit) {
  DistributionSeries s;
  s.time_limit_s = limit;
  for (std::size_t i = 0; i < base.size(); ++i)
    s.points.push_back({i + 1, "i" + std::to_string(i), base[i], adap[i]});
  return s;
}

TEST(FormatMean, Precision) {
  EXPECT_EQ(format_mean(1328.4), "1328");
  EXPECT_EQ(format_mean(72.1), "72.1");
  EXPECT_EQ(format_mean(1.0), "1");
  EXPECT_EQ(format_mean(1.7431), "1.74");
  EXPECT_EQ(format_mean(0.8266), "0.827");
  EXPECT_EQ(format_mean(18.4188), "18.4");
}

TEST(RenderTable, TwoSolvers) {
  const std::string t = render_table({{"GUROB", 72.1, 1.0, 229, 240},
                                      {"MDO4CPX", 59.6, 59.6 / 72.1, 232, 240}},
                                     {"MDO4CPX"});
  const auto ls = lines_of(t);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(fields(ls[3]), (std::vector<std::string>{"solved", "229", "232"})) << t;
  EXPECT_EQ(fields(ls[0]), (std::vector<std::string>{"GUROB", "MDO4CPX*"}));
  EXPECT_EQ(fields(ls[1]), (std::vector<std::string>{"unscal", "72.1", "59.6"}));
  EXPECT_EQ(fields(ls[2]), (std::vector<std::string>{"scaled", "1", "0.827"}));
}

TEST(RenderTable, SingleSummaryIsItsOwnReference) {
  const auto ls = lines_of(render_table({{"only", 12.5, std::nullopt, 3, 4}}));
  EXPECT_EQ(fields(ls[2]), (std::vector<std::string>{"scaled", "1"}));
  EXPECT_EQ(ls[0].find('*'), std::string::npos);
}

TEST(RenderTable, CountLabelAndColumnsAligned) {
  const std::string t = render_table(
      {{"a", 1234, 1.0, 5, 9}, {"bb", 3.5, 3.5 / 1234, 40, 9}}, {}, "detected");
  const auto ls = lines_of(t);
  EXPECT_EQ(fields(ls[3])[0], "detected");
  EXPECT_EQ(t.find('*'), std::string::npos);
  // Right-aligned columns: every line except trailing-trimmed ones ends at the same width.
  for (const auto& l : ls) EXPECT_EQ(l.size(), ls[0].size()) << t;
}

TEST(RenderTableProperty, PrintedValuesParseBack) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lg(-2.0, 4.0);
  std::uniform_int_distribution<int> cnt(0, 240);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<BenchmarkSummary> v;
    for (int k = 0; k < 4; ++k)
      v.push_back({"s" + std::to_string(k), std::pow(10.0, lg(rng)), std::nullopt, cnt(rng), 240});
    apply_scaling(v, "s0");
    const auto ls = lines_of(render_table(v));
    const auto un = fields(ls[1]), sc = fields(ls[2]), so = fields(ls[3]);
    for (int k = 0; k < 4; ++k) {
      for (auto [text, value] : {std::pair{un[k + 1], v[k].unscal}, {sc[k + 1], *v[k].scaled}}) {
        const double parsed = std::stod(text);
        // 3 significant digits, or the integer part for large values.
        EXPECT_LE(std::fabs(parsed - value), std::max(0.5, 0.005 * std::fabs(value)))
            << text << " vs " << value;
      }
      EXPECT_EQ(std::stoi(so[k + 1]), v[k].solved);
    }
  }
}

TEST(Svg, StructureAndDeterminism) {
  std::vector<double> b(240), a(240);
  for (int i = 0; i < 240; ++i) {
    b[i] = 0.1 * std::pow(1.04, i);
    a[i] = b[i] * 0.5;
  }
  const auto s = series(b, a, 7200);
  const std::string svg = render_distribution_svg(s, 7200);
  EXPECT_EQ(svg, render_distribution_svg(s, 7200));
  EXPECT_EQ(polyline_vertices(svg, "baseline"), 240u);
  EXPECT_EQ(polyline_vertices(svg, "adapted"), 240u);
  EXPECT_NE(svg.find("id=\"time-limit\""), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("id=\"legend\""), std::string::npos);
  EXPECT_NE(svg.find("width=\"800\" height=\"500\""), std::string::npos);
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, DecadeTicksFromOneToTenThousand) {
  const auto s = series({0.1, 50, 7200}, {0.2, 40, 7200}, 7200);
  const std::string svg = render_distribution_svg(s, 7200);
  for (const char* tick : {">1<", ">10<", ">100<", ">1000<", ">10000<"})
    EXPECT_EQ(count_of(svg, tick), 1) << tick;
  EXPECT_EQ(count_of(svg, ">100000<"), 0);
}

TEST(Svg, IdenticalCurvesCoincide) {
  const auto s = series({1, 2, 3}, {1, 2, 3}, 10);
  const std::string svg = render_distribution_svg(s, 10);
  const std::regex re("points=\"([^\"]*)\"");
  std::vector<std::string> pts;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it)
    pts.push_back((*it)[1]);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], pts[1]);
}

TEST(Svg, EmitErrors) {
  const auto dir = scratch_dir("svg");
  EXPECT_THROW(emit_distribution_svg({}, 10, dir / "x.svg"), InputError);
  const auto s = series({1}, {1}, 10);
  EXPECT_THROW(emit_distribution_svg(s, 10, dir / "no" / "such" / "x.svg"), InputError);
  const auto out = emit_distribution_svg(s, 10, dir / "x.svg");
  EXPECT_EQ(slurp(out), render_distribution_svg(s, 10));
  std::filesystem::remove_all(dir);
}

RunRecord rec(const std::string& name, RunStatus st, double t) {
  RunRecord r;
  r.instance_name = name;
  r.solver_label = "reference";
  r.status = st;
  r.wall_time_s = t;
  r.host_descriptor = "host";
  return r;
}

TEST(ComparisonReport, WritesEveryArtifact) {
  const auto dir = scratch_dir("bundle");
  RunLog base, adap;
  base.dataset.instance_paths = {"a.mps", "b.mps", "c.mps"};
  base.dataset.time_limit_s = 100;
  base.dataset.objective_kind = ObjectiveKind::kDetectInfeasible;
  adap.dataset = base.dataset;
  base.records = {rec("a", RunStatus::kInfeasible, 5), rec("b", RunStatus::kTimeLimit, 100),
                  rec("c", RunStatus::kInfeasible, 50)};
  adap.records = {rec("a", RunStatus::kInfeasible, 1), rec("b", RunStatus::kInfeasible, 30),
                  rec("c", RunStatus::kInfeasible, 20)};
  const ReportBundle b = write_comparison_report(base, adap, dir / "out");
  for (const auto& group : {b.csv_paths, b.svg_paths, b.other_paths})
    for (const auto& p : group) EXPECT_TRUE(std::filesystem::exists(p)) << p;
  ASSERT_EQ(b.tables.size(), 1u);
  const auto ls = lines_of(b.tables[0]);
  EXPECT_EQ(fields(ls[0]), (std::vector<std::string>{"Default", "Adapted*"}));
  EXPECT_EQ(fields(ls[3]), (std::vector<std::string>{"detected", "2", "3"}));
  EXPECT_EQ(b.time_limit_s, 100);
  EXPECT_EQ(b.host, "host");
  const std::string csv = slurp(dir / "out" / "summary.csv");
  EXPECT_EQ(csv.rfind("solver,unscal,scaled,solved,n\nDefault,", 0), 0u);
  const std::string svg = slurp(b.svg_paths.at(0));
  EXPECT_EQ(polyline_vertices(svg, "baseline"), 3u);
  EXPECT_EQ(polyline_vertices(svg, "adapted"), 3u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace milpbench
