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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "milpbench/instance.hpp"

namespace milpbench {

namespace {

std::string printf_str(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw InputError("cannot write " + p.string());
}

}  // namespace

std::string format_mean(double v) {
  if (v == 1.0) return "1";
  const double a = std::fabs(v);
  if (a >= 100.0) return printf_str("%.0f", v);
  if (a >= 10.0) return printf_str("%.1f", v);
  if (a >= 1.0) return printf_str("%.2f", v);
  return printf_str("%.3g", v);
}

std::string render_table(const std::vector<BenchmarkSummary>& summaries,
                         const std::set<std::string>& highlight,
                         const std::string& count_label) {
  std::vector<BenchmarkSummary> rows = summaries;
  const bool any_scaled = std::any_of(rows.begin(), rows.end(),
                                      [](const BenchmarkSummary& s) { return s.scaled.has_value(); });
  if (!any_scaled && !rows.empty() && rows.front().unscal > 0.0)
    apply_scaling(rows, rows.front().solver_label);
  else if (!any_scaled && !rows.empty())
    rows.front().scaled = 1.0;

  std::vector<std::vector<std::string>> cols;
  for (const auto& s : rows) {
    std::string head = s.solver_label + (highlight.count(s.solver_label) ? "*" : "");
    cols.push_back({head, format_mean(s.unscal), s.scaled ? format_mean(*s.scaled) : "-",
                    std::to_string(s.solved)});
  }
  const std::vector<std::string> labels = {"", "unscal", "scaled", count_label};
  std::size_t label_w = 0;
  for (const auto& l : labels) label_w = std::max(label_w, l.size());
  std::string out;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    std::string line = pad_right(labels[r], label_w);
    for (const auto& c : cols) {
      std::size_t w = 0;
      for (const auto& cell : c) w = std::max(w, cell.size());
      line += "  " + pad_left(c[r], w);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string render_distribution_svg(const DistributionSeries& series, double limit_s,
                                    const std::string& baseline_label,
                                    const std::string& adapted_label) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 80, kRight = 770, kTop = 40, kBottom = 440;

  double vmax = limit_s > 0 ? limit_s : 1.0;
  double vmin = kInf;
  for (const auto& p : series.points) {
    vmax = std::max({vmax, p.baseline_time_s, p.adapted_time_s});
    for (double v : {p.baseline_time_s, p.adapted_time_s})
      if (v > 0) vmin = std::min(vmin, v);
  }
  const int hi_exp = static_cast<int>(std::ceil(std::log10(vmax) - 1e-12));
  int lo_exp = std::isfinite(vmin) ? static_cast<int>(std::floor(std::log10(vmin) + 1e-12)) : 0;
  lo_exp = std::max({lo_exp, 0, hi_exp - 4});
  const int top_exp = std::max(hi_exp, lo_exp + 1);

  auto ypos = [&](double v) {
    const double lv = std::clamp(std::log10(std::max(v, 1e-300)), static_cast<double>(lo_exp),
                                 static_cast<double>(top_exp));
    return kBottom - (lv - lo_exp) / (top_exp - lo_exp) * (kBottom - kTop);
  };
  const std::size_t n = series.points.size();
  auto xpos = [&](std::size_t rank) {
    if (n <= 1) return (kLeft + kRight) / 2;
    return kLeft + (static_cast<double>(rank) - 1.0) / static_cast<double>(n - 1) * (kRight - kLeft);
  };
  auto f2 = [](double v) { return printf_str("%.2f", v); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
       "viewBox=\"0 0 800 500\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + f2(kWidth) + "\" height=\"" + f2(kHeight) +
       "\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       "Solution time distribution</text>\n";
  // Axes.
  s += "<g id=\"axes\" stroke=\"black\" fill=\"none\">\n";
  s += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kBottom) + "\" x2=\"" + f2(kRight) +
       "\" y2=\"" + f2(kBottom) + "\"/>\n";
  s += "<line x1=\"" + f2(kLeft) + "\" y1=\"" + f2(kTop) + "\" x2=\"" + f2(kLeft) + "\" y2=\"" +
       f2(kBottom) + "\"/>\n";
  s += "</g>\n";
  s += "<g id=\"yticks\">\n";
  for (int e = lo_exp; e <= top_exp; ++e) {
    const double y = kBottom - static_cast<double>(e - lo_exp) / (top_exp - lo_exp) * (kBottom - kTop);
    const std::string label = printf_str("%.0f", std::pow(10.0, e));
    s += "<line x1=\"" + f2(kLeft - 5) + "\" y1=\"" + f2(y) + "\" x2=\"" + f2(kRight) +
         "\" y2=\"" + f2(y) + "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + f2(kLeft - 8) + "\" y=\"" + f2(y + 4) + "\" text-anchor=\"end\">" +
         label + "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + f2((kLeft + kRight) / 2) + "\" y=\"475\" text-anchor=\"middle\">"
       "instances ranked by " + baseline_label + " time</text>\n";
  s += "<text x=\"20\" y=\"" + f2((kTop + kBottom) / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + f2((kTop + kBottom) / 2) +
       ")\">seconds (log scale)</text>\n";
  if (limit_s > 0) {
    const double y = ypos(limit_s);
    s += "<line id=\"time-limit\" x1=\"" + f2(kLeft) + "\" y1=\"" + f2(y) + "\" x2=\"" +
         f2(kRight) + "\" y2=\"" + f2(y) +
         "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    s += "<text x=\"" + f2(kRight) + "\" y=\"" + f2(y - 4) + "\" text-anchor=\"end\" "
         "fill=\"gray\">time limit " + printf_str("%g", limit_s) + " s</text>\n";
  }
  auto polyline = [&](const char* id, const char* color, bool adapted) {
    std::string pts;
    for (const auto& p : series.points) {
      if (!pts.empty()) pts += ' ';
      pts += f2(xpos(p.rank)) + "," + f2(ypos(adapted ? p.adapted_time_s : p.baseline_time_s));
    }
    return std::string("<polyline id=\"") + id + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  };
  s += polyline("baseline", "#1f77b4", false);
  s += polyline("adapted", "#d62728", true);
  // Legend.
  s += "<g id=\"legend\">\n";
  s += "<line x1=\"" + f2(kLeft + 15) + "\" y1=\"58\" x2=\"" + f2(kLeft + 45) +
       "\" y2=\"58\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + f2(kLeft + 52) + "\" y=\"62\">" + baseline_label + "</text>\n";
  s += "<line x1=\"" + f2(kLeft + 15) + "\" y1=\"76\" x2=\"" + f2(kLeft + 45) +
       "\" y2=\"76\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  s += "<text x=\"" + f2(kLeft + 52) + "\" y=\"80\">" + adapted_label + "</text>\n";
  s += "</g>\n";
  s += "</svg>\n";
  return s;
}

std::filesystem::path emit_distribution_svg(const DistributionSeries& series, double limit_s,
                                            const std::filesystem::path& out) {
  if (series.points.empty()) throw InputError("distribution series is empty");
  write_text(out, render_distribution_svg(series, limit_s));
  return out;
}

ReportBundle write_comparison_report(const RunLog& baseline, const RunLog& adapted,
                                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const DatasetSpec& ds = baseline.dataset;
  BenchmarkSummary base = summarize(baseline, ds, baseline.protocol.shift);
  BenchmarkSummary adap = summarize(adapted, adapted.dataset, adapted.protocol.shift);
  base.solver_label = "Default";
  adap.solver_label = "Adapted";
  std::vector<BenchmarkSummary> rows = {base, adap};
  if (base.unscal > 0) apply_scaling(rows, "Default");
  const std::string count_label =
      ds.objective_kind == ObjectiveKind::kDetectInfeasible ? "detected" : "solved";

  ReportBundle bundle;
  bundle.time_limit_s = ds.time_limit_s;
  bundle.shift = baseline.protocol.shift;
  bundle.host = baseline.records.empty() ? "" : baseline.records.front().host_descriptor;
  bundle.tables.push_back(render_table(rows, {"Adapted"}, count_label));

  const auto table_path = out_dir / "table.txt";
  write_text(table_path, bundle.tables.back());
  bundle.other_paths.push_back(table_path);
  const auto csv_path = out_dir / "summary.csv";
  write_text(csv_path, summaries_to_csv(rows));
  bundle.csv_paths.push_back(csv_path);
  const auto json_path = out_dir / "summary.json";
  write_text(json_path, summaries_to_json(rows));
  bundle.other_paths.push_back(json_path);
  const auto meta_path = out_dir / "protocol.json";
  nlohmann::json meta = {{"dataset", to_string(ds.name)},
                         {"time_limit_s", ds.time_limit_s},
                         {"gap_tolerance", baseline.protocol.gap_tolerance},
                         {"shift", baseline.protocol.shift},
                         {"host", bundle.host}};
  write_text(meta_path, meta.dump(2) + "\n");
  bundle.other_paths.push_back(meta_path);

  const DistributionSeries series = distribution(baseline, adapted);
  bundle.svg_paths.push_back(emit_distribution_svg(series, ds.time_limit_s,
                                                   out_dir / "distribution.svg"));
  return bundle;
}

}  // namespace milpbench
