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

#include "milpbench/instance.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace milpbench {

MpsError::MpsError(std::size_t line, const std::string& what)
    : InputError(line > 0 ? "MPS line " + std::to_string(line) + ": " + what
                          : "MPS: " + what),
      line_(line) {}

std::pair<double, double> LinearRow::bounds() const {
  switch (relation) {
    case RowRelation::kLessEqual:
      return {-kInf, rhs};
    case RowRelation::kGreaterEqual:
      return {rhs, kInf};
    case RowRelation::kEqual:
      return {rhs, rhs};
    case RowRelation::kRange:
      return {rhs, rhs + range_width.value_or(0.0)};
  }
  return {-kInf, kInf};
}

std::optional<std::size_t> Instance::find_variable(
    const std::string& var_name) const {
  for (std::size_t j = 0; j < variables.size(); ++j)
    if (variables[j].name == var_name) return j;
  return std::nullopt;
}

double Instance::objective_value(const std::vector<double>& x) const {
  double obj = objective_constant;
  for (std::size_t j = 0; j < variables.size() && j < x.size(); ++j)
    obj += variables[j].cost * x[j];
  return obj;
}

void normalize(Instance& inst) {
  for (auto& v : inst.variables) {
    if (v.kind == VarKind::kContinuous) continue;
    if (std::isfinite(v.lower)) v.lower = std::ceil(v.lower - 1e-9);
    if (std::isfinite(v.upper)) v.upper = std::floor(v.upper + 1e-9);
    v.kind = (v.lower == 0.0 && v.upper == 1.0) ? VarKind::kBinary
                                                : VarKind::kInteger;
  }
}

namespace {

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    std::string lower;
    for (char c : tok) lower.push_back(static_cast<char>(std::tolower(c)));
    if (lower == "inf" || lower == "+inf" || lower == "infinity" ||
        lower == "1e30" || lower == "+infinity")
      return kInf;
    if (lower == "-inf" || lower == "-infinity") return -kInf;
    throw MpsError(line, "expected a number, got '" + tok + "'");
  }
  if (v >= 1e30) return kInf;
  if (v <= -1e30) return -kInf;
  return v;
}

struct RawRow {
  char type;  // 'N', 'L', 'G', 'E'
  std::string name;
  double rhs = 0.0;
  std::optional<double> range;
  std::map<std::size_t, double> coefs;
};

class MpsReader {
 public:
  Instance read(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    Section section = Section::kNone;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        section = header(toks, lineno);
        if (section == Section::kEnd) break;
        continue;
      }
      switch (section) {
        case Section::kObjSense:
          set_sense(toks[0], lineno);
          break;
        case Section::kRows:
          row_line(toks, lineno);
          break;
        case Section::kColumns:
          column_line(toks, lineno);
          break;
        case Section::kRhs:
          rhs_line(toks, lineno);
          break;
        case Section::kRanges:
          range_line(toks, lineno);
          break;
        case Section::kBounds:
          bound_line(toks, lineno);
          break;
        default:
          throw MpsError(lineno, "data line outside of a section");
      }
    }
    if (section != Section::kEnd) throw MpsError(0, "missing ENDATA");
    return finish();
  }

 private:
  Section header(const std::vector<std::string>& toks, std::size_t lineno) {
    const std::string& kw = toks[0];
    if (kw == "NAME") {
      inst_.name = toks.size() > 1 ? toks[1] : "";
      return Section::kName;
    }
    if (kw == "OBJSENSE") {
      if (toks.size() > 1) set_sense(toks[1], lineno);
      return Section::kObjSense;
    }
    if (kw == "ROWS") return Section::kRows;
    if (kw == "COLUMNS") return Section::kColumns;
    if (kw == "RHS") return Section::kRhs;
    if (kw == "RANGES") return Section::kRanges;
    if (kw == "BOUNDS") return Section::kBounds;
    if (kw == "ENDATA") return Section::kEnd;
    throw MpsError(lineno, "unknown or unsupported section '" + kw + "'");
  }

  void set_sense(const std::string& tok, std::size_t lineno) {
    if (tok == "MAX" || tok == "MAXIMIZE")
      inst_.sense = ObjSense::kMaximize;
    else if (tok == "MIN" || tok == "MINIMIZE")
      inst_.sense = ObjSense::kMinimize;
    else
      throw MpsError(lineno, "bad OBJSENSE '" + tok + "'");
  }

  void row_line(const std::vector<std::string>& toks, std::size_t lineno) {
    if (toks.size() != 2) throw MpsError(lineno, "ROWS entry needs type and name");
    if (toks[0].size() != 1 || std::string("NLGE").find(toks[0][0]) ==
                                   std::string::npos)
      throw MpsError(lineno, "bad row type '" + toks[0] + "'");
    const std::string& name = toks[1];
    if (row_index_.count(name) || name == objective_name_ ||
        free_rows_.count(name))
      throw MpsError(lineno, "duplicate row name '" + name + "'");
    if (toks[0][0] == 'N') {
      if (objective_name_.empty())
        objective_name_ = name;
      else
        free_rows_.insert(name);
      return;
    }
    row_index_[name] = rows_.size();
    rows_.push_back(RawRow{toks[0][0], name, 0.0, std::nullopt, {}});
  }

  void column_line(const std::vector<std::string>& toks, std::size_t lineno) {
    if (toks.size() >= 3 && toks[1] == "'MARKER'") {
      const std::string& kind = toks[2];
      if (kind == "'INTORG'")
        in_int_block_ = true;
      else if (kind == "'INTEND'")
        in_int_block_ = false;
      else
        throw MpsError(lineno, "unknown marker " + kind);
      return;
    }
    if (toks.size() != 3 && toks.size() != 5)
      throw MpsError(lineno, "COLUMNS entry needs name and 1 or 2 row/value pairs");
    const std::string& col = toks[0];
    std::size_t j;
    if (!inst_.variables.empty() && inst_.variables.back().name == col &&
        last_col_int_ == in_int_block_) {
      j = inst_.variables.size() - 1;
    } else {
      if (col_index_.count(col))
        throw MpsError(lineno, "duplicate column name '" + col + "'");
      j = inst_.variables.size();
      col_index_[col] = j;
      Variable v;
      v.name = col;
      if (in_int_block_) v.kind = VarKind::kInteger;
      inst_.variables.push_back(v);
      last_col_int_ = in_int_block_;
    }
    for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
      const std::string& row = toks[k];
      double val = parse_number(toks[k + 1], lineno);
      if (row == objective_name_) {
        inst_.variables[j].cost += val;
        continue;
      }
      if (free_rows_.count(row)) continue;
      auto it = row_index_.find(row);
      if (it == row_index_.end())
        throw MpsError(lineno, "reference to undeclared row '" + row + "'");
      auto& coefs = rows_[it->second].coefs;
      if (coefs.count(j))
        throw MpsError(lineno, "duplicate coefficient for column '" + col +
                                   "' in row '" + row + "'");
      coefs[j] = val;
    }
  }

  // Set names are optional in free format: an even token count means no set
  // name, odd means a leading set name.
  template <typename Fn>
  void pairs(const std::vector<std::string>& toks, std::size_t lineno,
             const char* what, Fn&& fn) {
    std::size_t start = (toks.size() % 2 == 1) ? 1 : 0;
    if (toks.size() - start < 2)
      throw MpsError(lineno, std::string(what) + " entry needs row and value");
    for (std::size_t k = start; k + 1 < toks.size(); k += 2)
      fn(toks[k], parse_number(toks[k + 1], lineno));
  }

  void rhs_line(const std::vector<std::string>& toks, std::size_t lineno) {
    pairs(toks, lineno, "RHS", [&](const std::string& row, double val) {
      if (row == objective_name_) {
        inst_.objective_constant = -val;
        return;
      }
      if (free_rows_.count(row)) return;
      auto it = row_index_.find(row);
      if (it == row_index_.end())
        throw MpsError(lineno, "RHS for undeclared row '" + row + "'");
      rows_[it->second].rhs = val;
    });
  }

  void range_line(const std::vector<std::string>& toks, std::size_t lineno) {
    pairs(toks, lineno, "RANGES", [&](const std::string& row, double val) {
      auto it = row_index_.find(row);
      if (it == row_index_.end())
        throw MpsError(lineno, "RANGES for undeclared row '" + row + "'");
      if (!std::isfinite(val))
        throw MpsError(lineno, "infinite range for row '" + row + "'");
      rows_[it->second].range = val;
    });
  }

  void bound_line(const std::vector<std::string>& toks, std::size_t lineno) {
    if (toks.size() < 2 || toks.size() > 4)
      throw MpsError(lineno, "malformed BOUNDS entry");
    const std::string& type = toks[0];
    // Optional set name: decided by token count, BV with three tokens by
    // whether the last token names a column.
    std::size_t col_pos = 1;
    if (needs_value(type)) {
      col_pos = toks.size() == 4 ? 2 : 1;
    } else if (type == "BV") {
      col_pos = toks.size() == 4 || (toks.size() == 3 && col_index_.count(toks[2]))
                    ? 2
                    : 1;
    } else {
      col_pos = toks.size() >= 3 ? 2 : 1;
    }
    if (col_pos >= toks.size()) throw MpsError(lineno, "malformed BOUNDS entry");
    auto it = col_index_.find(toks[col_pos]);
    if (it == col_index_.end())
      throw MpsError(lineno, "bound on undeclared column '" + toks[col_pos] + "'");
    Variable& v = inst_.variables[it->second];
    std::optional<double> value;
    if (col_pos + 1 < toks.size()) value = parse_number(toks[col_pos + 1], lineno);
    if (col_pos + 2 < toks.size()) throw MpsError(lineno, "trailing tokens in BOUNDS");
    if (needs_value(type) && !value)
      throw MpsError(lineno, "bound type " + type + " needs a value");
    bounded_.insert(it->second);

    if (type == "UP") {
      v.upper = *value;
      if (*value < 0 && v.lower == 0.0) v.lower = -kInf;
    } else if (type == "LO") {
      v.lower = *value;
    } else if (type == "FX") {
      v.lower = v.upper = *value;
    } else if (type == "MI") {
      v.lower = -kInf;
    } else if (type == "PL") {
      v.upper = kInf;
    } else if (type == "FR") {
      v.lower = -kInf;
      v.upper = kInf;
    } else if (type == "BV") {
      v.kind = VarKind::kBinary;
      v.lower = std::max(v.lower, 0.0);
      v.upper = std::min(v.upper, 1.0);
      binaries_.insert(it->second);
    } else if (type == "UI") {
      v.upper = *value;
      if (v.kind == VarKind::kContinuous) v.kind = VarKind::kInteger;
    } else if (type == "LI") {
      v.lower = *value;
      if (v.kind == VarKind::kContinuous) v.kind = VarKind::kInteger;
    } else {
      throw MpsError(lineno, "unknown bound type '" + type + "'");
    }
    // Bounds given after BV intersect with [0,1].
    if (binaries_.count(it->second)) {
      v.lower = std::max(v.lower, 0.0);
      v.upper = std::min(v.upper, 1.0);
    }
  }

  static bool needs_value(const std::string& type) {
    return type == "UP" || type == "LO" || type == "FX" || type == "UI" ||
           type == "LI";
  }

  Instance finish() {
    for (auto& raw : rows_) {
      LinearRow row;
      row.name = raw.name;
      for (auto [j, val] : raw.coefs) row.coefficients.push_back({j, val});
      if (!raw.range) {
        row.rhs = raw.rhs;
        row.relation = raw.type == 'L'   ? RowRelation::kLessEqual
                       : raw.type == 'G' ? RowRelation::kGreaterEqual
                                         : RowRelation::kEqual;
      } else {
        const double r = *raw.range;
        const double ar = std::fabs(r);
        double lo = raw.rhs;
        switch (raw.type) {
          case 'L':
            lo = raw.rhs - ar;
            break;
          case 'G':
            lo = raw.rhs;
            break;
          case 'E':
            lo = r >= 0 ? raw.rhs : raw.rhs - ar;
            break;
        }
        row.relation = RowRelation::kRange;
        row.rhs = lo;
        row.range_width = ar;
      }
      inst_.rows.push_back(std::move(row));
    }
    // Integer columns introduced inside markers default to [0, +inf).
    normalize(inst_);
    return std::move(inst_);
  }

  Instance inst_;
  std::string objective_name_;
  std::unordered_set<std::string> free_rows_;
  std::unordered_map<std::string, std::size_t> row_index_;
  std::unordered_map<std::string, std::size_t> col_index_;
  std::vector<RawRow> rows_;
  std::set<std::size_t> bounded_;
  std::set<std::size_t> binaries_;
  bool in_int_block_ = false;
  bool last_col_int_ = false;
};

std::string read_gzip(const std::filesystem::path& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw InputError("cannot open " + path.string());
  std::string out;
  char buf[1 << 16];
  int n;
  while ((n = gzread(f, buf, sizeof buf)) > 0) out.append(buf, n);
  int err = 0;
  const char* msg = gzerror(f, &err);
  std::string message = msg ? msg : "";
  gzclose(f);
  if (n < 0) throw InputError("gzip read error in " + path.string() + ": " + message);
  return out;
}

std::string format_number(double v) {
  if (v == kInf) return "1e+30";
  if (v == -kInf) return "-1e+30";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Instance parse_mps(std::istream& in) { return MpsReader().read(in); }

Instance parse_mps_string(const std::string& text) {
  std::istringstream is(text);
  return parse_mps(is);
}

Instance read_instance(const std::filesystem::path& path) {
  if (path.extension() == ".gz") return parse_mps_string(read_gzip(path));
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_mps(in);
}

std::string instance_name_from_path(const std::filesystem::path& path) {
  std::string name = path.filename().string();
  for (const char* suffix : {".gz", ".mps"}) {
    const std::string s(suffix);
    if (name.size() > s.size() &&
        name.compare(name.size() - s.size(), s.size(), s) == 0)
      name.resize(name.size() - s.size());
  }
  return name;
}

void write_mps(const Instance& inst, std::ostream& out) {
  out << "NAME " << (inst.name.empty() ? "unnamed" : inst.name) << "\n";
  if (inst.sense == ObjSense::kMaximize) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  obj\n";
  for (const auto& r : inst.rows) {
    char t = 'E';
    switch (r.relation) {
      case RowRelation::kLessEqual:
        t = 'L';
        break;
      case RowRelation::kGreaterEqual:
      case RowRelation::kRange:
        t = 'G';
        break;
      case RowRelation::kEqual:
        t = 'E';
        break;
    }
    out << " " << t << "  " << r.name << "\n";
  }
  // Column-major entries.
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(
      inst.variables.size());
  for (std::size_t i = 0; i < inst.rows.size(); ++i)
    for (const auto& c : inst.rows[i].coefficients)
      cols[c.var].push_back({i, c.value});
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < inst.variables.size(); ++j) {
    const auto& v = inst.variables[j];
    if (v.is_integral() != in_int) {
      out << "    MARKER" << marker++ << " 'MARKER' "
          << (v.is_integral() ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = v.is_integral();
    }
    out << "    " << v.name << " obj " << format_number(v.cost) << "\n";
    for (auto [i, val] : cols[j])
      out << "    " << v.name << " " << inst.rows[i].name << " "
          << format_number(val) << "\n";
  }
  if (in_int) out << "    MARKER" << marker++ << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  if (inst.objective_constant != 0.0)
    out << "    RHS obj " << format_number(-inst.objective_constant) << "\n";
  for (const auto& r : inst.rows)
    if (r.rhs != 0.0) out << "    RHS " << r.name << " " << format_number(r.rhs) << "\n";
  bool any_range = false;
  for (const auto& r : inst.rows) {
    if (r.relation != RowRelation::kRange) continue;
    if (!any_range) out << "RANGES\n";
    any_range = true;
    out << "    RNG " << r.name << " " << format_number(r.range_width.value_or(0.0))
        << "\n";
  }
  out << "BOUNDS\n";
  for (const auto& v : inst.variables) {
    if (v.kind == VarKind::kBinary) {
      out << " BV BND " << v.name << "\n";
      continue;
    }
    if (v.lower == -kInf && v.upper == kInf) {
      out << " FR BND " << v.name << "\n";
      continue;
    }
    if (v.lower == v.upper) {
      out << " FX BND " << v.name << " " << format_number(v.lower) << "\n";
      continue;
    }
    if (v.lower == -kInf)
      out << " MI BND " << v.name << "\n";
    else if (v.lower != 0.0 || (v.upper < 0))
      out << " LO BND " << v.name << " " << format_number(v.lower) << "\n";
    if (v.upper != kInf)
      out << " UP BND " << v.name << " " << format_number(v.upper) << "\n";
    else if (v.is_integral())
      out << " PL BND " << v.name << "\n";
  }
  out << "ENDATA\n";
}

std::string write_mps_string(const Instance& inst) {
  std::ostringstream os;
  write_mps(inst, os);
  return os.str();
}

std::vector<Diagnostic> validate_instance(const Instance& inst) {
  std::vector<Diagnostic> diags;
  std::unordered_set<std::string> names;
  for (const auto& v : inst.variables) {
    if (!names.insert(v.name).second)
      diags.push_back({DiagnosticKind::kDuplicateName, v.name,
                       "duplicate variable name"});
    if (v.lower > v.upper)
      diags.push_back({DiagnosticKind::kCrossedBounds, v.name,
                       "lower bound exceeds upper bound"});
    if (v.kind == VarKind::kBinary && (v.lower != 0.0 || v.upper != 1.0))
      diags.push_back({DiagnosticKind::kBinaryDomain, v.name,
                       "binary variable with bounds other than [0,1]"});
  }
  names.clear();
  for (const auto& r : inst.rows) {
    if (!names.insert(r.name).second)
      diags.push_back({DiagnosticKind::kDuplicateName, r.name, "duplicate row name"});
    if (r.coefficients.empty())
      diags.push_back({DiagnosticKind::kEmptyRow, r.name, "row has no coefficients"});
    std::unordered_set<std::size_t> seen;
    for (const auto& c : r.coefficients) {
      if (c.var >= inst.variables.size()) {
        diags.push_back({DiagnosticKind::kBadVariableIndex, r.name,
                         "coefficient references variable index " +
                             std::to_string(c.var)});
        continue;
      }
      if (!seen.insert(c.var).second)
        diags.push_back({DiagnosticKind::kDuplicateCoefficient, r.name,
                         "duplicate coefficient for variable '" +
                             inst.variables[c.var].name + "'"});
    }
    if (r.relation == RowRelation::kRange &&
        (!r.range_width || !std::isfinite(*r.range_width) || *r.range_width < 0))
      diags.push_back({DiagnosticKind::kBadRange, r.name,
                       "range row without a finite nonnegative width"});
  }
  return diags;
}

namespace {
const char* const kFeatureFields[] = {
    "n_vars",      "n_int_vars",  "n_bin_vars",    "n_cont_vars",
    "n_rows",      "n_nonzeros",  "n_eq_rows",     "n_ineq_rows",
    "density",     "max_abs_coeff", "min_abs_nonzero_coeff"};
}

bool FeatureVector::has_field(const std::string& field) {
  return std::find(std::begin(kFeatureFields), std::end(kFeatureFields),
                   field) != std::end(kFeatureFields);
}

double FeatureVector::get(const std::string& field) const {
  if (field == "n_vars") return static_cast<double>(n_vars);
  if (field == "n_int_vars") return static_cast<double>(n_int_vars);
  if (field == "n_bin_vars") return static_cast<double>(n_bin_vars);
  if (field == "n_cont_vars") return static_cast<double>(n_cont_vars);
  if (field == "n_rows") return static_cast<double>(n_rows);
  if (field == "n_nonzeros") return static_cast<double>(n_nonzeros);
  if (field == "n_eq_rows") return static_cast<double>(n_eq_rows);
  if (field == "n_ineq_rows") return static_cast<double>(n_ineq_rows);
  if (field == "density") return density;
  if (field == "max_abs_coeff") return max_abs_coeff;
  if (field == "min_abs_nonzero_coeff") return min_abs_nonzero_coeff;
  throw InputError("unknown feature field '" + field + "'");
}

FeatureVector extract_features(const Instance& inst) {
  FeatureVector f;
  f.n_vars = inst.variables.size();
  for (const auto& v : inst.variables) {
    switch (v.kind) {
      case VarKind::kBinary:
        ++f.n_bin_vars;
        break;
      case VarKind::kInteger:
        ++f.n_int_vars;
        break;
      case VarKind::kContinuous:
        ++f.n_cont_vars;
        break;
    }
  }
  f.n_rows = inst.rows.size();
  double min_abs = kInf;
  for (const auto& r : inst.rows) {
    if (r.relation == RowRelation::kEqual)
      ++f.n_eq_rows;
    else
      ++f.n_ineq_rows;
    f.n_nonzeros += r.coefficients.size();
    for (const auto& c : r.coefficients) {
      const double a = std::fabs(c.value);
      f.max_abs_coeff = std::max(f.max_abs_coeff, a);
      if (a > 0) min_abs = std::min(min_abs, a);
    }
  }
  f.min_abs_nonzero_coeff = std::isfinite(min_abs) ? min_abs : 0.0;
  if (f.n_vars > 0 && f.n_rows > 0)
    f.density = static_cast<double>(f.n_nonzeros) /
                (static_cast<double>(f.n_vars) * static_cast<double>(f.n_rows));
  return f;
}

}  // namespace milpbench
