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
#include <filesystem>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace milpbench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised for any user-correctable input problem (malformed files, bad
/// references, unknown parameters). The CLI maps it to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MPS syntax or consistency error. `line()` is 1-based, 0 when the error
/// is not tied to a particular line (e.g. missing ENDATA).
class MpsError : public InputError {
 public:
  MpsError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class ObjSense { kMinimize, kMaximize };
enum class VarKind { kContinuous, kInteger, kBinary };
enum class RowRelation { kLessEqual, kGreaterEqual, kEqual, kRange };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  VarKind kind = VarKind::kContinuous;
  double cost = 0.0;  // objective coefficient

  bool is_integral() const { return kind != VarKind::kContinuous; }
};

struct Coefficient {
  std::size_t var;
  double value;
};

/// A linear row. Range rows keep their lower end in `rhs` and the width in
/// `range_width`, i.e. rhs <= a.x <= rhs + range_width.
struct LinearRow {
  std::string name;
  std::vector<Coefficient> coefficients;
  RowRelation relation = RowRelation::kLessEqual;
  double rhs = 0.0;
  std::optional<double> range_width;

  /// Activity interval [lo, hi] implied by relation/rhs/range.
  std::pair<double, double> bounds() const;
};

struct Instance {
  std::string name;
  ObjSense sense = ObjSense::kMinimize;
  double objective_constant = 0.0;
  std::vector<Variable> variables;
  std::vector<LinearRow> rows;

  std::optional<std::size_t> find_variable(const std::string& var_name) const;
  double objective_value(const std::vector<double>& x) const;
};

/// Makes binary iff (integral with bounds exactly [0,1]) and rounds integer
/// bounds inward.
void normalize(Instance& inst);

Instance parse_mps(std::istream& in);
Instance parse_mps_string(const std::string& text);

/// Reads an instance from disk; paths ending in ".gz" are decompressed.
Instance read_instance(const std::filesystem::path& path);

/// Free-format MPS writer. parse_mps(write_mps(inst)) reproduces `inst` up to
/// coefficient ordering.
void write_mps(const Instance& inst, std::ostream& out);
std::string write_mps_string(const Instance& inst);

enum class DiagnosticKind {
  kCrossedBounds,
  kEmptyRow,
  kDuplicateCoefficient,
  kBadVariableIndex,
  kDuplicateName,
  kBadRange,
  kBinaryDomain,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string subject;  // variable or row name
  std::string message;
};

std::vector<Diagnostic> validate_instance(const Instance& inst);

struct FeatureVector {
  std::size_t n_vars = 0;
  std::size_t n_int_vars = 0;  // general integers, binaries excluded
  std::size_t n_bin_vars = 0;
  std::size_t n_cont_vars = 0;
  std::size_t n_rows = 0;
  std::size_t n_nonzeros = 0;
  std::size_t n_eq_rows = 0;
  std::size_t n_ineq_rows = 0;
  double density = 0.0;
  double max_abs_coeff = 0.0;
  double min_abs_nonzero_coeff = 0.0;

  /// Field lookup by name, used by adapter rule predicates.
  static bool has_field(const std::string& field);
  double get(const std::string& field) const;
};

FeatureVector extract_features(const Instance& inst);

/// Instance name derived from a file path: the stem with ".mps"/".mps.gz"
/// (and ".gz") stripped.
std::string instance_name_from_path(const std::filesystem::path& path);

}  // namespace milpbench
