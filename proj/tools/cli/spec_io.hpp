// Copyright 2026 The qhit Authors
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

// Map and query files. Both are JSON documents.
//
// Map file:
//   {"dim": n, "kraus": [M, ...]}
//   {"dim": n, "stochastic": M, "orientation": "column" | "row"}
//   {"dim": n, "superoperator": M}
// Matrices are arrays of rows. An entry is a number, a rational string such
// as "-2/3", or a two-element [re, im] array of those.
//
// Query file: one query object, an array of them, or {"queries": [...]}.
//   {
//     "label": "phi to psi",                              optional
//     "subspace": {"vectors": [v, ...]} | {"basis": [k, ...]},
//     "initial":  {"vector": v} | {"density": M} | {"distribution": x} | {"state": k},
//     "psi":      same forms as "initial", optional
//     "method":   "direct" | "mhtf" | "series" | "all",   optional
//     "mhtf_route": "auto" | "orthogonal" | "general",    optional
//     "tolerance": {"atol": a, "rtol": r}                 optional
//   }
// Basis and state indices are 1-based.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhit/hitting.hpp"

namespace qhit::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string field, int line = 0);

  const std::string& field() const noexcept { return field_; }
  /// 1-based; 0 when the error is not tied to a position in the text
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct MapSpec {
  SuperOperator map;
  /// column-stochastic matrix for stochastic files
  std::optional<RealMatrix> chain;
  std::string kind;
};

/// `row_stochastic` transposes stochastic input whose file does not state
/// an orientation.
MapSpec parse_map_spec(std::string_view text, bool row_stochastic = false);
MapSpec load_map_spec(const std::string& path, bool row_stochastic = false);

enum class Method { direct, mhtf, series, all };
enum class MhtfRoute { automatic, orthogonal, general };

Method parse_method(std::string_view s);
MhtfRoute parse_route(std::string_view s);
std::string_view to_string(Method m);
std::string_view to_string(MhtfRoute r);

struct VectorState {
  ComplexVector v;
};
struct DensityState {
  ComplexMatrix m;
};
struct DistributionState {
  RealVector x;
};
struct BasisState {
  Eigen::Index index;  // 0-based
};
using StateSpec = std::variant<VectorState, DensityState, DistributionState, BasisState>;

struct SubspaceSpec {
  std::vector<ComplexVector> vectors;
  std::vector<Eigen::Index> basis;  // 0-based
};

struct QuerySpec {
  std::string label;
  SubspaceSpec subspace;
  StateSpec initial;
  std::optional<StateSpec> psi;
  std::optional<Method> method;
  std::optional<MhtfRoute> route;
  std::optional<Tolerance> tolerance;
};

std::vector<QuerySpec> parse_queries(std::string_view text);
std::vector<QuerySpec> load_queries(const std::string& path);

/// A state resolved against the map dimension, with the factor it was
/// divided by (norm, trace or sum) so callers can report it.
struct ResolvedState {
  DensityMatrix rho;
  std::string kind;
  double normalization = 1.0;
};

/// Throws ArgumentError / ValidationError / DimensionError on bad input.
ResolvedState resolve_state(const StateSpec& s, Eigen::Index n, const Tolerance& tol);
ArrivalSubspace resolve_subspace(const SubspaceSpec& s, Eigen::Index n, const Tolerance& tol);

std::string read_file(const std::string& path);

}  // namespace qhit::cli
