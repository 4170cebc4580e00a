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


#include "spec_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qhit/errors.hpp"

namespace qhit::cli {

using nlohmann::json;

ParseError::ParseError(const std::string& message, std::string field, int line)
    : std::runtime_error(message), field_(std::move(field)), line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, "", 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what, field);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    std::ostringstream os;
    os << "line " << line << ": malformed JSON (" << e.what() << ")";
    throw ParseError(os.str(), "", line);
  }
}

double parse_decimal(const std::string& s, const std::string& field) {
  if (s.empty()) fail(field, "empty number");
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v)) fail(field, "not a decimal number: \"" + s + "\"");
  return v;
}

double parse_real(const json& j, const std::string& field) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "non-finite number");
    return v;
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return parse_decimal(s, field);
    const double num = parse_decimal(s.substr(0, slash), field);
    const double den = parse_decimal(s.substr(slash + 1), field);
    if (den == 0.0) fail(field, "zero denominator");
    return num / den;
  }
  fail(field, "expected a number");
}

Complex parse_complex(const json& j, const std::string& field) {
  if (j.is_array()) {
    if (j.size() != 2) fail(field, "complex entries are [re, im] pairs");
    return {parse_real(j[0], field + "[0]"), parse_real(j[1], field + "[1]")};
  }
  return {parse_real(j, field), 0.0};
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

ComplexVector parse_vector(const json& j, const std::string& field, Eigen::Index expected = -1) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array");
  if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected) {
    fail(field, "expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  }
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i], at(field, i));
  return v;
}

ComplexMatrix parse_matrix(const json& j, const std::string& field, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    fail(field, "expected " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) = parse_vector(j[i], at(field, i), cols).transpose();
  }
  return m;
}

/// square matrix of unknown size
ComplexMatrix parse_square(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  return parse_matrix(j, field, n, n);
}

RealVector real_part(const ComplexVector& v, const std::string& field) {
  if (v.imag().cwiseAbs().maxCoeff() != 0.0) fail(field, "entries must be real");
  return v.real();
}

Eigen::Index parse_index(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer state index (1-based)");
  const auto k = j.get<long long>();
  if (k < 1) fail(field, "state indices are 1-based");
  return static_cast<Eigen::Index>(k - 1);
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail(field.empty() ? key : field + "." + key, "unknown field");
    }
  }
}

StateSpec parse_state(const json& j, const std::string& field) {
  if (!j.is_object() || j.size() != 1) {
    fail(field, "expected exactly one of vector, density, distribution, state");
  }
  const auto it = j.begin();
  const std::string key = it.key();
  const json& value = it.value();
  const std::string sub = field + "." + key;
  if (key == "vector") return VectorState{parse_vector(value, sub)};
  if (key == "density") return DensityState{parse_square(value, sub)};
  if (key == "distribution") return DistributionState{real_part(parse_vector(value, sub), sub)};
  if (key == "state") return BasisState{parse_index(value, sub)};
  fail(sub, "unknown state form");
}

QuerySpec parse_query(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  reject_unknown(j, {"label", "subspace", "initial", "psi", "method", "mhtf_route", "tolerance"}, field);
  QuerySpec q;
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail(field + ".label", "expected a string");
    q.label = j["label"].get<std::string>();
  }

  if (!j.contains("subspace")) fail(field + ".subspace", "missing");
  const json& s = j["subspace"];
  const std::string sf = field + ".subspace";
  if (!s.is_object() || s.size() != 1) fail(sf, "expected exactly one of vectors, basis");
  if (s.contains("vectors")) {
    const json& vs = s["vectors"];
    if (!vs.is_array() || vs.empty()) fail(sf + ".vectors", "expected a non-empty array of vectors");
    for (std::size_t i = 0; i < vs.size(); ++i) q.subspace.vectors.push_back(parse_vector(vs[i], at(sf + ".vectors", i)));
  } else if (s.contains("basis")) {
    const json& b = s["basis"];
    if (!b.is_array() || b.empty()) fail(sf + ".basis", "expected a non-empty array of indices");
    for (std::size_t i = 0; i < b.size(); ++i) q.subspace.basis.push_back(parse_index(b[i], at(sf + ".basis", i)));
  } else {
    fail(sf, "expected exactly one of vectors, basis");
  }

  if (!j.contains("initial")) fail(field + ".initial", "missing");
  q.initial = parse_state(j["initial"], field + ".initial");
  if (j.contains("psi")) q.psi = parse_state(j["psi"], field + ".psi");

  try {
    if (j.contains("method")) q.method = parse_method(j["method"].get<std::string>());
    if (j.contains("mhtf_route")) q.route = parse_route(j["mhtf_route"].get<std::string>());
  } catch (const json::exception&) {
    fail(field, "method and mhtf_route must be strings");
  } catch (const ArgumentError& e) {
    fail(field, e.what());
  }

  if (j.contains("tolerance")) {
    const json& t = j["tolerance"];
    const std::string tf = field + ".tolerance";
    if (!t.is_object()) fail(tf, "expected an object");
    reject_unknown(t, {"atol", "rtol"}, tf);
    const double atol = t.contains("atol") ? parse_real(t["atol"], tf + ".atol") : Tolerance::kDefaultAtol;
    const double rtol = t.contains("rtol") ? parse_real(t["rtol"], tf + ".rtol") : Tolerance::kDefaultRtol;
    if (atol < 0.0 || rtol < 0.0) fail(tf, "tolerances must be non-negative");
    q.tolerance = Tolerance(atol, rtol);
  }
  return q;
}

}  // namespace

MapSpec parse_map_spec(std::string_view text, bool row_stochastic) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("<root>", "expected an object");
  reject_unknown(doc, {"dim", "kraus", "stochastic", "orientation", "superoperator", "label"}, "");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    fail("dim", "expected a positive integer");
  }
  const auto n = static_cast<Eigen::Index>(doc["dim"].get<long long>());

  const int forms = static_cast<int>(doc.contains("kraus")) + static_cast<int>(doc.contains("stochastic")) +
                    static_cast<int>(doc.contains("superoperator"));
  if (forms != 1) fail("<root>", "exactly one of kraus, stochastic, superoperator is required");
  if (doc.contains("orientation") && !doc.contains("stochastic")) {
    fail("orientation", "only meaningful for stochastic maps");
  }

  if (doc.contains("kraus")) {
    const json& ks = doc["kraus"];
    if (!ks.is_array() || ks.empty()) fail("kraus", "expected a non-empty list of matrices");
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < ks.size(); ++i) ops.push_back(parse_matrix(ks[i], at("kraus", i), n, n));
    return {from_kraus(ops), std::nullopt, "kraus"};
  }

  if (doc.contains("superoperator")) {
    return {from_raw(parse_matrix(doc["superoperator"], "superoperator", n * n, n * n)), std::nullopt,
            "superoperator"};
  }

  bool row = row_stochastic;
  if (doc.contains("orientation")) {
    const json& o = doc["orientation"];
    if (!o.is_string() || (o != "column" && o != "row")) fail("orientation", "expected \"column\" or \"row\"");
    const bool file_row = o == "row";
    if (row_stochastic && !file_row) fail("orientation", "file says column-stochastic but --row-stochastic was given");
    row = file_row;
  }
  const ComplexMatrix raw = parse_matrix(doc["stochastic"], "stochastic", n, n);
  if (raw.imag().cwiseAbs().maxCoeff() != 0.0) fail("stochastic", "entries must be real");
  RealMatrix p = raw.real();
  if (row) p.transposeInPlace();
  validate_column_stochastic(p);
  return {from_stochastic(p), p, "stochastic"};
}

MapSpec load_map_spec(const std::string& path, bool row_stochastic) {
  return parse_map_spec(read_file(path), row_stochastic);
}

Method parse_method(std::string_view s) {
  if (s == "direct") return Method::direct;
  if (s == "mhtf") return Method::mhtf;
  if (s == "series") return Method::series;
  if (s == "all") return Method::all;
  throw ArgumentError("unknown method \"" + std::string(s) + "\" (direct, mhtf, series, all)");
}

MhtfRoute parse_route(std::string_view s) {
  if (s == "auto") return MhtfRoute::automatic;
  if (s == "orthogonal") return MhtfRoute::orthogonal;
  if (s == "general") return MhtfRoute::general;
  throw ArgumentError("unknown mhtf route \"" + std::string(s) + "\" (auto, orthogonal, general)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct:
      return "direct";
    case Method::mhtf:
      return "mhtf";
    case Method::series:
      return "series";
    case Method::all:
      return "all";
  }
  return "?";
}

std::string_view to_string(MhtfRoute r) {
  switch (r) {
    case MhtfRoute::automatic:
      return "auto";
    case MhtfRoute::orthogonal:
      return "orthogonal";
    case MhtfRoute::general:
      return "general";
  }
  return "?";
}

std::vector<QuerySpec> parse_queries(std::string_view text) {
  const json doc = parse_document(text);
  std::vector<QuerySpec> out;
  if (doc.is_array()) {
    if (doc.empty()) fail("<root>", "empty query list");
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_query(doc[i], at("", i)));
  } else if (doc.is_object() && doc.contains("queries")) {
    reject_unknown(doc, {"queries"}, "");
    const json& qs = doc["queries"];
    if (!qs.is_array() || qs.empty()) fail("queries", "expected a non-empty array");
    for (std::size_t i = 0; i < qs.size(); ++i) out.push_back(parse_query(qs[i], at("queries", i)));
  } else {
    out.push_back(parse_query(doc, "<root>"));
  }
  return out;
}

std::vector<QuerySpec> load_queries(const std::string& path) { return parse_queries(read_file(path)); }

ResolvedState resolve_state(const StateSpec& s, Eigen::Index n, const Tolerance& tol) {
  auto check_len = [n](Eigen::Index len, const char* what) {
    if (len != n) {
      throw DimensionError(std::string(what) + " has " + std::to_string(len) + " entries; the map acts on C^" +
                           std::to_string(n));
    }
  };
  if (const auto* v = std::get_if<VectorState>(&s)) {
    check_len(v->v.size(), "initial vector");
    const double norm = v->v.norm();
    if (!(norm > 0.0)) throw ArgumentError("state vector is zero");
    return {DensityMatrix::pure(v->v, tol), "vector", norm};
  }
  if (const auto* d = std::get_if<DensityState>(&s)) {
    check_len(d->m.rows(), "density matrix");
    const Complex tr = d->m.trace();
    if (!(tr.real() > 0.0) || std::abs(tr.imag()) > tol.atol()) {
      throw ValidationError("density matrix must have positive real trace");
    }
    return {DensityMatrix(d->m / tr.real(), tol), "density", tr.real()};
  }
  if (const auto* x = std::get_if<DistributionState>(&s)) {
    check_len(x->x.size(), "distribution");
    if ((x->x.array() < 0.0).any()) throw ValidationError("distribution has a negative entry");
    const double sum = x->x.sum();
    if (!(sum > 0.0)) throw ValidationError("distribution sums to zero");
    return {DensityMatrix::diagonal(x->x / sum, tol), "distribution", sum};
  }
  const auto k = std::get<BasisState>(s).index;
  if (k >= n) throw ArgumentError("state index " + std::to_string(k + 1) + " exceeds dimension " + std::to_string(n));
  return {DensityMatrix::basis(n, k), "state", 1.0};
}

ArrivalSubspace resolve_subspace(const SubspaceSpec& s, Eigen::Index n, const Tolerance& tol) {
  if (!s.basis.empty()) {
    for (const auto k : s.basis) {
      if (k >= n) throw ArgumentError("basis index " + std::to_string(k + 1) + " exceeds dimension " + std::to_string(n));
    }
    return subspace_from_basis(n, s.basis);
  }
  for (const auto& v : s.vectors) {
    if (v.size() != n) throw DimensionError("subspace vector length does not match the map dimension");
  }
  return subspace_from_vectors(s.vectors, tol);
}

}  // namespace qhit::cli
