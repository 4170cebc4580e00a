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


#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qhit/classical.hpp"
#include "qhit/errors.hpp"
#include "qhit/oracle.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"

namespace qhit::cli {

using Record = nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
  std::string message;
};

// `stage` is the exit code for library errors that are not numeric and not
// about irreducibility: 2 while reading the map, 3 while answering a query.
Failure classify(const std::exception_ptr& ep, int stage) {
  try {
    std::rethrow_exception(ep);
  } catch (const ParseError& e) {
    return {kExitParse, e.what()};
  } catch (const IrreducibilityError& e) {
    return {kExitMapValidation, e.what()};
  } catch (const NumericError& e) {
    std::ostringstream os;
    os << e.what();
    if (e.condition_estimate() > 0.0) os << " (condition estimate " << e.condition_estimate() << ")";
    return {kExitNumeric, os.str()};
  } catch (const ConvergenceError& e) {
    return {kExitNumeric, e.what()};
  } catch (const std::exception& e) {
    return {stage, e.what()};
  }
}

Record error_record(const Failure& f) {
  Record r;
  r["error"] = {{"exit_code", f.code}, {"message", f.message}};
  return r;
}

int emit_failure(const Failure& f, const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.json) {
    out << error_record(f).dump(2) << '\n';
  } else {
    err << "error: " << f.message << '\n';
  }
  return f.code;
}

Record complex_matrix_json(const ComplexMatrix& m) {
  Record rows = Record::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Record row = Record::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Record real_vector_json(const RealVector& v) {
  Record a = Record::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Human-readable rendering: nested objects become dotted keys.
void flatten(const Record& r, const std::string& prefix, std::vector<std::pair<std::string, const Record*>>& rows) {
  for (const auto& [key, value] : r.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, rows);
    } else {
      rows.emplace_back(name, &value);
    }
  }
}

std::string render_scalar(const Record& v, int digits) {
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(digits) << v.get<double>();
    return os.str();
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << render_scalar(v[i], digits);
    os << ']';
    return os.str();
  }
  return v.dump();
}

void print_table(const Record& r, int digits, std::ostream& out) {
  std::vector<std::pair<std::string, const Record*>> rows;
  flatten(r, "", rows);
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  for (const auto& [key, value] : rows) {
    out << "  " << std::left << std::setw(static_cast<int>(width) + 2) << key << render_scalar(*value, digits) << '\n';
  }
}

std::optional<MapSpec> load_map(const std::string& path, const Options& opt, Failure& failure) {
  try {
    return load_map_spec(path, opt.row_stochastic);
  } catch (...) {
    failure = classify(std::current_exception(), kExitMapValidation);
    return std::nullopt;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err) {
  Failure failure{};
  const auto spec = load_map(map_file, opt, failure);
  if (!spec) return emit_failure(failure, opt, out, err);
  const SuperOperator& map = spec->map;

  Record r;
  r["file"] = map_file;
  r["kind"] = spec->kind;
  r["dim"] = map.dim();
  if (const auto* k = std::get_if<KrausProvenance>(&map.provenance())) {
    r["kraus_operators"] = k->operators.size();
  }

  const auto tp = check_trace_preserving(map, opt.tol);
  r["trace_preserving"] = {{"passed", tp.trace_preserving}, {"residual", tp.residual}};

  const auto cp = check_complete_positivity(map, opt.tol);
  Record pos;
  pos["verdict"] = std::string(to_string(cp.verdict));
  pos["min_choi_eigenvalue"] = cp.min_choi_eigenvalue;
  if (cp.samples > 0) {
    pos["samples"] = cp.samples;
    pos["min_sampled_eigenvalue"] = cp.min_sampled_eigenvalue;
  }
  r["positivity"] = pos;

  bool certified = false;
  Record irr;
  if (tp.trace_preserving) {
    try {
      const auto cert = invariant_state(map, opt.tol);
      certified = cert.certified();
      irr["verdict"] = std::string(to_string(cert.verdict));
      irr["fixed_space_dim"] = cert.fixed_space_dim;
      irr["min_eigenvalue_of_pi"] = cert.min_eigenvalue_of_pi;
      irr["fixed_point_residual"] = cert.fixed_point_residual;
      if (cert.invariant_state) irr["invariant_state"] = complex_matrix_json(cert.invariant_state->matrix());
    } catch (...) {
      return emit_failure(classify(std::current_exception(), kExitMapValidation), opt, out, err);
    }
  } else {
    irr["verdict"] = "skipped (not trace preserving)";
  }
  r["irreducibility"] = irr;
  r["valid"] = tp.trace_preserving && certified;

  if (opt.json) {
    out << r.dump(2) << '\n';
  } else {
    out << "map " << map_file << '\n';
    print_table(r, opt.digits, out);
  }
  return tp.trace_preserving && certified ? kExitOk : kExitMapValidation;
}

// ---------------------------------------------------------------------------
// hit

namespace {

struct QueryOutcome {
  Record record;
  int code = kExitOk;
};

double trace_against(const ComplexMatrix& rep, const DensityMatrix& rho) {
  return trace_of_vec(rep * rho.vectorized()).real();
}

Record evaluate_query(const SuperOperator& map, const QuerySpec& q, const Options& opt) {
  const Tolerance tol = q.tolerance.value_or(opt.tol);
  const Method method = q.method ? *q.method : opt.method.value_or(Method::all);
  const MhtfRoute route = q.route ? *q.route : opt.route.value_or(MhtfRoute::automatic);

  const ArrivalSubspace v = resolve_subspace(q.subspace, map.dim(), tol);
  const ResolvedState init = resolve_state(q.initial, map.dim(), tol);
  std::optional<DensityMatrix> psi;
  if (q.psi) psi = resolve_state(*q.psi, map.dim(), tol).rho;

  const HittingSolution hs = solve_hitting(map, v, tol);
  const DensityMatrix& rho = init.rho;

  Record r;
  if (!q.label.empty()) r["label"] = q.label;
  r["method"] = std::string(to_string(method));
  r["tau"] = nullptr;
  const double prob = hitting_probability(hs, rho);
  r["hitting_probability"] = prob;
  r["hitting_probability_residual"] = std::abs(prob - 1.0);

  Record routes;
  Record extra;
  const bool all = method == Method::all;
  if (all || method == Method::direct) {
    routes["direct"] = mean_hitting_time_direct(hs, rho);
    routes["shortcut"] = mean_hitting_time_shortcut(hs, rho);
  }
  if (all || method == Method::mhtf) {
    const double off = complement_support_residual(hs.projectors, rho);
    MhtfRoute used = route;
    if (used == MhtfRoute::automatic) used = off <= kSupportTolerance ? MhtfRoute::orthogonal : MhtfRoute::general;
    const DensityMatrix rho_psi = psi ? *psi : uniform_arrival_state(v);
    if (used == MhtfRoute::orthogonal) {
      const auto m = mhtf_orthogonal(hs, rho, rho_psi);
      routes["mhtf"] = m.tau;
      extra["return_term"] = m.return_term;
      extra["cross_term"] = m.cross_term;
    } else {
      routes["mhtf"] = mhtf_general(hs, rho, rho_psi);
      extra["return_term"] = trace_against(hs.return_map, rho_psi);
      extra["first_step_weight"] = condition_first_step(map, hs.projectors, rho, tol).weight;
    }
    extra["route"] = std::string(to_string(used));
  }
  Record diag;
  diag["spectral_radius_qphi"] = hs.diagnostics.spectral_radius_qphi;
  diag["condition_estimate"] = hs.diagnostics.condition_estimate;
  diag["fundamental_condition"] = hs.diagnostics.fundamental_condition;
  if (all || method == Method::series) {
    const auto s = tau_series_detailed(map, hs.projectors, rho, tol);
    routes["series"] = s.tau;
    diag["series_terms"] = s.terms;
    diag["series_tail_bound"] = s.tail_bound;
  }

  const char* primary = method == Method::mhtf ? "mhtf" : method == Method::series ? "series" : "direct";
  r["tau"] = routes[primary];
  r["routes"] = routes;
  if (all) {
    double lo = routes["direct"].get<double>();
    double hi = lo;
    for (const auto& [key, value] : routes.items()) {
      lo = std::min(lo, value.get<double>());
      hi = std::max(hi, value.get<double>());
    }
    r["max_route_deviation"] = hi - lo;
  }
  if (!extra.empty()) r["mhtf_terms"] = extra;
  r["initial"] = {{"kind", init.kind}, {"normalization", init.normalization}};
  r["subspace_rank"] = v.rank();
  r["diagnostics"] = diag;
  return r;
}

}  // namespace

int cmd_hit(const std::string& map_file, const std::vector<QuerySpec>& queries, const Options& opt,
            std::ostream& out, std::ostream& err) {
  Failure failure{};
  const auto spec = load_map(map_file, opt, failure);
  if (!spec) return emit_failure(failure, opt, out, err);
  const SuperOperator& map = spec->map;

  const auto tp = check_trace_preserving(map, opt.tol);
  if (!tp.trace_preserving) {
    std::ostringstream os;
    os << "map is not trace preserving (residual " << tp.residual << ")";
    return emit_failure({kExitMapValidation, os.str()}, opt, out, err);
  }
  const auto cert = invariant_state(map, opt.tol);
  if (!cert.certified()) {
    std::ostringstream os;
    os << "map is not certified irreducible (verdict " << to_string(cert.verdict) << ", fixed space dimension "
       << cert.fixed_space_dim << ")";
    return emit_failure({kExitMapValidation, os.str()}, opt, out, err);
  }

  // Queries are independent; results land in input order.
  std::vector<QueryOutcome> outcomes(queries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      try {
        outcomes[i].record = evaluate_query(map, queries[i], opt);
      } catch (...) {
        const Failure f = classify(std::current_exception(), kExitQueryPrecondition);
        outcomes[i].record = error_record(f);
        if (!queries[i].label.empty()) outcomes[i].record["label"] = queries[i].label;
        outcomes[i].code = f.code;
      }
    }
  };
  const auto workers = std::max<std::size_t>(
      1, std::min<std::size_t>(queries.size(), std::max(1u, std::thread::hardware_concurrency())));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  int code = kExitOk;
  for (const auto& o : outcomes) {
    if (code == kExitOk) code = o.code;
  }

  if (opt.json) {
    if (outcomes.size() == 1) {
      out << outcomes.front().record.dump(2) << '\n';
    } else {
      Record all = Record::array();
      for (const auto& o : outcomes) all.push_back(o.record);
      out << all.dump(2) << '\n';
    }
    return code;
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    out << "query " << i + 1;
    if (!queries[i].label.empty()) out << " (" << queries[i].label << ")";
    out << '\n';
    if (outcomes[i].code != kExitOk) {
      err << "error in query " << i + 1 << ": " << outcomes[i].record["error"]["message"].get<std::string>() << '\n';
    }
    print_table(outcomes[i].record, opt.digits, out);
  }
  return code;
}

// ---------------------------------------------------------------------------
// classical

namespace {

Eigen::Index need(const std::optional<Eigen::Index>& v, const char* flag) {
  if (!v) throw ArgumentError(std::string("missing ") + flag);
  return *v;
}

}  // namespace

int cmd_classical(const std::string& map_file, const ClassicalRequest& req, const Options& opt,
                  std::ostream& out, std::ostream& err) {
  Failure failure{};
  const auto spec = load_map(map_file, opt, failure);
  if (!spec) return emit_failure(failure, opt, out, err);
  if (!spec->chain) {
    return emit_failure({kExitMapValidation, "classical commands need a stochastic map file"}, opt, out, err);
  }

  std::optional<MarkovChain> mc;
  try {
    mc = build_chain(*spec->chain, opt.tol);
  } catch (...) {
    return emit_failure(classify(std::current_exception(), kExitMapValidation), opt, out, err);
  }

  Record r;
  r["operation"] = req.operation;
  try {
    ChainStart start = Eigen::Index{0};
    std::vector<Eigen::Index> target;
    if (req.operation == "mhtf") {
      const auto i = need(req.from, "--from");
      const auto j = need(req.to, "--to");
      r["from"] = i + 1;
      r["to"] = j + 1;
      r["tau"] = classical_mhtf(*mc, i, j);
      start = i;
      target = {j};
    } else if (req.operation == "kac") {
      const auto j = need(req.to, "--state");
      r["state"] = j + 1;
      r["tau"] = kac_return_time(*mc, j);
      r["stationary_probability"] = mc->pi(j);
      start = j;
      target = {j};
    } else if (req.operation == "dist") {
      const auto j = need(req.to, "--to");
      if (!req.distribution) throw ArgumentError("missing --distribution");
      RealVector x = *req.distribution;
      if (x.size() != mc->n) throw DimensionError("distribution length does not match the chain");
      if ((x.array() < 0.0).any() || !(x.sum() > 0.0)) throw ValidationError("distribution must be nonnegative and non-zero");
      const double sum = x.sum();
      x /= sum;
      r["to"] = j + 1;
      r["distribution"] = real_vector_json(x);
      r["normalization"] = sum;
      r["tau"] = classical_mhtf_distribution(*mc, x, j, opt.tol);
      start = x;
      target = {j};
    } else if (req.operation == "subset") {
      const auto i = need(req.from, "--from");
      if (req.set.empty()) throw ArgumentError("missing --set");
      const auto res = classical_mhtf_subset(*mc, i, req.set, opt.tol);
      r["from"] = i + 1;
      Record set = Record::array();
      for (const auto& rt : res.return_times) set.push_back(rt.state + 1);
      r["set"] = set;
      r["tau"] = res.tau;
      r["reference_state"] = res.reference_state + 1;
      Record rts = Record::array();
      for (const auto& rt : res.return_times) rts.push_back({rt.state + 1, rt.tau});
      r["return_times"] = rts;
      r["j_independence_residual"] = res.j_independence_residual;
      start = i;
      target = req.set;
    } else {
      throw ArgumentError("unknown classical operation \"" + req.operation + "\"");
    }
    r["stationary_distribution"] = real_vector_json(mc->pi);

    if (opt.trials > 0) {
      const auto est = classical_monte_carlo(mc->p, start, target, opt.trials, opt.seed);
      Record m;
      m["mean"] = est.mean;
      m["std_error"] = est.std_error;
      m["trials"] = est.trials;
      m["seed"] = est.seed;
      m["rng"] = rnd::kEngineName;
      m["deviation_in_standard_errors"] =
          est.std_error > 0.0 ? std::abs(est.mean - r["tau"].get<double>()) / est.std_error : 0.0;
      r["monte_carlo"] = m;
    }
  } catch (...) {
    return emit_failure(classify(std::current_exception(), kExitQueryPrecondition), opt, out, err);
  }

  if (opt.json) {
    out << r.dump(2) << '\n';
  } else {
    out << "classical " << req.operation << '\n';
    print_table(r, opt.digits, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest

namespace {

struct Check {
  std::string name;
  double deviation;
  double threshold;
  bool passed() const { return deviation <= threshold; }
};

ComplexMatrix rows(double scale, std::initializer_list<std::initializer_list<double>> data) {
  ComplexMatrix m(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : data) {
    Eigen::Index j = 0;
    for (const double x : row) m(i, j++) = scale * x;
    ++i;
  }
  return m;
}

double maxdiff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

ComplexVector vec2(double a, double b) {
  ComplexVector v(2);
  v << a, b;
  return v;
}

void two_level_checks(bool perturb, std::vector<Check>& checks) {
  const double s = 1.0 / std::sqrt(2.0);
  const SuperOperator phi = models::two_level_channel();
  const HittingSolution hs = solve_hitting(phi, subspace_from_vectors({vec2(s, s)}));

  ComplexMatrix k_printed =
      rows(1.0 / 6.0, {{39, -12, -12, 9}, {-72, 32, 28, -12}, {-72, 28, 32, -12}, {177, -72, -72, 39}});
  if (perturb) k_printed(3, 0) += 1e-6;

  checks.push_back({"two-level: map representation",
                    maxdiff(phi.rep(), rows(1.0 / 3.0, {{2, 1, 1, 1}, {-1, 2, 0, 1}, {-1, 0, 2, 1}, {1, -1, -1, 2}})),
                    1e-12});
  checks.push_back({"two-level: Omega",
                    maxdiff(hs.fd.omega_rep, rows(0.5, {{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}})),
                    1e-12});
  checks.push_back({"two-level: Z",
                    maxdiff(hs.fd.z_rep, rows(0.25, {{3, 2, 2, 1}, {-2, 8, -4, 2}, {-2, -4, 8, 2}, {1, -2, -2, 3}})),
                    1e-12});
  checks.push_back({"two-level: arrival projector", maxdiff(hs.projectors.pp, rows(0.25, {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}})), 1e-12});
  checks.push_back({"two-level: survival projector",
                    maxdiff(hs.projectors.qq, rows(0.25, {{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}})),
                    1e-12});
  checks.push_back({"two-level: K", maxdiff(hs.k_rep, k_printed), 1e-12});
  checks.push_back({"two-level: K12",
                    maxdiff(block(hs.k_rep, hs.projectors, 1, 2),
                            rows(1.5, {{-3, 3, 3, -3}, {1, -1, -1, 1}, {1, -1, -1, 1}, {5, -5, -5, 5}})),
                    1e-12});

  const DensityMatrix rho_phi = DensityMatrix::pure(vec2(s, -s));
  const DensityMatrix rho_psi = DensityMatrix::pure(vec2(s, s));
  const DensityMatrix rho_chi = DensityMatrix::pure(vec2(0.0, 1.0));
  const auto m = mhtf_orthogonal(hs, rho_phi, rho_psi);
  checks.push_back({"two-level: direct tau(phi) = 6", std::abs(mean_hitting_time_direct(hs, rho_phi) - 6.0), 1e-9});
  checks.push_back({"two-level: mhtf summands 4 and -2",
                    std::max(std::abs(m.return_term - 4.0), std::abs(m.cross_term + 2.0)), 1e-9});
  checks.push_back({"two-level: series tau(phi) = 6", std::abs(tau_series(phi, hs.projectors, rho_phi) - 6.0), 1e-8});
  const auto fs = condition_first_step(phi, hs.projectors, rho_chi);
  checks.push_back({"two-level: first step of chi",
                    fs.absorbed() ? 1.0 : std::max(std::abs(fs.weight - 1.0 / 6.0), maxdiff(fs.next_state->matrix(), rho_phi.matrix())),
                    1e-12});
  checks.push_back({"two-level: general tau(chi) = 2", std::abs(mhtf_general(hs, rho_chi, rho_psi) - 2.0), 1e-9});
  checks.push_back({"two-level: fundamental identities",
                    verify_fundamental_identities(hs.fd, phi).max_residual(), 1e-12});
}

void four_level_checks(double a, std::vector<Check>& checks) {
  const double b = std::sqrt(1.0 - a * a);
  const SuperOperator t = models::four_level_channel(a);
  const HittingSolution hs = solve_hitting(t, subspace_from_basis(4, {2, 3}));
  const DensityMatrix phi = DensityMatrix::basis(4, 0);
  ComplexVector chi = ComplexVector::Zero(4);
  chi(0) = chi(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho_chi = DensityMatrix::pure(chi);
  const double c = 1.0 + a / (2.0 * b) + 1.0 / (4.0 * b * b);

  std::ostringstream tag;
  tag << "four-level a=" << a << ": ";
  const double direct_phi = mean_hitting_time_direct(hs, phi);
  const double direct_chi = mean_hitting_time_direct(hs, rho_chi);
  checks.push_back({tag.str() + "tau(phi) = 1 + 1/b^2", std::abs(direct_phi - (1.0 + 1.0 / (b * b))), 1e-10});
  checks.push_back({tag.str() + "tau(chi) = 2c", std::abs(direct_chi - 2.0 * c), 1e-10});
  const auto m = mhtf_orthogonal(hs, phi, uniform_arrival_state(hs.subspace));
  checks.push_back({tag.str() + "mhtf summands", std::max(std::abs(m.return_term - (1.0 + 6.0 * b * b) / (4.0 * b * b)),
                                                          std::abs(m.cross_term - (2.0 * b * b - 3.0) / (4.0 * b * b))),
                    1e-10});
  checks.push_back({tag.str() + "orthogonal route = direct", std::abs(m.tau - direct_phi), 1e-9});
  checks.push_back({tag.str() + "general route = direct", std::abs(mhtf_general(hs, rho_chi) - direct_chi), 1e-9});
  checks.push_back({tag.str() + "fundamental identities", verify_fundamental_identities(hs.fd, t).max_residual(), 1e-10});
}

void random_checks(std::vector<Check>& checks) {
  double route = 0.0;
  double series = 0.0;
  double prob = 0.0;
  double identities = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    rnd::Engine eng(seed);
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 3);
    const SuperOperator t = rnd::random_channel(n, 2, eng);
    const auto rank = 1 + static_cast<Eigen::Index>(rnd::uniform01(eng) * static_cast<double>(n - 1));
    std::vector<ComplexVector> vs;
    for (Eigen::Index k = 0; k < rank; ++k) vs.push_back(rnd::random_unit_vector(n, eng));
    const HittingSolution hs = solve_hitting(t, subspace_from_vectors(vs));
    const DensityMatrix rho_phi = rnd::random_density_in(hs.subspace.complement(), eng);
    const DensityMatrix rho_psi = rnd::random_density_in(hs.subspace.projector(), eng);
    const double direct = mean_hitting_time_direct(hs, rho_phi);
    route = std::max(route, std::abs(mhtf_orthogonal(hs, rho_phi, rho_psi).tau - direct));
    series = std::max(series, std::abs(tau_series(t, hs.projectors, rho_phi) - direct));
    prob = std::max(prob, std::abs(hitting_probability(hs, rho_phi) - 1.0));
    identities = std::max(identities, verify_fundamental_identities(hs.fd, t).max_residual());
  }
  checks.push_back({"random: orthogonal route = direct", route, 1e-9});
  checks.push_back({"random: series = direct", series, 1e-8});
  checks.push_back({"random: hitting probability = 1", prob, 1e-10});
  checks.push_back({"random: fundamental identities", identities, 1e-10});
}

}  // namespace

int cmd_selftest(bool perturb, const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<Check> checks;
  try {
    two_level_checks(perturb, checks);
    for (const double a : {0.6, 0.28, 0.96}) four_level_checks(a, checks);
    random_checks(checks);
  } catch (...) {
    const Failure f = classify(std::current_exception(), kExitSelftest);
    return emit_failure({kExitSelftest, "self-test aborted: " + f.message}, opt, out, err);
  }

  const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed(); });
  if (opt.json) {
    Record r;
    Record list = Record::array();
    for (const auto& c : checks) {
      list.push_back({{"name", c.name}, {"passed", c.passed()}, {"deviation", c.deviation}, {"threshold", c.threshold}});
    }
    r["checks"] = list;
    r["failed"] = failed;
    out << r.dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      out << (c.passed() ? "PASS  " : "FAIL  ") << c.name << "  (deviation " << std::setprecision(3) << c.deviation
          << ", threshold " << c.threshold << ")\n";
    }
    out << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
  }
  if (failed > 0) {
    err << failed << " self-test check(s) failed\n";
    return kExitSelftest;
  }
  return kExitOk;
}

}  // namespace qhit::cli
