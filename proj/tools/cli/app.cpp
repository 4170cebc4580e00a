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


#include "app.hpp"

#include <CLI11.hpp>

#include "commands.hpp"
#include "qhit/errors.hpp"

namespace qhit::cli {

namespace {

std::vector<Eigen::Index> to_zero_based(const std::vector<std::int64_t>& v, const char* flag) {
  std::vector<Eigen::Index> out;
  for (const auto k : v) {
    if (k < 1) throw ArgumentError(std::string(flag) + ": state indices are 1-based");
    out.push_back(static_cast<Eigen::Index>(k - 1));
  }
  return out;
}

std::optional<Eigen::Index> to_zero_based(std::int64_t k, const char* flag) {
  if (k == 0) return std::nullopt;
  return to_zero_based(std::vector<std::int64_t>{k}, flag).front();
}

RealVector to_vector(const std::vector<double>& v) {
  RealVector x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  return x;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qhit: mean hitting times of irreducible positive maps and Markov chains"};
  app.require_subcommand(1);

  double tol = Tolerance::kDefaultAtol;
  bool json = false;
  int digits = 12;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t trials = 0;
  bool row_stochastic = false;
  std::string method;
  std::string route;

  app.add_option("--tol", tol, "Absolute and relative tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Emit a JSON record instead of a table");
  app.add_option("--digits", digits, "Significant digits in tables")->check(CLI::Range(1, 17));
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--trials", trials, "Monte-Carlo trials for classical commands (0 disables)")->check(CLI::NonNegativeNumber);
  app.add_flag("--row-stochastic", row_stochastic, "Read stochastic matrices without an orientation as row-stochastic");
  app.add_option("--method", method, "direct, mhtf, series or all")->check(CLI::IsMember({"direct", "mhtf", "series", "all"}));
  app.add_option("--mhtf-route", route, "auto, orthogonal or general")
      ->check(CLI::IsMember({"auto", "orthogonal", "general"}));

  std::string map_file;

  auto* validate = app.add_subcommand("validate", "Check trace preservation, positivity and irreducibility");
  validate->add_option("file", map_file, "Map file")->required();

  auto* hit = app.add_subcommand("hit", "Mean hitting time of a subspace");
  std::string query_file;
  std::vector<std::int64_t> basis;
  std::int64_t start = 0;
  std::vector<double> distribution;
  hit->add_option("file", map_file, "Map file")->required();
  auto* query_opt = hit->add_option("--query", query_file, "Query file (one query, a list, or {\"queries\": [...]})");
  auto* basis_opt = hit->add_option("--basis", basis, "Arrival subspace spanned by these basis states (1-based)")
                        ->delimiter(',');
  auto* start_opt = hit->add_option("--start", start, "Initial basis state (1-based)")->check(CLI::PositiveNumber);
  auto* dist_opt = hit->add_option("--distribution", distribution, "Initial diagonal state")->delimiter(',');
  query_opt->excludes(basis_opt)->excludes(start_opt)->excludes(dist_opt);
  start_opt->excludes(dist_opt);

  auto* classical = app.add_subcommand("classical", "Hitting times of a Markov chain");
  std::string operation;
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t state = 0;
  std::vector<std::int64_t> set;
  classical->add_option("operation", operation, "mhtf, kac, dist or subset")
      ->required()
      ->check(CLI::IsMember({"mhtf", "kac", "dist", "subset"}));
  classical->add_option("file", map_file, "Stochastic map file")->required();
  classical->add_option("--from", from, "Start state (1-based)")->check(CLI::PositiveNumber);
  classical->add_option("--to", to, "Target state (1-based)")->check(CLI::PositiveNumber);
  classical->add_option("--state", state, "State for kac (1-based)")->check(CLI::PositiveNumber);
  classical->add_option("--set", set, "Target set for subset (1-based)")->delimiter(',');
  classical->add_option("--distribution", distribution, "Start distribution for dist")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "Run the embedded golden suite");
  bool perturb = false;
  selftest->add_flag("--perturb", perturb, "Perturb one golden value (negative control)")->group("");

  for (auto* sub : {validate, hit, classical, selftest}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  Options opt;
  opt.tol = Tolerance(tol, tol);
  opt.json = json;
  opt.digits = digits;
  opt.seed = seed;
  opt.trials = trials;
  opt.row_stochastic = row_stochastic;
  if (!method.empty()) opt.method = parse_method(method);
  if (!route.empty()) opt.route = parse_route(route);

  try {
    if (*validate) return cmd_validate(map_file, opt, out, err);
    if (*selftest) return cmd_selftest(perturb, opt, out, err);
    if (*hit) {
      std::vector<QuerySpec> queries;
      if (!query_file.empty()) {
        queries = load_queries(query_file);
      } else {
        if (basis.empty()) throw ArgumentError("hit: give --query or --basis");
        QuerySpec q;
        q.subspace.basis = to_zero_based(basis, "--basis");
        if (!distribution.empty()) {
          q.initial = DistributionState{to_vector(distribution)};
        } else if (start > 0) {
          q.initial = BasisState{*to_zero_based(start, "--start")};
        } else {
          throw ArgumentError("hit: give --start or --distribution");
        }
        queries.push_back(std::move(q));
      }
      return cmd_hit(map_file, queries, opt, out, err);
    }
    ClassicalRequest req;
    req.operation = operation;
    req.from = to_zero_based(from, "--from");
    req.to = to_zero_based(operation == "kac" && state > 0 ? state : to, "--to");
    req.set = to_zero_based(set, "--set");
    if (!distribution.empty()) req.distribution = to_vector(distribution);
    return cmd_classical(map_file, req, opt, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace qhit::cli
