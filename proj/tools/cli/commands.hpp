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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spec_io.hpp"

namespace qhit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitMapValidation = 2,
  kExitQueryPrecondition = 3,
  kExitSelftest = 4,
  kExitNumeric = 5,
};

inline constexpr std::uint64_t kDefaultSeed = 20260101;

/// Command-line defaults. Fields set inside a query file take precedence.
struct Options {
  Tolerance tol;
  bool json = false;
  int digits = 12;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t trials = 0;
  bool row_stochastic = false;
  std::optional<Method> method;
  std::optional<MhtfRoute> route;
};

int cmd_validate(const std::string& map_file, const Options& opt, std::ostream& out, std::ostream& err);

int cmd_hit(const std::string& map_file, const std::vector<QuerySpec>& queries, const Options& opt,
            std::ostream& out, std::ostream& err);

/// State indices here are 0-based; the CLI layer converts.
struct ClassicalRequest {
  std::string operation;  // mhtf | kac | dist | subset
  std::optional<Eigen::Index> from;
  std::optional<Eigen::Index> to;
  std::vector<Eigen::Index> set;
  std::optional<RealVector> distribution;
};

int cmd_classical(const std::string& map_file, const ClassicalRequest& req, const Options& opt,
                  std::ostream& out, std::ostream& err);

/// `perturb` corrupts one golden matrix so the suite must fail.
int cmd_selftest(bool perturb, const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace qhit::cli
