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

#include "qhit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/LU>

#include "qhit/errors.hpp"

namespace qhit {

namespace {

void require_state(const MarkovChain& mc, Eigen::Index k, const char* what) {
  if (k < 0 || k >= mc.n) {
    std::ostringstream os;
    os << what << ": state index " << k << " out of range [0, " << mc.n << ")";
    throw ArgumentError(os.str());
  }
}

}  // namespace

MarkovChain build_chain(const RealMatrix& p, const Tolerance& tol) {
  validate_column_stochastic(p, tol);
  const Eigen::Index n = p.rows();

  const auto fixed = fixed_space(p.cast<Complex>(), tol);
  if (fixed.size() != 1) {
    std::ostringstream os;
    os << "build_chain: stationary distribution is not unique (fixed space dimension " << fixed.size()
       << "); the chain is reducible";
    throw IrreducibilityError(os.str());
  }
  const ComplexVector v = fixed.front() / fixed.front().sum();
  RealVector pi = v.real();
  if (v.imag().norm() > tol.bound(1.0) || !(pi.minCoeff() > tol.atol())) {
    throw IrreducibilityError("build_chain: stationary distribution is not strictly positive");
  }
  pi /= pi.sum();

  const RealMatrix id = RealMatrix::Identity(n, n);
  const RealMatrix omega = pi * RealVector::Ones(n).transpose();
  Eigen::PartialPivLU<RealMatrix> lu(id - p + omega);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > 64.0 * std::numeric_limits<double>::epsilon())) {
    throw NumericError("build_chain: I - P + Omega is singular to working precision", cond);
  }

  MarkovChain mc{n, p, pi, lu.solve(id), cond};

  const double scale = std::max(1.0, cond);
  const double stationarity = (p * pi - pi).norm();
  const double solve = (mc.z * (id - p + omega) - id).norm();
  const double column_sums = (mc.z.colwise().sum() - RealVector::Ones(n).transpose()).norm();
  if (stationarity > tol.bound(1.0) || solve > tol.atol() * scale || column_sums > tol.atol() * scale) {
    std::ostringstream os;
    os << "build_chain: invariant check failed (stationarity " << stationarity << ", solve " << solve
       << ", column sums " << column_sums << ")";
    throw NumericError(os.str(), cond);
  }
  return mc;
}

double classical_mhtf(const MarkovChain& mc, Eigen::Index i, Eigen::Index j) {
  require_state(mc, i, "classical_mhtf");
  require_state(mc, j, "classical_mhtf");
  if (i == j) {
    throw ArgumentError("classical_mhtf: i == j is a return time; use kac_return_time");
  }
  return (mc.z(j, j) - mc.z(j, i)) / mc.pi(j);
}

double kac_return_time(const MarkovChain& mc, Eigen::Index j) {
  require_state(mc, j, "kac_return_time");
  return 1.0 / mc.pi(j);
}

double classical_mhtf_distribution(const MarkovChain& mc, const RealVector& x, Eigen::Index j,
                                   const Tolerance& tol) {
  require_state(mc, j, "classical_mhtf_distribution");
  if (x.size() != mc.n) throw DimensionError("classical_mhtf_distribution: distribution has wrong length");
  if (!x.allFinite() || (x.array() < 0.0).any() || std::abs(x.sum() - 1.0) > tol.atol()) {
    throw ValidationError("classical_mhtf_distribution: x is not a probability distribution");
  }
  const RealVector zpx = mc.z * (mc.p * x);
  return 1.0 + (mc.z(j, j) - zpx(j)) / mc.pi(j);
}

SubsetResult classical_mhtf_subset(const MarkovChain& mc, Eigen::Index i, const std::vector<Eigen::Index>& s,
                                   const Tolerance& tol) {
  require_state(mc, i, "classical_mhtf_subset");
  if (s.empty()) throw ArgumentError("classical_mhtf_subset: target set is empty");
  const std::set<Eigen::Index> set(s.begin(), s.end());
  for (const auto k : set) require_state(mc, k, "classical_mhtf_subset");
  if (set.contains(i)) throw ArgumentError("classical_mhtf_subset: start state lies in the target set");
  if (static_cast<Eigen::Index>(set.size()) >= mc.n) {
    throw ArgumentError("classical_mhtf_subset: target set must not contain every state");
  }

  const std::vector<Eigen::Index> targets(set.begin(), set.end());
  const HittingSolution hs =
      solve_hitting(from_stochastic(mc.p, tol), subspace_from_basis(mc.n, targets), tol);

  SubsetResult out;
  out.return_times.reserve(targets.size());
  for (const auto k : targets) {
    out.return_times.push_back({k, mean_hitting_time_direct(hs, DensityMatrix::basis(mc.n, k))});
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double magnitude = 1.0;
  for (const auto j : targets) {
    double sum = 0.0;
    for (const auto& rt : out.return_times) sum += mc.z(rt.state, j) * rt.tau;
    out.reference_sums.push_back(sum);
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
    magnitude = std::max(magnitude, std::abs(sum));
  }
  out.j_independence_residual = hi - lo;
  if (out.j_independence_residual > kSubsetConsistency * magnitude) {
    std::ostringstream os;
    os << "classical_mhtf_subset: reference sums depend on the chosen state (spread "
       << out.j_independence_residual << ")";
    throw NumericError(os.str(), mc.condition_estimate);
  }

  out.reference_state = targets.front();
  double cross = 0.0;
  for (const auto& rt : out.return_times) cross += mc.z(rt.state, i) * rt.tau;
  out.tau = out.reference_sums.front() - cross;
  return out;
}

}  // namespace qhit
