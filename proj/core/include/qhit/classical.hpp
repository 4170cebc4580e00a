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

// Finite irreducible Markov chains in the column-stochastic convention
// (P(i, j) is the probability of j → i), their fundamental matrix
// Z = (I − P + Ω)⁻¹ with Ω = π 1ᵀ, and the hitting-time formulas built on it:
//
//   E_i T_j   = (Z_jj − Z_ji) / π_j                       i ≠ j
//   τ(j → j)  = 1 / π_j
//   τ(x → j)  = 1 + (Z_jj − (Z P x)_j) / π_j               start distributed as x
//   τ(i → S)  = Σ_{k∈S} (Z_kj − Z_ki) τ(k → S)             any j ∈ S, i ∉ S
//
// State indices are 0-based here.

#include <vector>

#include "qhit/hitting.hpp"

namespace qhit {

struct MarkovChain {
  Eigen::Index n = 0;
  RealMatrix p;
  RealVector pi;
  RealMatrix z;
  double condition_estimate = 0.0;
};

/// Throws ValidationError for non-stochastic input and IrreducibilityError when
/// the stationary distribution is not unique or not strictly positive.
MarkovChain build_chain(const RealMatrix& p, const Tolerance& tol = {});

/// Throws ArgumentError when i == j (see kac_return_time).
double classical_mhtf(const MarkovChain& mc, Eigen::Index i, Eigen::Index j);

double kac_return_time(const MarkovChain& mc, Eigen::Index j);

double classical_mhtf_distribution(const MarkovChain& mc, const RealVector& x, Eigen::Index j,
                                   const Tolerance& tol = {});

struct SubsetReturnTime {
  Eigen::Index state;
  double tau;
};

struct SubsetResult {
  double tau = 0.0;
  /// the j ∈ S used for `tau`
  Eigen::Index reference_state = 0;
  /// τ(k → S) for k ∈ S, ascending k
  std::vector<SubsetReturnTime> return_times;
  /// Σ_{k∈S} Z_kj τ(k → S) for each j ∈ S (same order as return_times)
  std::vector<double> reference_sums;
  /// max − min of reference_sums
  double j_independence_residual = 0.0;
};

inline constexpr double kSubsetConsistency = 1e-9;

/// Return times τ(k → S) are computed on the embedded map with
/// V = span{|k⟩ : k ∈ S}. Throws NumericError if the reference sums disagree
/// by more than kSubsetConsistency (relative to their magnitude, floor 1).
SubsetResult classical_mhtf_subset(const MarkovChain& mc, Eigen::Index i, const std::vector<Eigen::Index>& s,
                                   const Tolerance& tol = {});

}  // namespace qhit
