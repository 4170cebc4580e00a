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

// Reference values that do not go through Z, H or K: the monitored series
//   π_r = Tr(ℙ Φ (ℚΦ)^{r−1} ρ),   τ = Σ_r r π_r,
// summed term by term, and trajectory sampling for classical chains.

#include <cstdint>
#include <variant>
#include <vector>

#include "qhit/hitting.hpp"

namespace qhit {

struct FirstVisitDistribution {
  /// probabilities[r − 1] = π_r
  std::vector<double> probabilities;
  /// ‖vec(σ_{R+1})‖₁ / (1 − s), s = spectral radius of ⌈ℚ⌉⌈Φ⌉
  double tail_bound = 0.0;
  int r_max = 0;
  double spectral_radius = 0.0;
};

/// Throws ConvergenceError when spectral_radius(⌈ℚ⌉⌈Φ⌉) >= 1.
FirstVisitDistribution first_visit_series(const SuperOperator& t, const SuperProjectors& sp,
                                          const DensityMatrix& rho, int r_max);

struct SeriesResult {
  double tau = 0.0;
  /// Σ π_r over the summed terms
  double probability = 0.0;
  int terms = 0;
  /// bound on the neglected part of Σ r π_r
  double tail_bound = 0.0;
  double spectral_radius = 0.0;
};

inline constexpr int kSeriesMaxTerms = 2'000'000;

/// Σ r π_r, truncated once the tail bound drops below atol / 10.
SeriesResult tau_series_detailed(const SuperOperator& t, const SuperProjectors& sp, const DensityMatrix& rho,
                                 const Tolerance& tol = {});

inline double tau_series(const SuperOperator& t, const SuperProjectors& sp, const DensityMatrix& rho,
                         const Tolerance& tol = {}) {
  return tau_series_detailed(t, sp, rho, tol).tau;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Initial condition: a single state (0-based) or a probability vector.
using ChainStart = std::variant<Eigen::Index, RealVector>;

inline constexpr std::int64_t kDefaultStepCap = 10'000'000;
inline constexpr std::int64_t kMonteCarloBatch = 4096;

/// Samples trajectories of the column-stochastic chain `p` and records the
/// first step r >= 1 at which the walk is in `target`. A start inside the
/// target therefore measures the return time. Trials are split into fixed
/// batches, each with its own engine seeded from (seed, batch index), and
/// reduced in batch order: the result does not depend on thread scheduling.
MonteCarloEstimate classical_monte_carlo(const RealMatrix& p, const ChainStart& start,
                                         const std::vector<Eigen::Index>& target, std::int64_t trials,
                                         std::uint64_t seed, std::int64_t step_cap = kDefaultStepCap);

}  // namespace qhit
