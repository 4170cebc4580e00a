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

// Small closed-form models with known hitting data, used by the self-test,
// the tests and the benchmarks.

#include <vector>

#include "qhit/maps.hpp"

namespace qhit::models {

/// Qubit channel with Kraus pair
///   L = [[1, 1], [0, 1]] / √3,   R = [[1, 0], [−1, 1]] / √3.
/// Invariant state I/2.
std::vector<ComplexMatrix> two_level_kraus();
SuperOperator two_level_channel();

/// Four-level channel parametrized by a ∈ (0, 1), b = √(1 − a²):
///   V₁ = a|1⟩⟨1| + b|1⟩⟨4|,          V₂ = −b|2⟩⟨1| + a|2⟩⟨4|,
///   V₃ = (|3⟩⟨2| + |3⟩⟨3|)/√2,      V₄ = (|4⟩⟨2| − |4⟩⟨3|)/√2.
/// Invariant state I/4. Throws ArgumentError for a outside (0, 1).
std::vector<ComplexMatrix> four_level_kraus(double a);
SuperOperator four_level_channel(double a);

/// Two-state chain that switches with probability p (column-stochastic).
RealMatrix two_state_chain(double p);

/// Deterministic cycle k → k+1 (mod n).
RealMatrix cycle_chain(Eigen::Index n);

}  // namespace qhit::models
