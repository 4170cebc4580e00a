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

// Seeded random instances. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the conversions to doubles below are
// written out so that results do not depend on the standard library vendor.

#include <cstdint>
#include <random>
#include <vector>

#include "qhit/maps.hpp"

namespace qhit::rnd {

using Engine = std::mt19937_64;

inline constexpr const char* kEngineName = "mt19937_64";

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Engine& eng);
/// Standard normal via Box–Muller.
double gaussian(Engine& eng);

/// Ginibre matrix: i.i.d. complex Gaussian entries.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Engine& eng);
ComplexVector random_unit_vector(Eigen::Index n, Engine& eng);

/// `count` Kraus operators with Σ Vᵢ*Vᵢ = I (normalized Ginibre stack).
std::vector<ComplexMatrix> random_kraus(Eigen::Index n, int count, Engine& eng);
SuperOperator random_channel(Eigen::Index n, int count, Engine& eng);

/// Random density of the given rank (rank <= n).
DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, Engine& eng);
/// Random density supported on the range of an orthogonal projector.
DensityMatrix random_density_in(const ComplexMatrix& projector, Engine& eng);

/// Random column-stochastic matrix with a Hamiltonian cycle so it is irreducible.
RealMatrix random_stochastic(Eigen::Index n, Engine& eng, double zero_fraction = 0.3);
RealVector random_distribution(Eigen::Index n, Engine& eng);

}  // namespace qhit::rnd
