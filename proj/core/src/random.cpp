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

#include "qhit/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qhit/errors.hpp"

namespace qhit::rnd {

double uniform01(Engine& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

double gaussian(Engine& eng) {
  // 1 - u lies in (0, 1], so the log is finite
  const double u1 = 1.0 - uniform01(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Engine& eng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gaussian(eng);
      const double im = gaussian(eng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexVector random_unit_vector(Eigen::Index n, Engine& eng) {
  ComplexVector v = ginibre(n, 1, eng).col(0);
  return v / v.norm();
}

std::vector<ComplexMatrix> random_kraus(Eigen::Index n, int count, Engine& eng) {
  if (n <= 0 || count <= 0) throw ArgumentError("random_kraus: dimension and count must be positive");
  const ComplexMatrix stack = ginibre(count * n, n, eng);
  const ComplexMatrix gram = stack.adjoint() * stack;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const ComplexMatrix inv_sqrt = es.operatorInverseSqrt();
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    ops.emplace_back(stack.block(k * n, 0, n, n) * inv_sqrt);
  }
  return ops;
}

SuperOperator random_channel(Eigen::Index n, int count, Engine& eng) {
  return from_kraus(random_kraus(n, count, eng));
}

DensityMatrix random_density(Eigen::Index n, Eigen::Index rank, Engine& eng) {
  if (rank <= 0 || rank > n) throw ArgumentError("random_density: rank out of range");
  const ComplexMatrix w = ginibre(n, rank, eng);
  const ComplexMatrix rho = w * w.adjoint();
  return DensityMatrix(rho / rho.trace().real());
}

DensityMatrix random_density_in(const ComplexMatrix& projector, Engine& eng) {
  const auto rank = static_cast<Eigen::Index>(std::llround(projector.trace().real()));
  if (rank <= 0) throw ArgumentError("random_density_in: projector has rank zero");
  const Eigen::Index k = 1 + static_cast<Eigen::Index>(eng() % static_cast<std::uint64_t>(rank));
  const ComplexMatrix w = projector * ginibre(projector.rows(), k, eng);
  const ComplexMatrix rho = hermitize(w * w.adjoint());
  return DensityMatrix(rho / rho.trace().real());
}

RealMatrix random_stochastic(Eigen::Index n, Engine& eng, double zero_fraction) {
  if (n <= 0) throw ArgumentError("random_stochastic: dimension must be positive");
  RealMatrix p(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double keep = uniform01(eng);
      const double w = uniform01(eng);
      p(i, j) = keep < zero_fraction ? 0.0 : w;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    p((j + 1) % n, j) += 0.5 + uniform01(eng);
    p.col(j) /= p.col(j).sum();
  }
  return p;
}

RealVector random_distribution(Eigen::Index n, Engine& eng) {
  RealVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = -std::log(1.0 - uniform01(eng));
  return x / x.sum();
}

}  // namespace qhit::rnd
