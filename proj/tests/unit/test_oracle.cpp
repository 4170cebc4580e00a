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


#include <catch_amalgamated.hpp>

#include <cmath>

#include "qhit/errors.hpp"
#include "qhit/oracle.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"
#include "test_support.hpp"

using namespace qhit;
using qhit::testing::ket;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("first-visit distribution of the two-level channel", "[oracle]") {
  const SuperOperator t = models::two_level_channel();
  const auto sp = super_projectors(subspace_from_vectors({ket({kS, kS})}));
  const auto dist = first_visit_series(t, sp, DensityMatrix::pure(ket({kS, -kS})), 200);
  REQUIRE(dist.probabilities.size() == 200);
  double total = 0.0;
  for (const double p : dist.probabilities) {
    CHECK(p >= -1e-10);
    CHECK(p <= 1.0 + 1e-10);
    total += p;
    CHECK(total <= 1.0 + 1e-10);
  }
  CHECK(total == Catch::Approx(1.0).margin(1e-10));
  CHECK(total + dist.tail_bound >= 1.0 - 1e-10);
  CHECK(dist.tail_bound >= 0.0);
  CHECK(dist.spectral_radius < 1.0);
}

TEST_CASE("tail bound shrinks with the horizon", "[oracle]") {
  const SuperOperator t = models::two_level_channel();
  const auto sp = super_projectors(subspace_from_vectors({ket({kS, kS})}));
  const DensityMatrix rho = DensityMatrix::pure(ket({kS, -kS}));
  const double t10 = first_visit_series(t, sp, rho, 10).tail_bound;
  const double t40 = first_visit_series(t, sp, rho, 40).tail_bound;
  CHECK(t40 < t10);
}

TEST_CASE("geometric first-visit law of a two-state chain", "[oracle]") {
  for (const double p : {0.5, 0.25, 0.1}) {
    const SuperOperator t = from_stochastic(models::two_state_chain(p));
    const auto sp = super_projectors(subspace_from_basis(2, {1}));
    const auto dist = first_visit_series(t, sp, DensityMatrix::basis(2, 0), 30);
    for (int r = 1; r <= 30; ++r) {
      CHECK(dist.probabilities[static_cast<std::size_t>(r - 1)] ==
            Catch::Approx(std::pow(1.0 - p, r - 1) * p).margin(1e-15));
    }
    CHECK(tau_series(t, sp, DensityMatrix::basis(2, 0)) == Catch::Approx(1.0 / p).margin(1e-8));
  }
}

TEST_CASE("absorbed in one step", "[oracle]") {
  const SuperOperator t = from_stochastic(models::cycle_chain(3));
  const auto sp = super_projectors(subspace_from_basis(3, {2}));
  const auto dist = first_visit_series(t, sp, DensityMatrix::basis(3, 1), 5);
  CHECK(dist.probabilities[0] == 1.0);
  for (std::size_t r = 1; r < 5; ++r) CHECK(dist.probabilities[r] == 0.0);
  CHECK(dist.tail_bound == 0.0);
  const auto series = tau_series_detailed(t, sp, DensityMatrix::basis(3, 1));
  CHECK(series.tau == 1.0);
  CHECK(series.terms == 1);
}

TEST_CASE("series values of the two-level channel", "[oracle]") {
  const SuperOperator t = models::two_level_channel();
  const auto sp = super_projectors(subspace_from_vectors({ket({kS, kS})}));
  const auto phi = tau_series_detailed(t, sp, DensityMatrix::pure(ket({kS, -kS})));
  CHECK(phi.tau == Catch::Approx(6.0).margin(1e-8));
  CHECK(phi.probability == Catch::Approx(1.0).margin(1e-10));
  CHECK(phi.tail_bound < 1e-11);
  CHECK(tau_series(t, sp, DensityMatrix::pure(ket({0.0, 1.0}))) == Catch::Approx(2.0).margin(1e-8));
}

TEST_CASE("series preconditions", "[oracle]") {
  const auto sp = super_projectors(subspace_from_basis(2, {0}));
  const SuperOperator id = from_raw(ComplexMatrix::Identity(4, 4));
  CHECK_THROWS_AS(tau_series(id, sp, DensityMatrix::basis(2, 1)), ConvergenceError);
  CHECK_THROWS_AS(first_visit_series(id, sp, DensityMatrix::basis(2, 1), 3), ConvergenceError);
  CHECK_THROWS_AS(first_visit_series(models::two_level_channel(), sp, DensityMatrix::basis(2, 1), 0),
                  ArgumentError);
}

TEST_CASE("series agrees with the direct route on random instances", "[oracle][property]") {
  rnd::Engine eng(5);
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    const auto inst = qhit::testing::random_instance(seed);
    const auto hs = solve_hitting(inst.map, inst.subspace);
    const DensityMatrix rho = rnd::random_density(inst.map.dim(), 1, eng);
    const auto series = tau_series_detailed(inst.map, hs.projectors, rho);
    CHECK(std::abs(series.tau - mean_hitting_time_direct(hs, rho)) <= 1e-8);
    CHECK(std::abs(series.probability - 1.0) <= 1e-10);
  }
}

TEST_CASE("Monte-Carlo on small chains", "[oracle]") {
  const RealMatrix p = models::two_state_chain(0.5);
  const auto est = classical_monte_carlo(p, Eigen::Index{0}, {1}, 100000, 42);
  CHECK(est.trials == 100000);
  CHECK(est.seed == 42);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.mean - 2.0) <= 3.0 * est.std_error);

  // return to the start state: Kac gives 1/π = 2
  const auto ret = classical_monte_carlo(p, Eigen::Index{1}, {1}, 100000, 43);
  CHECK(std::abs(ret.mean - 2.0) <= 3.0 * ret.std_error);

  const auto cyc = classical_monte_carlo(models::cycle_chain(4), Eigen::Index{0}, {2}, 1000, 1);
  CHECK(cyc.mean == 2.0);
  CHECK(cyc.std_error == 0.0);
}

TEST_CASE("Monte-Carlo is reproducible", "[oracle]") {
  rnd::Engine eng(9);
  const RealMatrix p = rnd::random_stochastic(5, eng);
  const RealVector x = rnd::random_distribution(5, eng);
  const auto a = classical_monte_carlo(p, x, {3}, 20000, 77);
  const auto b = classical_monte_carlo(p, x, {3}, 20000, 77);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto c = classical_monte_carlo(p, x, {3}, 20000, 78);
  CHECK(a.mean != c.mean);
}

TEST_CASE("Monte-Carlo argument checks", "[oracle]") {
  const RealMatrix p = models::two_state_chain(0.5);
  CHECK_THROWS_AS(classical_monte_carlo(p, Eigen::Index{0}, {1}, 0, 1), ArgumentError);
  CHECK_THROWS_AS(classical_monte_carlo(p, Eigen::Index{0}, {}, 10, 1), ArgumentError);
  CHECK_THROWS_AS(classical_monte_carlo(p, Eigen::Index{5}, {1}, 10, 1), ArgumentError);
  RealVector bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS_AS(classical_monte_carlo(p, bad, {1}, 10, 1), ValidationError);
  // state 1 never reaches state 0
  CHECK_THROWS_AS(classical_monte_carlo(RealMatrix::Identity(2, 2), Eigen::Index{1}, {0}, 10, 1, 1000),
                  ConvergenceError);
}
