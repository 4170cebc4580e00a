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

#include "qhit/errors.hpp"
#include "qhit/fundamental.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"
#include "test_support.hpp"

using namespace qhit;
using qhit::testing::max_abs_diff;
using qhit::testing::scaled;

namespace {

FundamentalData build(const SuperOperator& t) { return fundamental_map(t, invariant_state(t)); }

}  // namespace

TEST_CASE("build_omega", "[fundamental]") {
  const DensityMatrix pi(0.5 * ComplexMatrix::Identity(2, 2));
  const ComplexMatrix omega = build_omega(pi);
  CHECK(max_abs_diff(omega, scaled(0.5, {{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 1}})) < 1e-15);
  CHECK(max_abs_diff(omega * omega, omega) < 1e-15);

  rnd::Engine eng(3);
  const DensityMatrix target = rnd::random_density(3, 3, eng);
  const SuperOperator om = from_raw(build_omega(target));
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = rnd::random_density(3, 1 + trial % 3, eng);
    CHECK(max_abs_diff(qhit::apply(om, rho.matrix()), target.matrix()) < 1e-14);
  }
  const Eigen::ComplexEigenSolver<ComplexMatrix> es(build_omega(target));
  int nonzero = 0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (std::abs(es.eigenvalues()(k)) > 1e-12) {
      ++nonzero;
      CHECK(std::abs(es.eigenvalues()(k) - 1.0) < 1e-12);
    }
  }
  CHECK(nonzero == 1);
}

TEST_CASE("fundamental map of the two-level channel", "[fundamental]") {
  const FundamentalData fd = build(models::two_level_channel());
  const ComplexMatrix printed =
      scaled(0.25, {{3, 2, 2, 1}, {-2, 8, -4, 2}, {-2, -4, 8, 2}, {1, -2, -2, 3}});
  CHECK(max_abs_diff(fd.z_rep, printed) < 1e-12);
  CHECK(fd.condition_estimate >= 1.0);
  CHECK(verify_fundamental_identities(fd, models::two_level_channel()).max_residual() <= 1e-12);
}

TEST_CASE("Z is the identity when the map already projects onto pi", "[fundamental]") {
  rnd::Engine eng(9);
  const DensityMatrix pi = rnd::random_density(3, 3, eng);
  const SuperOperator omega = from_raw(build_omega(pi));
  const FundamentalData fd = build(omega);
  CHECK(max_abs_diff(fd.z_rep, ComplexMatrix::Identity(9, 9)) < 1e-12);
}

TEST_CASE("identities on the four-level channel", "[fundamental]") {
  for (const double a : {0.28, 0.6, 0.96}) {
    const SuperOperator t = models::four_level_channel(a);
    const auto report = verify_fundamental_identities(build(t), t);
    CHECK(report.max_residual() <= 1e-10);
  }
}

TEST_CASE("identities on random irreducible channels", "[fundamental][property]") {
  rnd::Engine eng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const SuperOperator t = rnd::random_channel(2 + trial % 3, 2 + trial % 2, eng);
    const FundamentalData fd = build(t);
    const Eigen::Index d = t.rep().rows();
    const ComplexMatrix lhs = ComplexMatrix::Identity(d, d) - t.rep() + fd.omega_rep;
    CHECK((lhs * fd.z_rep - ComplexMatrix::Identity(d, d)).norm() <= 1e-10);
    const auto report = verify_fundamental_identities(fd, t);
    CHECK(report.passes(1e-10));

    const SuperOperator z = from_raw(fd.z_rep);
    const ComplexMatrix x = rnd::ginibre(t.dim(), t.dim(), eng);
    CHECK(std::abs(qhit::apply(z, x).trace() - x.trace()) <= 1e-10 * x.norm());
  }
}

TEST_CASE("fundamental_map preconditions", "[fundamental]") {
  const SuperOperator id = from_raw(ComplexMatrix::Identity(4, 4));
  const auto cert = invariant_state(id);
  CHECK(cert.fixed_space_dim == 4);
  CHECK_THROWS_AS(fundamental_map(id, cert), IrreducibilityError);
}
