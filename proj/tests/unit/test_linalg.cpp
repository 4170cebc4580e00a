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
#include "qhit/linalg.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"
#include "test_support.hpp"

using namespace qhit;
using qhit::testing::scaled;

TEST_CASE("vec stacks rows", "[linalg]") {
  ComplexMatrix a(2, 2);
  a << Complex(1, 1), 2.0, 3.0, Complex(0, -4);
  const ComplexVector v = vec(a);
  REQUIRE(v.size() == 4);
  CHECK(v(0) == Complex(1, 1));
  CHECK(v(1) == Complex(2, 0));
  CHECK(v(2) == Complex(3, 0));
  CHECK(v(3) == Complex(0, -4));

  const ComplexVector id = vec(ComplexMatrix::Identity(2, 2));
  CHECK((id == qhit::testing::ket({1.0, 0.0, 0.0, 1.0})));
}

TEST_CASE("unvec inverts vec", "[linalg]") {
  CHECK((unvec(qhit::testing::ket({1.0, 0.0, 0.0, 1.0})) == ComplexMatrix::Identity(2, 2)));
  CHECK(unvec(ComplexVector::Zero(9)) == ComplexMatrix::Zero(3, 3));
  rnd::Engine eng(7);
  for (Eigen::Index n = 1; n <= 8; ++n) {
    const ComplexMatrix a = rnd::ginibre(n, n, eng);
    CHECK((unvec(vec(a)) == a));
  }
}

TEST_CASE("shape errors", "[linalg]") {
  CHECK_THROWS_AS(vec(ComplexMatrix::Zero(2, 3)), DimensionError);
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(5)), DimensionError);
  CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), DimensionError);
  CHECK_THROWS_AS(Tolerance(-1.0, 0.0), ArgumentError);
}

TEST_CASE("kron matches the row-stacking convention", "[linalg]") {
  CHECK((kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)) == ComplexMatrix::Identity(4, 4)));
  rnd::Engine eng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const ComplexMatrix a = rnd::ginibre(n, n, eng);
    const ComplexMatrix b = rnd::ginibre(n, n, eng);
    const ComplexMatrix x = rnd::ginibre(n, n, eng);
    const ComplexVector lhs = vec(a * x * b.transpose());
    const ComplexVector rhs = kron(a, b) * vec(x);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("kron of the two-level Kraus pair gives the printed representation", "[linalg]") {
  const auto k = models::two_level_kraus();
  const ComplexMatrix rep = kron(k[0], k[0].conjugate()) + kron(k[1], k[1].conjugate());
  const ComplexMatrix expected =
      scaled(1.0 / 3.0, {{2, 1, 1, 1}, {-1, 2, 0, 1}, {-1, 0, 2, 1}, {1, -1, -1, 2}});
  CHECK(qhit::testing::max_abs_diff(rep, expected) < 1e-12);
}

TEST_CASE("Hilbert-Schmidt inner product", "[linalg]") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(std::abs(hs_inner(id, id) - Complex(2, 0)) < 1e-15);
  rnd::Engine eng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = rnd::ginibre(3, 3, eng);
    const ComplexMatrix b = rnd::ginibre(3, 3, eng);
    CHECK(std::abs(hs_inner(b, a) - std::conj(hs_inner(a, b))) < 1e-12);
    CHECK(std::abs(hs_inner(b, a) - (b.adjoint() * a).trace()) < 1e-12);
    CHECK(std::abs(hs_inner(b, a) - vec(b).dot(vec(a))) < 1e-12);
    const Complex aa = hs_inner(a, a);
    CHECK(std::abs(aa.imag()) < 1e-12);
    CHECK(aa.real() >= 0.0);
    CHECK(std::abs(aa.real() - vec(a).squaredNorm()) < 1e-10);
  }
}

TEST_CASE("fixed_space", "[linalg]") {
  CHECK(fixed_space(ComplexMatrix::Identity(3, 3)).size() == 3);

  ComplexMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK(fixed_space(rot).empty());

  const ComplexMatrix phi = models::two_level_channel().rep();
  const auto fs = fixed_space(phi);
  REQUIRE(fs.size() == 1);
  const ComplexVector expected = vec(ComplexMatrix::Identity(2, 2)) / std::sqrt(2.0);
  // up to a phase
  CHECK(std::abs(std::abs(expected.dot(fs[0])) - 1.0) < 1e-12);
}

TEST_CASE("fixed_space residual and orthonormality on random maps", "[linalg][property]") {
  rnd::Engine eng(19);
  const Tolerance tol;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const ComplexMatrix m = rnd::random_channel(n, 2, eng).rep();
    const auto fs = fixed_space(m, tol);
    REQUIRE(!fs.empty());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      CHECK((m * fs[i] - fs[i]).norm() <= tol.bound(m.norm()));
      for (std::size_t j = 0; j < fs.size(); ++j) {
        CHECK(std::abs(fs[i].dot(fs[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
      }
    }
  }
}

TEST_CASE("is_psd", "[linalg]") {
  const auto id = is_psd(ComplexMatrix::Identity(3, 3));
  CHECK(id.psd);
  CHECK(id.min_eigenvalue == Catch::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK_FALSE(is_psd(d).psd);

  const auto half = is_psd(0.5 * ComplexMatrix::Identity(2, 2));
  CHECK(half.psd);
  CHECK(half.strictly_positive);
  CHECK(half.min_eigenvalue == Catch::Approx(0.5));

  ComplexMatrix skew(2, 2);
  skew << 1.0, 1.0, 0.0, 1.0;
  CHECK_FALSE(is_psd(skew).hermitian);
  CHECK_FALSE(is_psd(skew).psd);
}

TEST_CASE("is_psd accepts unitarily rotated nonnegative diagonals", "[linalg][property]") {
  rnd::Engine eng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 2 + trial % 5;
    const ComplexMatrix u = rnd::ginibre(n, n, eng).householderQr().householderQ();
    RealVector diag(n);
    for (Eigen::Index k = 0; k < n; ++k) diag(k) = rnd::uniform01(eng);
    diag(0) = 0.0;
    const ComplexMatrix x = u.adjoint() * diag.cast<Complex>().asDiagonal() * u;
    CHECK(is_psd(x).psd);
  }
}

TEST_CASE("spectral_radius", "[linalg]") {
  CHECK(spectral_radius(ComplexMatrix::Identity(4, 4)) == Catch::Approx(1.0));
  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  CHECK(spectral_radius(nil) == Catch::Approx(0.0).margin(1e-15));

  const ComplexMatrix phi = models::two_level_channel().rep();
  const ComplexMatrix q = ComplexMatrix::Identity(2, 2) - 0.5 * ComplexMatrix::Ones(2, 2);
  const double s = spectral_radius(kron(q, q.conjugate()) * phi);
  CHECK(s < 1.0);
  CHECK(s > 0.0);
}
