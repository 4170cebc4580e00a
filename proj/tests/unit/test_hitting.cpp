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
#include "qhit/hitting.hpp"
#include "qhit/random.hpp"
#include "qhit/reference_models.hpp"
#include "test_support.hpp"

using namespace qhit;
using qhit::testing::ket;
using qhit::testing::max_abs_diff;
using qhit::testing::scaled;

namespace {

double tr(const ComplexMatrix& rep, const DensityMatrix& rho) {
  return trace_of_vec(rep * rho.vectorized()).real();
}

const double kS = 1.0 / std::sqrt(2.0);

struct TwoLevel {
  HittingSolution hs = solve_hitting(models::two_level_channel(), subspace_from_vectors({ket({kS, kS})}));
  DensityMatrix phi = DensityMatrix::pure(ket({kS, -kS}));
  DensityMatrix psi = DensityMatrix::pure(ket({kS, kS}));
  DensityMatrix chi = DensityMatrix::pure(ket({0.0, 1.0}));
};

struct FourLevel {
  explicit FourLevel(double a_) : a(a_), b(std::sqrt(1.0 - a_ * a_)) {}
  double a;
  double b;
  HittingSolution hs = solve_hitting(models::four_level_channel(a), subspace_from_basis(4, {2, 3}));
  DensityMatrix phi = DensityMatrix::basis(4, 0);
  DensityMatrix chi = DensityMatrix::pure(ket({kS, 0.0, 0.0, kS}));

  // x|3⟩⟨3| + y|3⟩⟨4| + conj(y)|4⟩⟨3| + (1 − x)|4⟩⟨4|
  DensityMatrix in_v(double x, Complex y) const {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(2, 2) = x;
    m(2, 3) = y;
    m(3, 2) = std::conj(y);
    m(3, 3) = 1.0 - x;
    return DensityMatrix(m);
  }
};

}  // namespace

TEST_CASE("subspace_from_vectors", "[hitting]") {
  const auto v1 = subspace_from_vectors({ket({kS, kS})});
  CHECK(v1.rank() == 1);
  CHECK(max_abs_diff(v1.projector(), 0.5 * ComplexMatrix::Ones(2, 2)) < 1e-15);

  const auto v2 = subspace_from_vectors({ket({0, 0, 1, 0}), ket({0, 0, 0, 1})});
  CHECK(v2.rank() == 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(2, 2) = expected(3, 3) = 1.0;
  CHECK(max_abs_diff(v2.projector(), expected) < 1e-15);
  CHECK(max_abs_diff(subspace_from_basis(4, {2, 3}).projector(), expected) == 0.0);

  rnd::Engine eng(1);
  const ComplexVector v = rnd::ginibre(3, 1, eng).col(0);
  CHECK(max_abs_diff(subspace_from_vectors({v, 2.0 * v}).projector(), subspace_from_vectors({v}).projector()) <
        1e-14);
  CHECK(subspace_from_vectors({v, 2.0 * v}).rank() == 1);

  CHECK_THROWS_AS(subspace_from_vectors({ComplexVector::Zero(3)}), ArgumentError);
  CHECK_THROWS_AS(subspace_from_vectors({ket({1, 0}), ket({0, 1})}), PreconditionError);
  CHECK_THROWS_AS(subspace_from_basis(3, {}), ArgumentError);
  CHECK_THROWS_AS(ArrivalSubspace::from_projector(ComplexMatrix::Identity(2, 2)), PreconditionError);
  CHECK_THROWS_AS(ArrivalSubspace::from_projector(0.7 * ComplexMatrix::Identity(2, 2)), ValidationError);
}

TEST_CASE("super projectors", "[hitting]") {
  const auto sp = super_projectors(subspace_from_vectors({ket({kS, kS})}));
  CHECK(max_abs_diff(sp.pp, 0.25 * ComplexMatrix::Ones(4, 4)) < 1e-15);
  CHECK(max_abs_diff(sp.qq, scaled(0.25, {{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}})) <
        1e-15);
}

TEST_CASE("super projector algebra on random subspaces", "[hitting][property]") {
  rnd::Engine eng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const auto v = qhit::testing::random_subspace(n, eng);
    const auto sp = super_projectors(v);
    const Eigen::Index d = n * n;
    CHECK(max_abs_diff(sp.pp * sp.pp, sp.pp) < 1e-12);
    CHECK(max_abs_diff(sp.qq * sp.qq, sp.qq) < 1e-12);
    CHECK(max_abs_diff(sp.rr * sp.rr, sp.rr) < 1e-12);
    CHECK(max_abs_diff(sp.pp + sp.qq + sp.rr, ComplexMatrix::Identity(d, d)) < 1e-14);
    const ComplexMatrix x = rnd::ginibre(n, n, eng);
    const ComplexMatrix& p = v.projector();
    CHECK(max_abs_diff(unvec(sp.pp * vec(x)), p * x * p) < 1e-12);
    CHECK(std::abs(trace_of_vec(sp.rr * vec(x))) <= 1e-12 * x.norm());
  }
}

TEST_CASE("hitting maps of the two-level channel", "[hitting]") {
  const TwoLevel ex;
  const ComplexMatrix k_printed = scaled(1.0 / 6.0, {{39, -12, -12, 9},
                                                      {-72, 32, 28, -12},
                                                      {-72, 28, 32, -12},
                                                      {177, -72, -72, 39}});
  CHECK(max_abs_diff(ex.hs.k_rep, k_printed) < 1e-12);
  const ComplexMatrix k12_printed =
      scaled(1.5, {{-3, 3, 3, -3}, {1, -1, -1, 1}, {1, -1, -1, 1}, {5, -5, -5, 5}});
  CHECK(max_abs_diff(block(ex.hs.k_rep, ex.hs.projectors, 1, 2), k12_printed) < 1e-12);
  CHECK(ex.hs.diagnostics.spectral_radius_qphi < 1.0);
}

TEST_CASE("hitting maps of the four-level channel match the printed blocks", "[hitting]") {
  for (const double a : {0.28, 0.6, 0.96}) {
    const FourLevel ex(a);
    const double b = ex.b;
    ComplexMatrix k = ComplexMatrix::Zero(16, 16);
    // upper left 8×8
    k(0, 0) = a * a / std::pow(b, 4);
    k(0, 3) = a / std::pow(b, 3);
    k(5, 0) = 1.0 / (b * b);
    k(5, 3) = a / b;
    // upper right
    k(0, 12) = a / std::pow(b, 3);
    k(0, 15) = 1.0 / (b * b);
    k(5, 12) = a / b;
    k(5, 15) = 2.0;
    // lower left
    for (const Eigen::Index r : {10, 15}) {
      k(r, 0) = (1.0 + b * b) / (2.0 * b * b);
      k(r, 3) = a / (2.0 * b);
      k(r, 5) = 0.5;
    }
    k(10, 6) = 0.5;
    k(15, 6) = -0.5;
    // lower right
    k(10, 9) = 0.5;
    k(10, 10) = 0.5;
    k(15, 9) = -0.5;
    k(15, 10) = 0.5;
    for (const Eigen::Index r : {10, 15}) {
      k(r, 12) = a / (2.0 * b);
      k(r, 15) = 1.5;
    }
    CHECK(max_abs_diff(ex.hs.k_rep, k) < 1e-12);
  }
}

TEST_CASE("K = H (I - QPhi)^-1 on random instances", "[hitting][property]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = qhit::testing::random_instance(seed);
    const auto sp = super_projectors(inst.subspace);
    const auto hm = hitting_maps(inst.map, sp);
    const Eigen::Index d = inst.map.rep().rows();
    const ComplexMatrix resolvent = (ComplexMatrix::Identity(d, d) - sp.qq * inst.map.rep()).inverse();
    CHECK(max_abs_diff(hm.k_rep, hm.h_rep * resolvent) < 1e-10);
    CHECK(max_abs_diff(hm.h_rep, inst.map.rep() * resolvent) < 1e-10);
  }
}

TEST_CASE("H and K are positive maps", "[hitting][property]") {
  rnd::Engine eng(71);
  for (std::uint64_t seed = 20; seed < 30; ++seed) {
    const auto inst = qhit::testing::random_instance(seed);
    const auto hm = hitting_maps(inst.map, super_projectors(inst.subspace));
    const DensityMatrix rho = rnd::random_density(inst.map.dim(), 1 + seed % inst.map.dim(), eng);
    CHECK(is_psd(unvec(hm.h_rep * rho.vectorized()), Tolerance(1e-9, 1e-9)).psd);
    CHECK(is_psd(unvec(hm.k_rep * rho.vectorized()), Tolerance(1e-9, 1e-9)).psd);
  }
}

TEST_CASE("hitting_maps rejects a closed complement", "[hitting]") {
  // identity map: nothing ever leaves V⊥, so 1 is in the spectrum of QPhi
  const auto sp = super_projectors(subspace_from_basis(2, {0}));
  CHECK_THROWS_AS(hitting_maps(from_raw(ComplexMatrix::Identity(4, 4)), sp), NumericError);
}

TEST_CASE("blocks", "[hitting]") {
  const auto sp = super_projectors(subspace_from_basis(3, {1}));
  const ComplexMatrix id = ComplexMatrix::Identity(9, 9);
  const ComplexMatrix sum = block(id, sp, 1, 1) + block(id, sp, 1, 2) + block(id, sp, 2, 1) + block(id, sp, 2, 2);
  CHECK(max_abs_diff(sum, id) < 1e-15);
  CHECK_THROWS_AS(block(id, sp, 0, 1), ArgumentError);

  const TwoLevel ex;
  const auto dnl = dnl_maps(ex.hs);
  CHECK(block(dnl.n_rep, ex.hs.projectors, 1, 1).norm() < 1e-13);
  CHECK(block(dnl.n_rep, ex.hs.projectors, 2, 2).norm() < 1e-13);
}

TEST_CASE("two-level golden scalars", "[hitting]") {
  const TwoLevel ex;
  CHECK(hitting_probability(ex.hs, ex.phi) == Catch::Approx(1.0).margin(1e-12));
  CHECK(hitting_probability(ex.hs, ex.psi) == Catch::Approx(1.0).margin(1e-12));
  CHECK(mean_hitting_time_direct(ex.hs, ex.phi) == Catch::Approx(6.0).margin(1e-10));
  CHECK(mean_hitting_time_direct(ex.hs, ex.chi) == Catch::Approx(2.0).margin(1e-10));
  CHECK(mean_hitting_time_shortcut(ex.hs, ex.phi) == Catch::Approx(6.0).margin(1e-10));
  CHECK(tr(block(ex.hs.k_rep, ex.hs.projectors, 1, 2), ex.phi) == Catch::Approx(6.0).margin(1e-10));

  const auto m = mhtf_orthogonal(ex.hs, ex.phi, ex.psi);
  CHECK(m.return_term == Catch::Approx(4.0).margin(1e-10));
  CHECK(m.cross_term == Catch::Approx(-2.0).margin(1e-10));
  CHECK(m.tau == Catch::Approx(6.0).margin(1e-10));

  const auto fs = condition_first_step(ex.hs.map, ex.hs.projectors, ex.chi);
  REQUIRE_FALSE(fs.absorbed());
  CHECK(fs.weight == Catch::Approx(1.0 / 6.0).margin(1e-12));
  CHECK(max_abs_diff(fs.next_state->matrix(), ex.phi.matrix()) < 1e-12);
  CHECK(mhtf_general(ex.hs, ex.chi, ex.psi) == Catch::Approx(2.0).margin(1e-10));
  CHECK(mhtf_general(ex.hs, ex.chi) == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("orthogonality preconditions", "[hitting]") {
  const TwoLevel ex;
  CHECK_THROWS_AS(mhtf_orthogonal(ex.hs, ex.chi, ex.psi), OrthogonalityError);
  CHECK_THROWS_AS(mhtf_orthogonal(ex.hs, ex.phi, ex.chi), OrthogonalityError);
  CHECK_THROWS_AS(mhtf_general(ex.hs, ex.chi, ex.chi), OrthogonalityError);
  try {
    (void)mhtf_orthogonal(ex.hs, ex.chi, ex.psi);
  } catch (const OrthogonalityError& e) {
    CHECK(e.residual() > 0.1);
  }
}

TEST_CASE("four-level closed forms", "[hitting]") {
  rnd::Engine eng(83);
  for (const double a : {0.28, 0.6, 0.96}) {
    const FourLevel ex(a);
    const double b = ex.b;
    const double c = 1.0 + a / (2.0 * b) + 1.0 / (4.0 * b * b);
    CHECK(mean_hitting_time_direct(ex.hs, ex.phi) == Catch::Approx(1.0 + 1.0 / (b * b)).epsilon(1e-12));
    CHECK(mean_hitting_time_direct(ex.hs, ex.chi) == Catch::Approx(2.0 * c).epsilon(1e-12));

    const ComplexMatrix k12_phi = unvec(block(ex.hs.k_rep, ex.hs.projectors, 1, 2) * ex.phi.vectorized());
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(2, 2) = expected(3, 3) = (1.0 + b * b) / (2.0 * b * b);
    CHECK(max_abs_diff(k12_phi, expected) < 1e-12);

    // return term is the same for every state supported on V
    for (int trial = 0; trial < 5; ++trial) {
      const double x = rnd::uniform01(eng);
      const double r = std::sqrt(x * (1.0 - x)) * rnd::uniform01(eng);
      const double theta = 6.283185307179586 * rnd::uniform01(eng);
      const auto m = mhtf_orthogonal(ex.hs, ex.phi, ex.in_v(x, std::polar(r, theta)));
      CHECK(m.return_term == Catch::Approx((1.0 + 6.0 * b * b) / (4.0 * b * b)).epsilon(1e-12));
      CHECK(m.cross_term == Catch::Approx((2.0 * b * b - 3.0) / (4.0 * b * b)).epsilon(1e-12));
      CHECK(m.tau == Catch::Approx(mean_hitting_time_direct(ex.hs, ex.phi)).epsilon(1e-12));
    }

    const auto fs = condition_first_step(ex.hs.map, ex.hs.projectors, ex.chi);
    REQUIRE_FALSE(fs.absorbed());
    CHECK(fs.weight == Catch::Approx(1.0).epsilon(1e-12));
    ComplexMatrix next = ComplexMatrix::Zero(4, 4);
    next(0, 0) = 0.5 + a * b;
    next(1, 1) = 0.5 - a * b;
    CHECK(max_abs_diff(fs.next_state->matrix(), next) < 1e-12);
    CHECK(mhtf_general(ex.hs, ex.chi) == Catch::Approx(2.0 * c).epsilon(1e-12));
  }
}

TEST_CASE("first step absorption", "[hitting]") {
  // the cycle 0 → 1 → 2 → 0 reaches V = {2} from |1⟩ in one step
  const SuperOperator t = from_stochastic(models::cycle_chain(3));
  const auto sp = super_projectors(subspace_from_basis(3, {2}));
  const auto fs = condition_first_step(t, sp, DensityMatrix::basis(3, 1));
  CHECK(fs.absorbed());
  CHECK(fs.weight == 0.0);
  const auto hs = solve_hitting(t, subspace_from_basis(3, {2}));
  CHECK(mhtf_general(hs, DensityMatrix::basis(3, 1)) == 1.0);
}

TEST_CASE("dnl maps and the row identities", "[hitting]") {
  const TwoLevel ex;
  const auto& sp = ex.hs.projectors;
  const auto dnl = dnl_maps(ex.hs);
  const ComplexMatrix& z = ex.hs.fd.z_rep;
  const ComplexMatrix not_q = sp.not_qq();
  CHECK(max_abs_diff(not_q * dnl.l_rep, not_q * ex.hs.h_rep) < 1e-12);

  const ComplexMatrix dz = dnl.d_rep * z;
  const ComplexMatrix lz = dnl.l_rep * z;
  const ComplexVector lhs = block(dnl.n_rep, sp, 1, 2) * ex.phi.vectorized();
  const ComplexVector rhs = block(dz, sp, 1, 1) * ex.psi.vectorized() - block(dz, sp, 1, 2) * ex.phi.vectorized() +
                            block(lz, sp, 1, 2) * ex.phi.vectorized() - block(lz, sp, 1, 1) * ex.psi.vectorized();
  CHECK((lhs - rhs).norm() < 1e-12);
  const ComplexVector lhs2 = block(dnl.n_rep, sp, 2, 1) * ex.psi.vectorized();
  const ComplexVector rhs2 = block(dz, sp, 2, 2) * ex.phi.vectorized() - block(dz, sp, 2, 1) * ex.psi.vectorized() +
                             block(lz, sp, 2, 1) * ex.psi.vectorized() - block(lz, sp, 2, 2) * ex.phi.vectorized();
  CHECK((lhs2 - rhs2).norm() < 1e-12);
}

TEST_CASE("route equivalence and invariants on random instances", "[hitting][property]") {
  rnd::Engine eng(97);
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto inst = qhit::testing::random_instance(seed);
    const auto hs = solve_hitting(inst.map, inst.subspace);
    const auto& v = inst.subspace;
    const DensityMatrix rho_phi = rnd::random_density_in(v.complement(), eng);
    const DensityMatrix rho_psi = rnd::random_density_in(v.projector(), eng);
    const DensityMatrix rho = rnd::random_density(inst.map.dim(), inst.map.dim(), eng);

    const double direct = mean_hitting_time_direct(hs, rho_phi);
    CHECK(std::abs(mhtf_orthogonal(hs, rho_phi, rho_psi).tau - direct) <= 1e-9);
    CHECK(std::abs(mhtf_general(hs, rho_phi, rho_psi) - direct) <= 1e-9);
    CHECK(std::abs(mean_hitting_time_shortcut(hs, rho) - mean_hitting_time_direct(hs, rho)) <= 1e-9);
    CHECK(std::abs(mhtf_general(hs, rho) - mean_hitting_time_direct(hs, rho)) <= 1e-9);
    CHECK(std::abs(hitting_probability(hs, rho) - 1.0) <= 1e-10);

    // ℙ and I − ℚ give the same traces
    CHECK(std::abs(tr(hs.projectors.pp * hs.k_rep, rho) - mean_hitting_time_direct(hs, rho)) <= 1e-9);

    // conditioning on the first step
    const auto fs = condition_first_step(inst.map, hs.projectors, rho);
    if (!fs.absorbed()) {
      CHECK(std::abs(1.0 + fs.weight * mean_hitting_time_direct(hs, *fs.next_state) -
                     mean_hitting_time_direct(hs, rho)) <= 1e-9);
    }

    // return term independent of ρ_ψ
    const double ret = tr(hs.return_map, rho_psi);
    for (int k = 0; k < 5; ++k) {
      CHECK(std::abs(tr(hs.return_map, rnd::random_density_in(v.projector(), eng)) - ret) <= 1e-10);
    }
  }
}
