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

// Hitting probabilities and mean hitting times of a monitored process
// ρ ↦ Φ(ρ) with arrival subspace V ⊂ Cⁿ.
//
// With P the projector onto V and Q = I − P, the superoperators
//   ℙ = P·P,  ℚ = Q·Q,  ℝ = I − ℙ − ℚ
// split M_n; survival between checks is ℚΦ. The hitting probability and mean
// hitting time maps are
//   H = Φ (I − ℚΦ)⁻¹,   K = Φ (I − ℚΦ)⁻²,
// and the mean hitting time from ρ is Tr((I − ℚ) K ρ).
//
// Every T on M_n has the block form
//   T₁₁ = (I−ℚ)T(I−ℚ),  T₁₂ = (I−ℚ)Tℚ,  T₂₁ = ℚT(I−ℚ),  T₂₂ = ℚTℚ,
// stored here as full n²×n² matrices.
//
// Three routes to τ are offered:
//   * direct:      Tr((I − ℚ) K ρ)
//   * orthogonal:  Tr(K₁₁ Z₁₁ ρ_ψ) − Tr(K₁₁ Z₁₂ ρ_φ)           for ℚρ_φ = ρ_φ
//   * general:     1 + Tr(K₁₁ Z₁₁ ρ_ψ) Tr(ℚΦρ) − Tr(K₁₁ Z₁₂ ℚΦρ)
// where Z is the fundamental map and ρ_ψ is any state with ℙρ_ψ = ρ_ψ.

#include <optional>
#include <vector>

#include "qhit/fundamental.hpp"

namespace qhit {

/// Residual bound for the support preconditions ℚρ = ρ and ℙρ = ρ.
inline constexpr double kSupportTolerance = 1e-8;

class ArrivalSubspace {
 public:
  /// Validates P² = P, P* = P and 0 < rank P < n.
  static ArrivalSubspace from_projector(const ComplexMatrix& p, const Tolerance& tol = {});

  Eigen::Index ambient_dim() const noexcept { return p_.rows(); }
  Eigen::Index rank() const noexcept { return rank_; }
  const ComplexMatrix& projector() const noexcept { return p_; }
  const ComplexMatrix& complement() const noexcept { return q_; }

 private:
  ArrivalSubspace(ComplexMatrix p, Eigen::Index rank);

  ComplexMatrix p_;
  ComplexMatrix q_;
  Eigen::Index rank_;
};

/// Orthogonal projector onto span(vs); linear dependencies are collapsed.
ArrivalSubspace subspace_from_vectors(const std::vector<ComplexVector>& vs, const Tolerance& tol = {});
/// span{|k⟩ : k ∈ indices}, 0-based.
ArrivalSubspace subspace_from_basis(Eigen::Index n, const std::vector<Eigen::Index>& indices);

struct SuperProjectors {
  ComplexMatrix pp;  // P ⊗ conj(P)
  ComplexMatrix qq;  // Q ⊗ conj(Q)
  ComplexMatrix rr;  // I − ℙ − ℚ

  /// I − ℚ
  ComplexMatrix not_qq() const;
};

SuperProjectors super_projectors(const ArrivalSubspace& s);

struct HittingMaps {
  ComplexMatrix h_rep;
  ComplexMatrix k_rep;
  double spectral_radius_qphi = 0.0;
  /// 1 / rcond of I − ⌈ℚ⌉⌈Φ⌉
  double condition_estimate = 0.0;
};

/// H and K through two successive solves with I − ⌈ℚ⌉⌈Φ⌉. Throws NumericError
/// when 1 is (numerically) in the spectrum of ⌈ℚ⌉⌈Φ⌉.
HittingMaps hitting_maps(const SuperOperator& t, const SuperProjectors& sp);

/// Block T_ij of the (I − ℚ, ℚ) decomposition, i, j ∈ {1, 2}.
ComplexMatrix block(const ComplexMatrix& t_rep, const SuperProjectors& sp, int i, int j);

struct HittingDiagnostics {
  double spectral_radius_qphi = 0.0;
  double condition_estimate = 0.0;
  double fundamental_condition = 0.0;
};

/// Everything needed to answer hitting queries for one (Φ, V) pair.
struct HittingSolution {
  SuperOperator map;
  ArrivalSubspace subspace;
  SuperProjectors projectors;
  IrreducibilityCertificate certificate;
  FundamentalData fd;
  ComplexMatrix h_rep;
  ComplexMatrix k_rep;
  /// (DZ)₁₁ = K₁₁Z₁₁, the mean return time term
  ComplexMatrix return_map;
  /// (DZ)₁₂ = K₁₁Z₁₂
  ComplexMatrix cross_map;
  HittingDiagnostics diagnostics;
};

/// Certifies irreducibility, builds Z, H, K and the formula blocks.
HittingSolution solve_hitting(const SuperOperator& t, const ArrivalSubspace& v, const Tolerance& tol = {});

/// Tr((I − ℚ) H ρ)
double hitting_probability(const HittingSolution& hs, const DensityMatrix& rho);

/// Tr((I − ℚ) K ρ)
double mean_hitting_time_direct(const HittingSolution& hs, const DensityMatrix& rho);

/// Tr(H ρ), equal to the direct route for trace-preserving Φ.
double mean_hitting_time_shortcut(const HittingSolution& hs, const DensityMatrix& rho);

struct MhtfDecomposition {
  double tau = 0.0;
  /// Tr((DZ)₁₁ ρ_ψ)
  double return_term = 0.0;
  /// Tr((DZ)₁₂ ρ_φ)
  double cross_term = 0.0;
};

/// Requires ℚρ_φ = ρ_φ and ℙρ_ψ = ρ_ψ; throws OrthogonalityError otherwise.
MhtfDecomposition mhtf_orthogonal(const HittingSolution& hs, const DensityMatrix& rho_phi,
                                  const DensityMatrix& rho_psi,
                                  double support_tol = kSupportTolerance);

struct DnlMaps {
  ComplexMatrix d_rep;  // K₁₁ + K₂₂
  ComplexMatrix n_rep;  // K − D
  ComplexMatrix l_rep;  // K − NΦ
};

DnlMaps dnl_maps(const HittingSolution& hs);

struct FirstStep {
  /// Tr(ℚΦρ); zero when absorbed
  double weight = 0.0;
  /// ℚΦρ / Tr(ℚΦρ)
  std::optional<DensityMatrix> next_state;

  bool absorbed() const noexcept { return !next_state.has_value(); }
};

FirstStep condition_first_step(const SuperOperator& t, const SuperProjectors& sp, const DensityMatrix& rho,
                               const Tolerance& tol = {});

/// P / rank(P)
DensityMatrix uniform_arrival_state(const ArrivalSubspace& s);

/// Mean hitting time from an arbitrary state. `rho_psi` defaults to P / rank(P).
double mhtf_general(const HittingSolution& hs, const DensityMatrix& rho,
                    const std::optional<DensityMatrix>& rho_psi = std::nullopt,
                    double support_tol = kSupportTolerance);

/// ‖ℚρℚ − ρ‖_F  (zero iff ρ is supported on V⊥)
double complement_support_residual(const SuperProjectors& sp, const DensityMatrix& rho);
/// ‖ℙρℙ − ρ‖_F  (zero iff ρ is supported on V)
double arrival_support_residual(const SuperProjectors& sp, const DensityMatrix& rho);

}  // namespace qhit
