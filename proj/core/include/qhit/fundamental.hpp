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

// The fundamental map Z = (I − Φ + Ω)⁻¹ of an irreducible trace-preserving
// map Φ, where Ω = |π⟩⟨I_n| sends every state to the invariant state π.

#include "qhit/maps.hpp"

namespace qhit {

struct FundamentalData {
  DensityMatrix pi;
  /// vec(π) vec(I_n)ᵀ
  ComplexMatrix omega_rep;
  /// (I − ⌈Φ⌉ + ⌈Ω⌉)⁻¹
  ComplexMatrix z_rep;
  /// 1 / rcond of I − ⌈Φ⌉ + ⌈Ω⌉ (LU estimate, 1-norm)
  double condition_estimate = 0.0;
};

ComplexMatrix build_omega(const DensityMatrix& pi);

/// Requires a certified-irreducible certificate for `t`; throws
/// IrreducibilityError otherwise and NumericError if the solve is singular.
FundamentalData fundamental_map(const SuperOperator& t, const IrreducibilityCertificate& cert,
                                const Tolerance& tol = {});

/// Frobenius residuals of the algebraic identities satisfied by Z and Ω.
struct FundamentalIdentityReport {
  double solve = 0.0;              // Z (I − Φ + Ω) − I
  double z_omega = 0.0;            // ZΩ − Ω
  double omega_z = 0.0;            // ΩZ − Ω
  double z_one_minus_phi = 0.0;    // Z(I − Φ) − (I − Ω)
  double one_minus_phi_z = 0.0;    // (I − Φ)Z − (I − Ω)
  double omega_squared = 0.0;      // Ω² − Ω
  double phi_omega = 0.0;          // ΦΩ − Ω
  double omega_phi = 0.0;          // ΩΦ − Ω
  double z_trace = 0.0;            // Z*(I) − I
  double omega_trace = 0.0;        // Ω*(I) − I

  double max_residual() const noexcept;
  bool passes(double threshold) const noexcept { return max_residual() <= threshold; }
};

FundamentalIdentityReport verify_fundamental_identities(const FundamentalData& fd,
                                                        const SuperOperator& t);

}  // namespace qhit
