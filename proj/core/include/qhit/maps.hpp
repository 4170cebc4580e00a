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

// Linear maps on M_n stored through their n²×n² representation ⌈T⌉, with
// T(X) = unvec(⌈T⌉ vec(X)).

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qhit/linalg.hpp"

namespace qhit {

struct KrausProvenance {
  std::vector<ComplexMatrix> operators;
  /// ‖Σ Vᵢ*Vᵢ − I‖_F at construction time
  double completeness_residual = 0.0;
};

/// Column-stochastic matrix: entry (i, j) is the probability of j → i.
struct StochasticProvenance {
  RealMatrix matrix;
};

struct RawProvenance {};

using Provenance = std::variant<KrausProvenance, StochasticProvenance, RawProvenance>;

class SuperOperator {
 public:
  /// `rep` must be n²×n² with n == dim.
  SuperOperator(Eigen::Index dim, ComplexMatrix rep, Provenance provenance = RawProvenance{});

  Eigen::Index dim() const noexcept { return dim_; }
  const ComplexMatrix& rep() const noexcept { return rep_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  ComplexMatrix operator()(const ComplexMatrix& x) const;

 private:
  Eigen::Index dim_;
  ComplexMatrix rep_;
  Provenance provenance_;
};

std::string_view provenance_name(const Provenance& p);

/// Positive semidefinite, unit-trace matrix. The stored matrix is Hermitized.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, const Tolerance& tol = {});

  /// |φ⟩⟨φ| for φ normalized to unit length.
  static DensityMatrix pure(const ComplexVector& phi, const Tolerance& tol = {});
  /// diag(x) for a probability vector x.
  static DensityMatrix diagonal(const RealVector& x, const Tolerance& tol = {});
  /// |k⟩⟨k|, 0-based.
  static DensityMatrix basis(Eigen::Index n, Eigen::Index k);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  ComplexVector vectorized() const { return vec(m_); }

 private:
  ComplexMatrix m_;
};

enum class IrreducibilityVerdict { certified_irreducible, not_irreducible, inconclusive };
std::string_view to_string(IrreducibilityVerdict v);

struct IrreducibilityCertificate {
  /// present whenever a unique, trace-normalizable fixed point exists and is PSD
  std::optional<DensityMatrix> invariant_state;
  int fixed_space_dim = 0;
  double min_eigenvalue_of_pi = 0.0;
  /// ‖T(π) − π‖_F
  double fixed_point_residual = 0.0;
  IrreducibilityVerdict verdict = IrreducibilityVerdict::inconclusive;

  bool certified() const noexcept {
    return verdict == IrreducibilityVerdict::certified_irreducible;
  }
};

struct TracePreservationReport {
  bool trace_preserving = false;
  /// ‖T*(I) − I‖_F
  double residual = 0.0;
};

enum class PositivityVerdict {
  completely_positive,
  /// Choi matrix not PSD, but no sampled pure state was mapped outside the PSD cone
  positive_by_sampling,
  not_positive,
};
std::string_view to_string(PositivityVerdict v);

struct PositivityReport {
  bool completely_positive = false;
  double min_choi_eigenvalue = 0.0;
  PositivityVerdict verdict = PositivityVerdict::not_positive;
  /// number of sampled pure states (0 when the Choi test already certified CP)
  int samples = 0;
  double min_sampled_eigenvalue = 0.0;
};

/// Entries >= 0 and every column summing to 1 within atol. The message of the
/// thrown ValidationError names the offending column (1-based).
void validate_column_stochastic(const RealMatrix& p, const Tolerance& tol = {});

SuperOperator from_kraus(const std::vector<ComplexMatrix>& kraus_ops);
SuperOperator from_stochastic(const RealMatrix& p, const Tolerance& tol = {});
SuperOperator from_raw(const ComplexMatrix& rep);

ComplexMatrix apply(const SuperOperator& t, const ComplexMatrix& x);
SuperOperator adjoint(const SuperOperator& t);

/// Σ_ij E_ij ⊗ T(E_ij)
ComplexMatrix choi_matrix(const SuperOperator& t);

TracePreservationReport check_trace_preserving(const SuperOperator& t, const Tolerance& tol = {});

inline constexpr int kPositivitySamples = 1000;
inline constexpr std::uint64_t kPositivitySeed = 0x9e3779b97f4a7c15ULL;

PositivityReport check_complete_positivity(const SuperOperator& t, const Tolerance& tol = {},
                                           std::uint64_t sampling_seed = kPositivitySeed);

/// Throws PreconditionError if `t` is not trace preserving.
IrreducibilityCertificate invariant_state(const SuperOperator& t, const Tolerance& tol = {});

}  // namespace qhit
