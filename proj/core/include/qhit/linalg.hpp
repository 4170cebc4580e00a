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

// Dense complex linear algebra shared by every other module.
//
// Matrices on M_n are identified with vectors in C^{n^2} by ROW stacking:
//   vec([[a, b], [c, d]]) = (a, b, c, d)^T.
// Under this convention vec(A X B^T) = (A ⊗ B) vec(X), so the representation
// of X ↦ V X V* is V ⊗ conj(V).

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qhit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute and relative tolerance pair used by every validation routine.
class Tolerance {
 public:
  static constexpr double kDefaultAtol = 1e-10;
  static constexpr double kDefaultRtol = 1e-10;

  Tolerance() = default;
  Tolerance(double atol, double rtol);

  double atol() const noexcept { return atol_; }
  double rtol() const noexcept { return rtol_; }

  /// atol + rtol * scale
  double bound(double scale) const noexcept { return atol_ + rtol_ * scale; }

 private:
  double atol_ = kDefaultAtol;
  double rtol_ = kDefaultRtol;
};

/// Row-stacking vectorization of a square matrix.
ComplexVector vec(const ComplexMatrix& a);

/// Inverse of vec; the length must be a perfect square.
ComplexMatrix unvec(const ComplexVector& v);

/// Standard Kronecker product A ⊗ B.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert–Schmidt inner product Tr(B* A), conjugate-linear in `b`.
Complex hs_inner(const ComplexMatrix& b, const ComplexMatrix& a);

/// Tr(unvec(v)) without materializing the matrix.
Complex trace_of_vec(const ComplexVector& v);

/// Orthonormal basis of the numerical null space of (M - I).
///
/// A direction is kept when its singular value of (M - I), which equals its
/// residual ‖(M - I) v‖, is at most atol + rtol·‖M‖_F.
std::vector<ComplexVector> fixed_space(const ComplexMatrix& m, const Tolerance& tol = {});

struct PsdReport {
  bool psd = false;
  bool hermitian = false;
  /// min eigenvalue of the Hermitized input; meaningful even when !hermitian
  double min_eigenvalue = 0.0;
  /// min_eigenvalue > atol
  bool strictly_positive = false;
};

/// Positive-semidefiniteness test. The input is Hermitized as (X + X*)/2
/// before the Hermitian eigensolve.
PsdReport is_psd(const ComplexMatrix& x, const Tolerance& tol = {});

/// max |λ| over the spectrum. Hermitian inputs go through the Hermitian solver.
double spectral_radius(const ComplexMatrix& m);

ComplexMatrix hermitize(const ComplexMatrix& x);

/// ‖X - X*‖_F <= atol + rtol·‖X‖_F
bool is_hermitian(const ComplexMatrix& x, const Tolerance& tol = {});

/// Integer square root of a matrix dimension; throws DimensionError otherwise.
Eigen::Index exact_sqrt_dim(Eigen::Index size, std::string_view what);

void require_square(const ComplexMatrix& a, std::string_view what);
void require_finite(const ComplexMatrix& a, std::string_view what);

}  // namespace qhit
