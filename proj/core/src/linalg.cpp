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

#include "qhit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "qhit/errors.hpp"

namespace qhit {

Tolerance::Tolerance(double atol, double rtol) : atol_(atol), rtol_(rtol) {
  if (!(atol >= 0.0) || !(rtol >= 0.0)) {
    throw ArgumentError("tolerances must be non-negative");
  }
}

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw DimensionError(os.str());
  }
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

Eigen::Index exact_sqrt_dim(Eigen::Index size, std::string_view what) {
  const auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(size))));
  if (size <= 0 || root * root != size) {
    std::ostringstream os;
    os << what << ": size " << size << " is not a perfect square";
    throw DimensionError(os.str());
  }
  return root;
}

ComplexVector vec(const ComplexMatrix& a) {
  require_square(a, "vec");
  const Eigen::Index n = a.rows();
  ComplexVector v(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      v(i * n + j) = a(i, j);
    }
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v) {
  const Eigen::Index n = exact_sqrt_dim(v.size(), "unvec");
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = v(i * n + j);
    }
  }
  return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Complex hs_inner(const ComplexMatrix& b, const ComplexMatrix& a) {
  require_square(a, "hs_inner");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operands differ in shape");
  }
  // Tr(B* A) = sum_ij conj(B_ij) A_ij
  return (b.conjugate().cwiseProduct(a)).sum();
}

Complex trace_of_vec(const ComplexVector& v) {
  const Eigen::Index n = exact_sqrt_dim(v.size(), "trace_of_vec");
  Complex t{0.0, 0.0};
  for (Eigen::Index i = 0; i < n; ++i) t += v(i * n + i);
  return t;
}

std::vector<ComplexVector> fixed_space(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "fixed_space");
  const Eigen::Index d = m.rows();
  const ComplexMatrix shifted = m - ComplexMatrix::Identity(d, d);
  Eigen::BDCSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  const double threshold = tol.bound(m.norm());
  const auto& sigma = svd.singularValues();
  const ComplexMatrix& v = svd.matrixV();

  std::vector<ComplexVector> basis;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (sigma(k) <= threshold) basis.emplace_back(v.col(k));
  }
  return basis;
}

ComplexMatrix hermitize(const ComplexMatrix& x) { return 0.5 * (x + x.adjoint()); }

bool is_hermitian(const ComplexMatrix& x, const Tolerance& tol) {
  return (x - x.adjoint()).norm() <= tol.bound(x.norm());
}

PsdReport is_psd(const ComplexMatrix& x, const Tolerance& tol) {
  require_square(x, "is_psd");
  PsdReport report;
  report.hermitian = is_hermitian(x, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(x), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.psd = report.hermitian && report.min_eigenvalue >= -tol.atol();
  report.strictly_positive = report.psd && report.min_eigenvalue > tol.atol();
  return report;
}

double spectral_radius(const ComplexMatrix& m) {
  require_square(m, "spectral_radius");
  if ((m - m.adjoint()).norm() == 0.0) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) {
    throw NumericError("spectral_radius: eigenvalue iteration did not converge");
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qhit
