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

#include "qhit/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qhit/errors.hpp"
#include "qhit/random.hpp"

namespace qhit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

SuperOperator::SuperOperator(Eigen::Index dim, ComplexMatrix rep, Provenance provenance)
    : dim_(dim), rep_(std::move(rep)), provenance_(std::move(provenance)) {
  if (dim_ <= 0 || rep_.rows() != dim_ * dim_ || rep_.cols() != dim_ * dim_) {
    std::ostringstream os;
    os << "superoperator: expected " << dim_ * dim_ << "x" << dim_ * dim_ << " representation, got "
       << rep_.rows() << "x" << rep_.cols();
    throw DimensionError(os.str());
  }
  require_finite(rep_, "superoperator");
}

ComplexMatrix SuperOperator::operator()(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionError("apply: operand dimension does not match the map");
  }
  return unvec(rep_ * vec(x));
}

std::string_view provenance_name(const Provenance& p) {
  return std::visit(overloaded{[](const KrausProvenance&) { return std::string_view{"kraus"}; },
                               [](const StochasticProvenance&) { return std::string_view{"stochastic"}; },
                               [](const RawProvenance&) { return std::string_view{"raw"}; }},
                    p);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const ComplexMatrix& m, const Tolerance& tol) {
  require_square(m, "density matrix");
  require_finite(m, "density matrix");
  if (!is_hermitian(m, tol)) {
    throw ValidationError("density matrix: not Hermitian");
  }
  m_ = hermitize(m);
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > tol.atol()) {
    std::ostringstream os;
    os << "density matrix: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  const PsdReport psd = is_psd(m_, tol);
  if (!psd.psd) {
    std::ostringstream os;
    os << "density matrix: not positive semidefinite (min eigenvalue " << psd.min_eigenvalue << ")";
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& phi, const Tolerance& tol) {
  const double norm = phi.norm();
  if (phi.size() == 0 || !(norm > 0.0) || !phi.allFinite()) {
    throw ArgumentError("pure state: vector must be non-zero and finite");
  }
  const ComplexVector u = phi / norm;
  return DensityMatrix(u * u.adjoint(), tol);
}

DensityMatrix DensityMatrix::diagonal(const RealVector& x, const Tolerance& tol) {
  if (x.size() == 0) throw ArgumentError("diagonal state: empty distribution");
  if ((x.array() < 0.0).any()) throw ValidationError("diagonal state: negative probability");
  ComplexMatrix m = ComplexMatrix::Zero(x.size(), x.size());
  m.diagonal() = x.cast<Complex>();
  return DensityMatrix(m, tol);
}

DensityMatrix DensityMatrix::basis(Eigen::Index n, Eigen::Index k) {
  if (k < 0 || k >= n) throw ArgumentError("basis state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

std::string_view to_string(IrreducibilityVerdict v) {
  switch (v) {
    case IrreducibilityVerdict::certified_irreducible: return "certified_irreducible";
    case IrreducibilityVerdict::not_irreducible: return "not_irreducible";
    case IrreducibilityVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::completely_positive: return "completely_positive";
    case PositivityVerdict::positive_by_sampling: return "positive_by_sampling";
    case PositivityVerdict::not_positive: return "not_positive";
  }
  return "not_positive";
}

// ---------------------------------------------------------------------------
// Construction

SuperOperator from_kraus(const std::vector<ComplexMatrix>& kraus_ops) {
  if (kraus_ops.empty()) throw ArgumentError("from_kraus: empty operator list");
  const Eigen::Index n = kraus_ops.front().rows();
  for (const auto& v : kraus_ops) {
    require_square(v, "from_kraus");
    if (v.rows() != n) throw DimensionError("from_kraus: Kraus operators have mixed dimensions");
    require_finite(v, "from_kraus");
  }
  ComplexMatrix rep = ComplexMatrix::Zero(n * n, n * n);
  ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
  for (const auto& v : kraus_ops) {
    rep += kron(v, v.conjugate());
    completeness += v.adjoint() * v;
  }
  KrausProvenance prov{kraus_ops, (completeness - ComplexMatrix::Identity(n, n)).norm()};
  return SuperOperator(n, std::move(rep), std::move(prov));
}

void validate_column_stochastic(const RealMatrix& p, const Tolerance& tol) {
  const Eigen::Index n = p.rows();
  if (n == 0 || p.cols() != n) throw DimensionError("stochastic matrix must be square and non-empty");
  if (!p.allFinite()) throw ValidationError("stochastic matrix has a non-finite entry");
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (p(i, j) < 0.0) {
        std::ostringstream os;
        os << "stochastic matrix: negative entry in column " << j + 1 << " (row " << i + 1 << ")";
        throw ValidationError(os.str());
      }
    }
    const double s = p.col(j).sum();
    if (std::abs(s - 1.0) > tol.atol()) {
      std::ostringstream os;
      os.precision(17);
      os << "stochastic matrix: column " << j + 1 << " sums to " << s << ", not 1";
      throw ValidationError(os.str());
    }
  }
}

SuperOperator from_stochastic(const RealMatrix& p, const Tolerance& tol) {
  validate_column_stochastic(p, tol);
  const Eigen::Index n = p.rows();
  // Φ = Σ p_ij |i⟩⟨j| · |j⟩⟨i| only moves diagonal mass: E_jj ↦ Σ_i p_ij E_ii
  ComplexMatrix rep = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      rep(i * n + i, j * n + j) = p(i, j);
    }
  }
  return SuperOperator(n, std::move(rep), StochasticProvenance{p});
}

SuperOperator from_raw(const ComplexMatrix& rep) {
  if (rep.rows() != rep.cols()) throw DimensionError("from_raw: representation must be square");
  const Eigen::Index n = exact_sqrt_dim(rep.rows(), "from_raw");
  return SuperOperator(n, rep, RawProvenance{});
}

ComplexMatrix apply(const SuperOperator& t, const ComplexMatrix& x) { return t(x); }

SuperOperator adjoint(const SuperOperator& t) {
  ComplexMatrix rep = t.rep().adjoint();
  if (const auto* k = std::get_if<KrausProvenance>(&t.provenance())) {
    KrausProvenance adj;
    adj.operators.reserve(k->operators.size());
    const Eigen::Index n = t.dim();
    ComplexMatrix completeness = ComplexMatrix::Zero(n, n);
    for (const auto& v : k->operators) {
      adj.operators.emplace_back(v.adjoint());
      completeness += v * v.adjoint();
    }
    adj.completeness_residual = (completeness - ComplexMatrix::Identity(n, n)).norm();
    return SuperOperator(t.dim(), std::move(rep), std::move(adj));
  }
  return SuperOperator(t.dim(), std::move(rep), RawProvenance{});
}

ComplexMatrix choi_matrix(const SuperOperator& t) {
  const Eigen::Index n = t.dim();
  ComplexMatrix choi(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // T(E_ij) is column i*n + j of the representation
      const ComplexMatrix image = unvec(t.rep().col(i * n + j));
      choi.block(i * n, j * n, n, n) = image;
    }
  }
  return choi;
}

// ---------------------------------------------------------------------------
// Validation

TracePreservationReport check_trace_preserving(const SuperOperator& t, const Tolerance& tol) {
  const Eigen::Index n = t.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix image = unvec(t.rep().adjoint() * vec(id));
  TracePreservationReport report;
  report.residual = (image - id).norm();
  report.trace_preserving = report.residual <= tol.atol();
  return report;
}

PositivityReport check_complete_positivity(const SuperOperator& t, const Tolerance& tol,
                                           std::uint64_t sampling_seed) {
  PositivityReport report;
  const PsdReport choi = is_psd(choi_matrix(t), tol);
  report.min_choi_eigenvalue = choi.min_eigenvalue;
  report.completely_positive = choi.psd;
  if (choi.psd) {
    report.verdict = PositivityVerdict::completely_positive;
    return report;
  }

  rnd::Engine eng(sampling_seed);
  double worst = std::numeric_limits<double>::infinity();
  bool positive = true;
  for (int s = 0; s < kPositivitySamples; ++s) {
    const ComplexVector phi = rnd::random_unit_vector(t.dim(), eng);
    const PsdReport out = is_psd(t(phi * phi.adjoint()), tol);
    worst = std::min(worst, out.min_eigenvalue);
    if (!out.psd) positive = false;
  }
  report.samples = kPositivitySamples;
  report.min_sampled_eigenvalue = worst;
  report.verdict = positive ? PositivityVerdict::positive_by_sampling : PositivityVerdict::not_positive;
  return report;
}

IrreducibilityCertificate invariant_state(const SuperOperator& t, const Tolerance& tol) {
  const auto tp = check_trace_preserving(t, tol);
  if (!tp.trace_preserving) {
    std::ostringstream os;
    os << "invariant_state: map is not trace preserving (residual " << tp.residual << ")";
    throw PreconditionError(os.str());
  }

  IrreducibilityCertificate cert;
  const auto basis = fixed_space(t.rep(), tol);
  cert.fixed_space_dim = static_cast<int>(basis.size());
  if (basis.size() != 1) {
    cert.verdict = basis.empty() ? IrreducibilityVerdict::inconclusive
                                 : IrreducibilityVerdict::not_irreducible;
    return cert;
  }

  ComplexMatrix x = unvec(basis.front());
  const Complex tr = x.trace();
  if (std::abs(tr) <= tol.atol()) {
    cert.verdict = IrreducibilityVerdict::inconclusive;
    return cert;
  }
  x = hermitize(x / tr);
  x /= x.trace().real();

  const PsdReport psd = is_psd(x, tol);
  cert.min_eigenvalue_of_pi = psd.min_eigenvalue;
  cert.fixed_point_residual = (t(x) - x).norm();
  if (!psd.psd) {
    cert.verdict = IrreducibilityVerdict::inconclusive;
    return cert;
  }
  cert.invariant_state.emplace(x, tol);
  // a singular invariant state has an invariant support corner
  cert.verdict = psd.strictly_positive ? IrreducibilityVerdict::certified_irreducible
                                       : IrreducibilityVerdict::not_irreducible;
  return cert;
}

}  // namespace qhit
