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

#include "qhit/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qhit/errors.hpp"

namespace qhit {

namespace {

constexpr double kSpectralMargin = 1e-10;

double trace_real(const ComplexMatrix& rep, const ComplexVector& v) {
  return trace_of_vec(rep * v).real();
}

void require_same_dim(const HittingSolution& hs, const DensityMatrix& rho, const char* what) {
  if (rho.dim() != hs.map.dim()) {
    throw DimensionError(std::string(what) + ": state dimension does not match the map");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Arrival subspace

ArrivalSubspace::ArrivalSubspace(ComplexMatrix p, Eigen::Index rank)
    : p_(std::move(p)), rank_(rank) {
  const Eigen::Index n = p_.rows();
  q_ = ComplexMatrix::Identity(n, n) - p_;
}

ArrivalSubspace ArrivalSubspace::from_projector(const ComplexMatrix& p, const Tolerance& tol) {
  require_square(p, "arrival subspace");
  require_finite(p, "arrival subspace");
  if (!is_hermitian(p, tol)) throw ValidationError("arrival subspace: projector is not Hermitian");
  if ((p * p - p).norm() > tol.bound(p.norm())) {
    throw ValidationError("arrival subspace: projector is not idempotent");
  }
  const double tr = p.trace().real();
  const auto rank = static_cast<Eigen::Index>(std::llround(tr));
  if (rank <= 0) throw ArgumentError("arrival subspace: projector is zero");
  if (rank >= p.rows()) {
    throw PreconditionError("arrival subspace: V is the whole space; a nontrivial subspace is required");
  }
  return ArrivalSubspace(hermitize(p), rank);
}

ArrivalSubspace subspace_from_vectors(const std::vector<ComplexVector>& vs, const Tolerance& tol) {
  if (vs.empty()) throw ArgumentError("subspace_from_vectors: no vectors given");
  const Eigen::Index n = vs.front().size();
  if (n == 0) throw DimensionError("subspace_from_vectors: empty vector");
  ComplexMatrix stack(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].size() != n) throw DimensionError("subspace_from_vectors: vectors differ in length");
    stack.col(static_cast<Eigen::Index>(k)) = vs[k];
  }
  require_finite(stack, "subspace_from_vectors");

  Eigen::BDCSVD<ComplexMatrix> svd(stack, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  const double threshold = std::max(tol.atol(), tol.rtol() * smax);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > threshold) ++rank;
  if (rank == 0) throw ArgumentError("subspace_from_vectors: vectors span the zero subspace");
  if (rank >= n) {
    throw PreconditionError("subspace_from_vectors: vectors span the whole space; V must be nontrivial");
  }
  const ComplexMatrix u = svd.matrixU().leftCols(rank);
  return ArrivalSubspace::from_projector(u * u.adjoint(), tol);
}

ArrivalSubspace subspace_from_basis(Eigen::Index n, const std::vector<Eigen::Index>& indices) {
  if (indices.empty()) throw ArgumentError("subspace_from_basis: no basis states given");
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (const auto k : indices) {
    if (k < 0 || k >= n) throw ArgumentError("subspace_from_basis: basis index out of range");
    p(k, k) = 1.0;
  }
  return ArrivalSubspace::from_projector(p);
}

ComplexMatrix SuperProjectors::not_qq() const {
  return ComplexMatrix::Identity(qq.rows(), qq.cols()) - qq;
}

SuperProjectors super_projectors(const ArrivalSubspace& s) {
  const ComplexMatrix& p = s.projector();
  const ComplexMatrix& q = s.complement();
  SuperProjectors sp;
  sp.pp = kron(p, p.conjugate());
  sp.qq = kron(q, q.conjugate());
  sp.rr = ComplexMatrix::Identity(sp.pp.rows(), sp.pp.cols()) - sp.pp - sp.qq;
  return sp;
}

// ---------------------------------------------------------------------------
// H, K and blocks

HittingMaps hitting_maps(const SuperOperator& t, const SuperProjectors& sp) {
  const ComplexMatrix& phi = t.rep();
  if (sp.qq.rows() != phi.rows()) throw DimensionError("hitting_maps: projectors do not match the map");
  const ComplexMatrix id = ComplexMatrix::Identity(phi.rows(), phi.cols());
  const ComplexMatrix qphi = sp.qq * phi;

  HittingMaps out;
  out.spectral_radius_qphi = spectral_radius(qphi);
  Eigen::PartialPivLU<ComplexMatrix> lu(id - qphi);
  const double rcond = lu.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (out.spectral_radius_qphi >= 1.0 - kSpectralMargin ||
      !(rcond > 64.0 * std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << "hitting_maps: I - QPhi is singular to working precision (spectral radius of QPhi "
       << out.spectral_radius_qphi << ", condition estimate " << out.condition_estimate << ")";
    throw NumericError(os.str(), out.condition_estimate);
  }
  const ComplexMatrix once = lu.solve(id);
  const ComplexMatrix twice = lu.solve(once);
  out.h_rep = phi * once;
  out.k_rep = phi * twice;
  return out;
}

ComplexMatrix block(const ComplexMatrix& t_rep, const SuperProjectors& sp, int i, int j) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2)) throw ArgumentError("block: indices must be 1 or 2");
  if (t_rep.rows() != sp.qq.rows() || t_rep.cols() != sp.qq.cols()) {
    throw DimensionError("block: operand does not match the projectors");
  }
  const ComplexMatrix left = i == 1 ? sp.not_qq() : sp.qq;
  const ComplexMatrix right = j == 1 ? sp.not_qq() : sp.qq;
  return left * t_rep * right;
}

HittingSolution solve_hitting(const SuperOperator& t, const ArrivalSubspace& v, const Tolerance& tol) {
  if (v.ambient_dim() != t.dim()) {
    throw DimensionError("solve_hitting: arrival subspace lives in a different dimension");
  }
  IrreducibilityCertificate cert = invariant_state(t, tol);
  FundamentalData fd = fundamental_map(t, cert, tol);
  SuperProjectors sp = super_projectors(v);
  HittingMaps hk = hitting_maps(t, sp);

  const ComplexMatrix k11 = block(hk.k_rep, sp, 1, 1);
  ComplexMatrix ret = k11 * block(fd.z_rep, sp, 1, 1);
  ComplexMatrix cross = k11 * block(fd.z_rep, sp, 1, 2);
  HittingDiagnostics diag{hk.spectral_radius_qphi, hk.condition_estimate, fd.condition_estimate};

  return HittingSolution{t,
                         v,
                         std::move(sp),
                         std::move(cert),
                         std::move(fd),
                         std::move(hk.h_rep),
                         std::move(hk.k_rep),
                         std::move(ret),
                         std::move(cross),
                         diag};
}

// ---------------------------------------------------------------------------
// Queries

double hitting_probability(const HittingSolution& hs, const DensityMatrix& rho) {
  require_same_dim(hs, rho, "hitting_probability");
  return trace_real(hs.projectors.not_qq() * hs.h_rep, rho.vectorized());
}

double mean_hitting_time_direct(const HittingSolution& hs, const DensityMatrix& rho) {
  require_same_dim(hs, rho, "mean_hitting_time_direct");
  return trace_real(hs.projectors.not_qq() * hs.k_rep, rho.vectorized());
}

double mean_hitting_time_shortcut(const HittingSolution& hs, const DensityMatrix& rho) {
  require_same_dim(hs, rho, "mean_hitting_time_shortcut");
  return trace_real(hs.h_rep, rho.vectorized());
}

double complement_support_residual(const SuperProjectors& sp, const DensityMatrix& rho) {
  const ComplexVector v = rho.vectorized();
  return (sp.qq * v - v).norm();
}

double arrival_support_residual(const SuperProjectors& sp, const DensityMatrix& rho) {
  const ComplexVector v = rho.vectorized();
  return (sp.pp * v - v).norm();
}

namespace {

void require_arrival_support(const HittingSolution& hs, const DensityMatrix& rho_psi, double support_tol,
                             const char* what) {
  const double r = arrival_support_residual(hs.projectors, rho_psi);
  if (r > support_tol) {
    std::ostringstream os;
    os << what << ": arrival state is not supported on V (residual " << r << ")";
    throw OrthogonalityError(os.str(), r);
  }
}

}  // namespace

MhtfDecomposition mhtf_orthogonal(const HittingSolution& hs, const DensityMatrix& rho_phi,
                                  const DensityMatrix& rho_psi, double support_tol) {
  require_same_dim(hs, rho_phi, "mhtf_orthogonal");
  require_same_dim(hs, rho_psi, "mhtf_orthogonal");
  const double r = complement_support_residual(hs.projectors, rho_phi);
  if (r > support_tol) {
    std::ostringstream os;
    os << "mhtf_orthogonal: initial state is not orthogonal to V (residual " << r << ")";
    throw OrthogonalityError(os.str(), r);
  }
  require_arrival_support(hs, rho_psi, support_tol, "mhtf_orthogonal");

  MhtfDecomposition out;
  out.return_term = trace_real(hs.return_map, rho_psi.vectorized());
  out.cross_term = trace_real(hs.cross_map, rho_phi.vectorized());
  out.tau = out.return_term - out.cross_term;
  return out;
}

DnlMaps dnl_maps(const HittingSolution& hs) {
  const auto& sp = hs.projectors;
  DnlMaps out;
  out.d_rep = block(hs.k_rep, sp, 1, 1) + block(hs.k_rep, sp, 2, 2);
  out.n_rep = hs.k_rep - out.d_rep;
  out.l_rep = hs.k_rep - out.n_rep * hs.map.rep();
  return out;
}

FirstStep condition_first_step(const SuperOperator& t, const SuperProjectors& sp, const DensityMatrix& rho,
                               const Tolerance& tol) {
  if (rho.dim() != t.dim()) throw DimensionError("condition_first_step: state dimension mismatch");
  const ComplexMatrix sigma = unvec(sp.qq * (t.rep() * rho.vectorized()));
  FirstStep out;
  if (sigma.norm() <= tol.atol()) return out;
  out.weight = sigma.trace().real();
  // Normalizing by a small weight magnifies round-off in the same proportion.
  const double scale = std::max(1.0, 1.0 / std::abs(out.weight));
  out.next_state.emplace(sigma / out.weight, Tolerance(tol.atol() * scale, tol.rtol()));
  return out;
}

DensityMatrix uniform_arrival_state(const ArrivalSubspace& s) {
  return DensityMatrix(s.projector() / static_cast<double>(s.rank()));
}

double mhtf_general(const HittingSolution& hs, const DensityMatrix& rho,
                    const std::optional<DensityMatrix>& rho_psi, double support_tol) {
  require_same_dim(hs, rho, "mhtf_general");
  const DensityMatrix psi = rho_psi ? *rho_psi : uniform_arrival_state(hs.subspace);
  require_same_dim(hs, psi, "mhtf_general");
  require_arrival_support(hs, psi, support_tol, "mhtf_general");

  const ComplexVector sigma = hs.projectors.qq * (hs.map.rep() * rho.vectorized());
  if (unvec(sigma).norm() <= Tolerance{}.atol()) return 1.0;
  const double weight = trace_of_vec(sigma).real();
  const double return_term = trace_real(hs.return_map, psi.vectorized());
  return 1.0 + return_term * weight - trace_real(hs.cross_map, sigma);
}

}  // namespace qhit
