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

#include "qhit/fundamental.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <Eigen/LU>

#include "qhit/errors.hpp"

namespace qhit {

namespace {

// Ω*(I) − I residual: vec(I)ᵀ applied from the left is the trace functional.
double trace_preservation_residual(const ComplexMatrix& rep) {
  const Eigen::Index n = exact_sqrt_dim(rep.rows(), "trace residual");
  const ComplexVector id = vec(ComplexMatrix::Identity(n, n));
  return (rep.adjoint() * id - id).norm();
}

}  // namespace

ComplexMatrix build_omega(const DensityMatrix& pi) {
  const Eigen::Index n = pi.dim();
  return pi.vectorized() * vec(ComplexMatrix::Identity(n, n)).transpose();
}

FundamentalData fundamental_map(const SuperOperator& t, const IrreducibilityCertificate& cert,
                                const Tolerance& tol) {
  if (!cert.certified() || !cert.invariant_state) {
    throw IrreducibilityError(std::string("fundamental_map: map is not certified irreducible (verdict ") +
                              std::string(to_string(cert.verdict)) + ")");
  }
  if (cert.invariant_state->dim() != t.dim()) {
    throw DimensionError("fundamental_map: certificate does not belong to this map");
  }
  const auto tp = check_trace_preserving(t, tol);
  if (!tp.trace_preserving) {
    throw PreconditionError("fundamental_map: map is not trace preserving");
  }

  const Eigen::Index d = t.rep().rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix omega = build_omega(*cert.invariant_state);
  const ComplexMatrix a = id - t.rep() + omega;

  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > 64.0 * std::numeric_limits<double>::epsilon())) {
    std::ostringstream os;
    os << "fundamental_map: I - Phi + Omega is singular to working precision (condition estimate "
       << cond << ")";
    throw NumericError(os.str(), cond);
  }
  return FundamentalData{*cert.invariant_state, std::move(omega), lu.solve(id), cond};
}

double FundamentalIdentityReport::max_residual() const noexcept {
  return std::max({solve, z_omega, omega_z, z_one_minus_phi, one_minus_phi_z, omega_squared,
                   phi_omega, omega_phi, z_trace, omega_trace});
}

FundamentalIdentityReport verify_fundamental_identities(const FundamentalData& fd,
                                                        const SuperOperator& t) {
  const ComplexMatrix& z = fd.z_rep;
  const ComplexMatrix& om = fd.omega_rep;
  const ComplexMatrix& phi = t.rep();
  if (z.rows() != phi.rows()) {
    throw DimensionError("verify_fundamental_identities: data does not belong to this map");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(phi.rows(), phi.cols());

  FundamentalIdentityReport r;
  r.solve = (z * (id - phi + om) - id).norm();
  r.z_omega = (z * om - om).norm();
  r.omega_z = (om * z - om).norm();
  r.z_one_minus_phi = (z * (id - phi) - (id - om)).norm();
  r.one_minus_phi_z = ((id - phi) * z - (id - om)).norm();
  r.omega_squared = (om * om - om).norm();
  r.phi_omega = (phi * om - om).norm();
  r.omega_phi = (om * phi - om).norm();
  r.z_trace = trace_preservation_residual(z);
  r.omega_trace = trace_preservation_residual(om);
  return r;
}

}  // namespace qhit
