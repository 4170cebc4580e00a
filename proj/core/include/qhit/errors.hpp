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

#include <stdexcept>
#include <string>

namespace qhit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not agree (non-square input, mismatched operands, bad length).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument is malformed independently of its shape (empty list, zero span).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data fails a domain check (negative probability, column not summing to one).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A state is not supported where the formula requires it (ℚρ ≠ ρ or ℙρ ≠ ρ).
class OrthogonalityError : public PreconditionError {
 public:
  OrthogonalityError(const std::string& what, double residual)
      : PreconditionError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The map or chain is not (certifiably) irreducible.
class IrreducibilityError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A linear solve is singular to working precision.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  explicit NumericError(const std::string& what) : NumericError(what, 0.0) {}
  double condition_estimate() const noexcept { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// An iterative series or simulation does not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qhit
