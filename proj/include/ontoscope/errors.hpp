// Copyright 2026 The Ontoscope Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception hierarchy shared by all ontoscope components.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ontoscope {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two objects that must live in the same Hilbert space do not.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// An input value violates a construction invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A label is not registered in the container it was looked up in.
class LookupError : public Error {
  public:
    using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The requested construction only exists for other Hilbert-space dimensions.
class UnsupportedDimension : public Error {
  public:
    using Error::Error;
};

/// A quantity whose definition presupposes quantum certainty was requested
/// for a filter that violates it.
class CertaintyViolation : public Error {
  public:
    using Error::Error;
};

/// A quantity that is only meaningful for reciprocal models was requested
/// for a non-reciprocal one.
class NonReciprocalModel : public Error {
  public:
    using Error::Error;
};

/// A per-pair quantity degenerates for orthogonal state pairs.
class OrthogonalPair : public Error {
  public:
    using Error::Error;
};

/// A model fails to reproduce the quantum outcome statistics it claims to.
class BornViolation : public Error {
  public:
    BornViolation(const std::string& message, std::string psi, std::string phi,
                  double residual)
        : Error(message), psi_(std::move(psi)), phi_(std::move(phi)),
          residual_(residual) {}

    const std::string& psi() const { return psi_; }
    const std::string& phi() const { return phi_; }
    double residual() const { return residual_; }

  private:
    std::string psi_;
    std::string phi_;
    double residual_;
};

/// Model synthesis could not reach the requested residual.
class SynthesisFailure : public Error {
  public:
    SynthesisFailure(const std::string& message, double best_residual)
        : Error(message), best_residual_(best_residual) {}

    double best_residual() const { return best_residual_; }

  private:
    double best_residual_;
};

/// A text input could not be parsed; carries a 1-based source location.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace ontoscope
