// Copyright 2026 The qestim authors
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

#ifndef QESTIM_ERRORS_HPP
#define QESTIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qestim {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix required to be Hermitian is not, within tolerance.
struct NonHermitian : Error {
  explicit NonHermitian(const std::string& what) : Error(what) {}
};

/// Operand dimensions are incompatible.
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

/// A density matrix (or its parameter derivative) violates the state
/// invariants: Hermitian, unit trace, positive semidefinite.
struct InvalidState : Error {
  explicit InvalidState(const std::string& what) : Error(what) {}
};

/// A Fisher-information term 1/p_j (dp_j)^2 is undefined: p_j vanishes
/// while its derivative does not.
struct DegenerateProbability : Error {
  explicit DegenerateProbability(const std::string& what) : Error(what) {}
};

/// The error-propagation variance diverges because the observable's mean
/// does not depend on the parameter (e.g. a multiple of the identity).
struct DivergentVariance : Error {
  explicit DivergentVariance(const std::string& what) : Error(what) {}
};

/// The reference observable passed to the decomposed gap formula does not
/// saturate the Cramer-Rao bound.
struct NonSaturatingReference : Error {
  explicit NonSaturatingReference(const std::string& what) : Error(what) {}
};

/// An analytic path that needs the Pauli coefficient record was called on
/// an observable that carries only a matrix.
struct MissingCoefficients : Error {
  explicit MissingCoefficients(const std::string& what) : Error(what) {}
};

/// The fixed-step integrator lost trace beyond tolerance; the step size
/// must shrink.
struct StepTooLarge : Error {
  explicit StepTooLarge(const std::string& what) : Error(what) {}
};

}  // namespace qestim

#endif  // QESTIM_ERRORS_HPP
