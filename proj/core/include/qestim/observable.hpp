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

#ifndef QESTIM_OBSERVABLE_HPP
#define QESTIM_OBSERVABLE_HPP

#include <optional>
#include <utility>

#include "qestim/complex_matrix.hpp"

namespace qestim {

/// Coefficients of A = s*I + x*sigma_x + y*sigma_y + z*sigma_z for one
/// spin-1/2 factor.
struct PauliCoeffs {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// s*I + x*sigma_x + y*sigma_y + z*sigma_z.
ComplexMatrix pauli_combination(const PauliCoeffs& c);

/// A Hermitian observable. When built from Pauli coefficients the record
/// is kept so analytic fast paths can use it; the matrix always agrees
/// with the record by construction.
struct Observable {
  ComplexMatrix matrix;
  /// Single-qubit coefficient record.
  std::optional<PauliCoeffs> single;
  /// Per-factor records (outer, inner) for two-qubit product observables.
  std::optional<std::pair<PauliCoeffs, PauliCoeffs>> factors;
};

/// Bare Hermitian matrix, no coefficient record.
Observable make_observable(ComplexMatrix m);

/// Single-qubit observable from its Pauli coefficients.
Observable make_qubit_observable(const PauliCoeffs& c);

/// A (outer) tensor identity: an observable acting on the outer factor only.
Observable make_local_outer_observable(const PauliCoeffs& outer);

/// Identity tensor A (inner): an observable acting on the inner factor only.
Observable make_local_inner_observable(const PauliCoeffs& inner);

/// Product observable A_outer tensor A_inner.
Observable make_joint_observable(const PauliCoeffs& outer, const PauliCoeffs& inner);

}  // namespace qestim

#endif  // QESTIM_OBSERVABLE_HPP
