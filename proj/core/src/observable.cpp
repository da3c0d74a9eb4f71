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

#include "qestim/observable.hpp"

#include <utility>

namespace qestim {

ComplexMatrix pauli_combination(const PauliCoeffs& c) {
  ComplexMatrix m(2);
  m(0, 0) = Complex(c.s + c.z, 0.0);
  m(1, 1) = Complex(c.s - c.z, 0.0);
  m(0, 1) = Complex(c.x, -c.y);
  m(1, 0) = Complex(c.x, c.y);
  return m;
}

Observable make_observable(ComplexMatrix m) {
  return Observable{std::move(m), std::nullopt, std::nullopt};
}

Observable make_qubit_observable(const PauliCoeffs& c) {
  return Observable{pauli_combination(c), c, std::nullopt};
}

Observable make_local_outer_observable(const PauliCoeffs& outer) {
  const PauliCoeffs id{1.0, 0.0, 0.0, 0.0};
  return Observable{kron(pauli_combination(outer), pauli_identity()),
                    std::nullopt, std::make_pair(outer, id)};
}

Observable make_local_inner_observable(const PauliCoeffs& inner) {
  const PauliCoeffs id{1.0, 0.0, 0.0, 0.0};
  return Observable{kron(pauli_identity(), pauli_combination(inner)),
                    std::nullopt, std::make_pair(id, inner)};
}

Observable make_joint_observable(const PauliCoeffs& outer, const PauliCoeffs& inner) {
  return Observable{kron(pauli_combination(outer), pauli_combination(inner)),
                    std::nullopt, std::make_pair(outer, inner)};
}

}  // namespace qestim
