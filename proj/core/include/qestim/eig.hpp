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

#ifndef QESTIM_EIG_HPP
#define QESTIM_EIG_HPP

#include <vector>

#include "qestim/complex_matrix.hpp"

namespace qestim {

/// Spectral decomposition of a Hermitian matrix. Values ascending; the
/// columns of `vectors` are the matching orthonormal eigenvectors. Each
/// column's first component of largest magnitude is real and
/// non-negative, so the decomposition is reproducible.
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;

  Vector eigenvector(int k) const;
};

/// Cyclic-Jacobi eigendecomposition of a Hermitian matrix. Throws
/// NonHermitian when the input fails the Hermiticity check. Eigenvectors
/// inside a degenerate cluster are re-orthonormalized in index order.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// Indices of `values` (assumed ascending) grouped into clusters whose
/// internal gaps are below `gap`.
std::vector<std::vector<int>> cluster_indices(const std::vector<double>& values, double gap);

/// e^{-i H t} built from the spectral decomposition of Hermitian H.
ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t);

/// U rho0 U^dagger with U = e^{-i H t}.
ComplexMatrix evolve_unitary(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                             double t);

}  // namespace qestim

#endif  // QESTIM_EIG_HPP
