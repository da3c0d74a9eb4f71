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

#ifndef QESTIM_TOLERANCES_HPP
#define QESTIM_TOLERANCES_HPP

namespace qestim::tol {

// Numerical contract of the library. Every threshold below is part of the
// public behaviour and is exercised by the test suite.

/// Max |M(j,k) - conj(M(k,j))| for a matrix to count as Hermitian.
inline constexpr double hermitian = 1e-12;

/// Jacobi sweep target for the off-diagonal Frobenius mass (relative to
/// max(1, ||M||_F)).
inline constexpr double jacobi_off_diagonal = 1e-14;

/// Eigendecomposition reconstruction guarantee.
inline constexpr double eig_reconstruction = 1e-10;

/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double cluster = 1e-9;

/// Spectral pairs with mu_n + mu_m below this are excluded from the
/// symmetric logarithmic derivative (minimal-norm solution on the kernel).
inline constexpr double sld_kernel = 1e-12;

/// Smallest admissible eigenvalue of a density matrix. Closed-form
/// families stay above -1e-10; fixed-step integration is only guaranteed
/// positive to this looser bound.
inline constexpr double psd_floor = -1e-8;

/// |Tr(rho) - 1| allowed for a density matrix.
inline constexpr double unit_trace = 1e-8;

/// |Tr(drho)| allowed for a parameter derivative.
inline constexpr double traceless = 1e-8;

/// Probabilities below this are treated as zero in Fisher sums.
inline constexpr double probability_floor = 1e-12;

/// A zero probability whose derivative exceeds this makes the Fisher term
/// undefined.
inline constexpr double probability_derivative = 1e-10;

/// |d<A>/dtheta| below this makes the error-propagation variance diverge.
inline constexpr double derivative_floor = 1e-12;

/// Allowed violation of the gap's non-negativity.
inline constexpr double lambda_floor = -1e-9;

/// A gap below this marks the observable as saturating the bound.
inline constexpr double saturation = 1e-9;

/// Max |variance(A_opt) - 1/F_Q| for a reference observable to qualify as
/// saturating in the decomposed gap formula.
inline constexpr double saturating_reference = 1e-8;

/// Relative step for central finite differences in the parameter
/// (h = fd_step * max(1, |theta|)).
inline constexpr double fd_step = 1e-6;

/// Trace drift beyond which the fixed-step integrator reports failure.
inline constexpr double trace_drift = 1e-6;

/// Subsystem Fisher information below this gives an unbounded subsystem
/// variance.
inline constexpr double qfi_floor = 1e-12;

}  // namespace qestim::tol

#endif  // QESTIM_TOLERANCES_HPP
