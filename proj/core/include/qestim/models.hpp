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

#ifndef QESTIM_MODELS_HPP
#define QESTIM_MODELS_HPP

#include <array>

#include "qestim/complex_matrix.hpp"
#include "qestim/estimation.hpp"
#include "qestim/observable.hpp"

namespace qestim {

// ---------------------------------------------------------------------------
// Driven qubit: H(omega_a) = (omega_a/2) sigma_z + F sigma_x, initial state
// cos(phi)|g> + sin(phi)|e>. The estimated parameter is omega_a.
// ---------------------------------------------------------------------------

struct DrivenQubitParams {
  double omega_a = 2.0;  ///< transition frequency (estimated parameter)
  double drive = 1.0;    ///< drive amplitude F
  double phi = 0.7853981633974483;  ///< initial-state angle, pi/4 by default
  double t = 0.0;
};

ComplexMatrix driven_qubit_hamiltonian(double omega_a, double drive);

/// Evolved state. Uses the closed form (valid at phi = pi/4 with nonzero
/// drive); other angles route through generic unitary evolution.
ComplexMatrix driven_qubit_state(const DrivenQubitParams& p);

/// d rho / d omega_a, analytic on both paths.
ComplexMatrix driven_qubit_state_derivative(const DrivenQubitParams& p);

/// Analytic mean, centered second moment and parameter derivative of the
/// mean for an observable given by single-qubit Pauli coefficients.
struct MeanVarianceDerivative {
  double mean = 0.0;
  double variance = 0.0;    ///< <(A - <A>)^2>
  double derivative = 0.0;  ///< d<A>/d omega_a
};

/// Closed-form path; requires the coefficient record (MissingCoefficients
/// otherwise) and the phi = pi/4, F != 0 regime.
MeanVarianceDerivative driven_qubit_mean_and_derivative(const Observable& a,
                                                        const DrivenQubitParams& p);

/// Family over (omega_a, t) at fixed drive and initial angle.
ParamFamily driven_qubit_family(double drive, double phi);

// ---------------------------------------------------------------------------
// Coupled nucleus-electron pair under an on-resonance drive:
// H(omega_l) = (Omega_1/2) sigma_x + (omega_l/2) I_z + g sigma_z I_x.
// Basis ordering |e^e g^n>, |e^e e^n>, |g^e g^n>, |g^e e^n> -- the
// electron is the outer tensor factor. The estimated parameter is the
// nuclear Larmor frequency omega_l.
// ---------------------------------------------------------------------------

struct BipartiteParams {
  double omega_l = 2.0;   ///< nuclear Larmor frequency (estimated parameter)
  double rabi = 3.0;      ///< Rabi frequency Omega_1
  double coupling = 2.0;  ///< nucleus-electron coupling g
  double phi1 = 0.7853981633974483;  ///< nuclear initial angle
  double phi2 = 0.7853981633974483;  ///< electronic initial angle
  double t = 0.0;
};

enum class Subsystem { Electron, Nucleus };

/// Tensor-factor slot of a subsystem in the 4x4 basis above.
Keep subsystem_keep(Subsystem s);

ComplexMatrix bipartite_hamiltonian(double omega_l, double rabi, double coupling);

/// d H / d omega_l (constant).
ComplexMatrix bipartite_hamiltonian_derivative();

/// Closed-form eigensystem of the 4x4 Hamiltonian. Values and columns in
/// the order (-sqrt(a^2+g^2), -sqrt(b^2+g^2), +sqrt(a^2+g^2),
/// +sqrt(b^2+g^2)) with a = (omega_l - Omega_1)/2, b = (omega_l +
/// Omega_1)/2; the mixing angles satisfy
/// cos(t+)cos(t-) + sin(t+)sin(t-) = 0.
struct BipartiteEigen {
  std::array<double, 4> values;
  ComplexMatrix vectors;  ///< columns in the same order as values
  double theta_plus = 0.0, theta_minus = 0.0;
  double phi_plus = 0.0, phi_minus = 0.0;
};

BipartiteEigen bipartite_eigen_closed(double omega_l, double rabi, double coupling);

/// Closed-form evolved state vector (phi1 = phi2 = pi/4 only).
Vector bipartite_state_vector(const BipartiteParams& p);

/// Analytic d/d omega_l of the closed-form state vector.
Vector bipartite_state_vector_derivative(const BipartiteParams& p);

/// Evolved density matrix; closed form at pi/4 angles, generic unitary
/// evolution otherwise.
ComplexMatrix bipartite_state(const BipartiteParams& p);

/// Family over (omega_l, t) at fixed Rabi frequency, coupling and
/// initial angles. dim_a/dim_b identify electron (outer) and nucleus.
ParamFamily bipartite_family(double rabi, double coupling, double phi1, double phi2);

// ---------------------------------------------------------------------------
// Generic unitary-family machinery and noisy dynamics.
// ---------------------------------------------------------------------------

/// Exact d rho / d theta for rho = U rho0 U^dagger, U = e^{-iH(theta)t}:
/// -i[G, rho] with G the integral of e^{-iHs} dH e^{iHs} over [0, t],
/// evaluated in the eigenbasis of H.
ComplexMatrix unitary_parameter_derivative(const ComplexMatrix& hamiltonian,
                                           const ComplexMatrix& dh,
                                           const ComplexMatrix& rho0, double t);

/// Markovian noise channel acting on the electron factor.
struct NoiseSpec {
  enum class Jump { Dephasing, Dissipation };
  double kappa = 0.0;            ///< jump rate, >= 0
  Jump jump = Jump::Dephasing;   ///< sigma_x (dephasing) or sigma_- (dissipation)
  double dt = 1e-3;              ///< fixed integrator step
};

/// The jump operator matching a Hilbert-space dimension: bare sigma_x or
/// sigma_- for a single qubit, embedded on the electron (outer) factor
/// for the 4x4 pair.
ComplexMatrix jump_operator(NoiseSpec::Jump jump, int dim);

/// Fixed-step fourth-order Runge-Kutta integration of
/// drho/dt = -i[H, rho] + (kappa/2)(2 M rho M^+ - rho M^+M - M^+M rho).
/// Throws StepTooLarge when the trace drifts beyond tolerance.
ComplexMatrix lindblad_evolve(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                              const NoiseSpec& noise, double t);

/// Noisy bipartite family. The derivative is co-integrated with the
/// state through the augmented linear system
/// dsigma/dt = -i[H, sigma] - i[dH, rho] + D(sigma), sigma(0) = 0.
ParamFamily lindblad_family(double rabi, double coupling, double phi1, double phi2,
                            const NoiseSpec& noise);

}  // namespace qestim

#endif  // QESTIM_MODELS_HPP
