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

#ifndef QESTIM_ESTIMATION_HPP
#define QESTIM_ESTIMATION_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qestim/complex_matrix.hpp"
#include "qestim/eig.hpp"
#include "qestim/observable.hpp"

namespace qestim {

/// A parameterized state family: rho(theta, t) and its parameter
/// derivative. state_at must return a Hermitian, unit-trace, positive
/// semidefinite matrix; derivative_at a Hermitian traceless one. For
/// bipartite families dim_a/dim_b give the tensor factorization (outer,
/// inner); both zero otherwise. All callables are pure, so a family can
/// be evaluated concurrently at independent points.
struct ParamFamily {
  int dim = 0;
  int dim_a = 0;
  int dim_b = 0;
  std::function<ComplexMatrix(double theta, double t)> state_at;
  std::function<ComplexMatrix(double theta, double t)> derivative_at;
  /// Both at once; families whose derivative is co-computed with the
  /// state (e.g. integrated ones) override this to avoid doubling work.
  std::function<std::pair<ComplexMatrix, ComplexMatrix>(double theta, double t)>
      state_and_derivative_at;
};

/// Family from a state map alone; the derivative is a Hermitian-
/// symmetrized central difference with step 1e-6 * max(1, |theta|).
ParamFamily make_family(int dim, const std::function<ComplexMatrix(double, double)>& state);

/// Family with an analytic derivative map.
ParamFamily make_family(int dim, const std::function<ComplexMatrix(double, double)>& state,
                        const std::function<ComplexMatrix(double, double)>& derivative);

/// Estimation summary for one (family, observable) pair at a point.
/// variance = qcrb + lambda up to round-off.
struct EstimationReport {
  double variance = 0.0;
  double qfi = 0.0;
  double qcrb = 0.0;
  double lambda = 0.0;
  double distance = 0.0;
  bool saturated = false;
};

/// Symmetric logarithmic derivative: the Hermitian L solving
/// drho = (rho L + L rho)/2, built from the spectral decomposition of
/// rho. Pairs with mu_n + mu_m below threshold are skipped, which picks
/// the minimal-norm solution on the kernel. Throws InvalidState when rho
/// or drho violate the family invariants.
ComplexMatrix sld(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Quantum Fisher information Tr(rho L^2).
double qfi(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Classical Fisher information sum_j (dp_j)^2 / p_j. Vanishing
/// probabilities are skipped when their derivative also vanishes and
/// raise DegenerateProbability otherwise.
double classical_fisher(std::span<const double> probabilities,
                        std::span<const double> derivatives);

/// Everything about one (family, theta, t) point that does not depend on
/// the observable: the state pair, the logarithmic derivative with its
/// spectral data, and the Fisher information. Sweeps build this once per
/// point and evaluate many observables against it.
struct EstimationContext {
  ComplexMatrix rho;
  ComplexMatrix drho;
  ComplexMatrix sld_op;
  double qfi = 0.0;
  EigenSystem sld_eigen;
  std::vector<std::vector<int>> sld_clusters;
};

EstimationContext make_context(const ParamFamily& family, double theta, double t);
EstimationContext make_context(const ComplexMatrix& rho, const ComplexMatrix& drho);

/// Error-propagation variance <(dA)^2> / |d<A>/dtheta|^2. Throws
/// DivergentVariance when the mean carries no parameter dependence.
double variance_error_propagation(const Observable& a, const EstimationContext& ctx);
double variance_error_propagation(const Observable& a, const ParamFamily& family,
                                  double theta, double t);

/// Gap between the achieved variance and the Cramer-Rao bound,
/// lambda = variance - 1/qfi. Non-negative up to round-off.
double lambda_direct(const Observable& a, const EstimationContext& ctx);
double lambda_direct(const Observable& a, const ParamFamily& family, double theta, double t);

/// Same gap from the deviation dA = A - A_opt around a saturating
/// reference observable. Throws NonSaturatingReference when A_opt does
/// not reach the bound.
double lambda_decomposed(const Observable& a, const EstimationContext& ctx,
                         const Observable& a_opt);
double lambda_decomposed(const Observable& a, const ParamFamily& family, double theta,
                         double t, const Observable& a_opt);

/// Hermitian basis of { M : [L, M] = 0 }: one block of generators per
/// eigenvalue cluster of L. A nondegenerate 2x2 L yields exactly two
/// elements.
std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& l);

/// Frobenius-nearest element of the commutant of L, obtained by pinching:
/// rotate A into L's eigenbasis, zero the blocks that couple distinct
/// eigenvalue clusters, rotate back. Returns (distance, minimizer).
std::pair<double, ComplexMatrix> min_distance(const Observable& a, const ComplexMatrix& l);
std::pair<double, ComplexMatrix> min_distance(const Observable& a,
                                              const EstimationContext& ctx);

/// Fisher information of the reduced family on one tensor factor.
double subsystem_qfi(const ParamFamily& family, double theta, double t, Keep keep);

/// True when <(dX)^2><(dY)^2> >= Cov(X,Y)^2 + |<[X,Y]>|^2 / 4 holds with
/// slack at worst -1e-10.
bool schrodinger_robertson_check(const ComplexMatrix& x, const ComplexMatrix& y,
                                 const ComplexMatrix& rho);

/// One projector per eigenvalue cluster of the decomposition.
std::vector<ComplexMatrix> eigenprojectors(const EigenSystem& es, double cluster_gap);

/// Outcome probabilities Tr(rho P_j) of a projective measurement.
std::vector<double> measurement_probabilities(const ComplexMatrix& rho,
                                              const std::vector<ComplexMatrix>& projectors);

/// Full report for one observable at one point.
EstimationReport estimate(const Observable& a, const EstimationContext& ctx);
EstimationReport estimate(const Observable& a, const ParamFamily& family, double theta,
                          double t);

}  // namespace qestim

#endif  // QESTIM_ESTIMATION_HPP
