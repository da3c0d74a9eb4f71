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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qestim/errors.hpp"
#include "qestim/estimation.hpp"
#include "qestim/models.hpp"
#include "qestim/tolerances.hpp"
#include "test_helpers.hpp"

using namespace qestim;
using testing::TestRng;
using testing::max_abs_diff;
using testing::random_hermitian;
using testing::random_state;

namespace {

// rho = diag((1+theta)/2, (1-theta)/2): a classical binomial family.
ParamFamily diagonal_family() {
  auto state = [](double theta, double) {
    ComplexMatrix rho(2);
    rho(0, 0) = 0.5 * (1.0 + theta);
    rho(1, 1) = 0.5 * (1.0 - theta);
    return rho;
  };
  auto derivative = [](double, double) {
    ComplexMatrix d(2);
    d(0, 0) = 0.5;
    d(1, 1) = -0.5;
    return d;
  };
  return make_family(2, state, derivative);
}

ComplexMatrix random_traceless_hermitian(TestRng& rng, int dim) {
  ComplexMatrix m = random_hermitian(rng, dim);
  const Complex shift = m.trace() / static_cast<double>(dim);
  for (int i = 0; i < dim; ++i) m(i, i) -= shift;
  return m;
}

double sld_defect(const ComplexMatrix& rho, const ComplexMatrix& drho,
                  const ComplexMatrix& l) {
  return max_abs(drho - 0.5 * anticommutator(rho, l));
}

}  // namespace

TEST_CASE("logarithmic derivative of the diagonal family is sigma_z") {
  const ParamFamily fam = diagonal_family();
  const ComplexMatrix l = sld(fam.state_at(0.0, 0.0), fam.derivative_at(0.0, 0.0));
  CHECK(max_abs_diff(l, pauli_z()) < 1e-12);
  CHECK(qfi(fam.state_at(0.0, 0.0), fam.derivative_at(0.0, 0.0)) == doctest::Approx(1.0));
}

TEST_CASE("zero derivative gives a zero operator and zero information") {
  const ParamFamily fam = diagonal_family();
  const ComplexMatrix rho = fam.state_at(0.2, 0.0);
  const ComplexMatrix zero = ComplexMatrix::zero(2);
  CHECK(max_abs(sld(rho, zero)) == 0.0);
  CHECK(qfi(rho, zero) == 0.0);
}

TEST_CASE("pure families have L = 2 drho") {
  const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  const ComplexMatrix rho = fam.state_at(2.0, 1.5);
  const ComplexMatrix drho = fam.derivative_at(2.0, 1.5);
  const ComplexMatrix l = sld(rho, drho);
  CHECK(max_abs_diff(l, 2.0 * drho) < 1e-9);
  CHECK(sld_defect(rho, drho, l) < 1e-10);
  // <L> vanishes
  CHECK(std::abs(expectation(rho, l)) < 1e-10);
}

TEST_CASE("logarithmic derivative solves its defining equation on mixed states") {
  TestRng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const ComplexMatrix rho = random_state(rng, dim);
    const ComplexMatrix drho = random_traceless_hermitian(rng, dim);
    const ComplexMatrix l = sld(rho, drho);
    CHECK(sld_defect(rho, drho, l) < 1e-8);
    CHECK(std::abs(expectation(rho, l)) < 1e-8);
    CHECK(qfi(rho, drho) >= 0.0);
  }
}

TEST_CASE("finite-difference fallback derivative") {
  // a family built from the state map alone differentiates numerically
  const ParamFamily analytic = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  const ParamFamily numeric = make_family(2, analytic.state_at);
  for (const double theta : {0.5, 2.0, 3.5}) {
    const ComplexMatrix d_num = numeric.derivative_at(theta, 1.5);
    const ComplexMatrix d_ana = analytic.derivative_at(theta, 1.5);
    CHECK(max_abs_diff(d_num, d_ana) < 1e-8);
    CHECK(d_num.is_hermitian(1e-15));
  }
  const auto [rho, drho] = numeric.state_and_derivative_at(2.0, 1.5);
  CHECK(max_abs_diff(rho, analytic.state_at(2.0, 1.5)) == 0.0);
  CHECK(max_abs_diff(drho, numeric.derivative_at(2.0, 1.5)) == 0.0);
}

TEST_CASE("invalid states are rejected") {
  ComplexMatrix not_a_state(2);
  not_a_state(0, 0) = 2.0;  // trace 2
  CHECK_THROWS_AS(sld(not_a_state, ComplexMatrix::zero(2)), InvalidState);
  ComplexMatrix rho(2);
  rho(0, 0) = 1.0;
  ComplexMatrix not_traceless(2);
  not_traceless(0, 0) = 1.0;
  CHECK_THROWS_AS(sld(rho, not_traceless), InvalidState);
}

TEST_CASE("frozen Fisher information anchor for the driven qubit") {
  // independent state-vector value 4(<dpsi|dpsi> - |<psi|dpsi>|^2) at
  // omega_a = 2, F = 1, t = 1.5, phi = pi/4
  const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  const EstimationContext ctx = make_context(fam, 2.0, 1.5);
  CHECK(ctx.qfi == doctest::Approx(0.4827929800171121).epsilon(1e-9));
}

TEST_CASE("classical Fisher information") {
  SUBCASE("sigma_z measurement on the diagonal family saturates") {
    const double p[] = {0.5, 0.5};
    const double dp[] = {0.5, -0.5};
    CHECK(classical_fisher(p, dp) == doctest::Approx(1.0));
  }
  SUBCASE("parameter-independent probabilities carry no information") {
    const double p[] = {0.25, 0.25, 0.25, 0.25};
    const double dp[] = {0.0, 0.0, 0.0, 0.0};
    CHECK(classical_fisher(p, dp) == 0.0);
  }
  SUBCASE("vanishing probability with nonzero derivative is undefined") {
    const double p[] = {1.0, 0.0};
    const double dp[] = {0.5, -0.5};
    CHECK_THROWS_AS(classical_fisher(p, dp), DegenerateProbability);
  }
  SUBCASE("probabilities must sum to one") {
    const double p[] = {0.5, 0.4};
    const double dp[] = {0.0, 0.0};
    CHECK_THROWS_AS(classical_fisher(p, dp), InvalidState);
  }
  SUBCASE("skipped kernel outcomes do not contribute") {
    const double p[] = {1.0, 0.0};
    const double dp[] = {0.0, 0.0};
    CHECK(classical_fisher(p, dp) == 0.0);
  }
}

TEST_CASE("measuring the eigenprojectors of L reaches the quantum bound") {
  const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  for (const double t : {0.7, 1.0, 1.5, 2.3}) {
    const EstimationContext ctx = make_context(fam, 2.0, t);
    const auto projectors = eigenprojectors(ctx.sld_eigen, tol::cluster);
    const auto p = measurement_probabilities(ctx.rho, projectors);
    const auto dp = measurement_probabilities(ctx.drho, projectors);
    CHECK(classical_fisher(p, dp) == doctest::Approx(ctx.qfi).epsilon(1e-8));
  }
}

TEST_CASE("error-propagation variance") {
  const ParamFamily diag = diagonal_family();
  SUBCASE("sigma_z on the diagonal family at theta = 0") {
    CHECK(variance_error_propagation(make_observable(pauli_z()), diag, 0.0, 0.0) ==
          doctest::Approx(1.0));
  }
  SUBCASE("measuring L itself reaches 1/qfi exactly") {
    const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
    const EstimationContext ctx = make_context(fam, 2.0, 1.5);
    const double v = variance_error_propagation(make_observable(ctx.sld_op), ctx);
    CHECK(std::abs(v - 1.0 / ctx.qfi) < 1e-9);
  }
  SUBCASE("the identity is information-free") {
    CHECK_THROWS_AS(variance_error_propagation(
                        make_observable(ComplexMatrix::identity(2)), diag, 0.0, 0.0),
                    DivergentVariance);
  }
}

TEST_CASE("gap to the bound") {
  const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  const EstimationContext ctx = make_context(fam, 2.0, 1.5);
  const Observable l_obs = make_observable(ctx.sld_op);

  SUBCASE("L saturates") {
    CHECK(std::abs(lambda_direct(l_obs, ctx)) < 1e-9);
  }
  SUBCASE("affine images of L saturate") {
    const ComplexMatrix a = 2.5 * ctx.sld_op + (-0.7) * ComplexMatrix::identity(2);
    CHECK(std::abs(lambda_direct(make_observable(a), ctx)) < 1e-9);
  }
  SUBCASE("direct and decomposed forms agree on random observables") {
    TestRng rng(32);
    for (int trial = 0; trial < 500; ++trial) {
      const PauliCoeffs dev{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                            rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
      const Observable a = make_observable(ctx.sld_op + pauli_combination(dev));
      double direct = 0.0;
      try {
        direct = lambda_direct(a, ctx);
      } catch (const DivergentVariance&) {
        continue;
      }
      const double decomposed = lambda_decomposed(a, ctx, l_obs);
      CHECK(std::abs(direct - decomposed) < 1e-8);
      CHECK(direct >= -1e-9);
    }
  }
  SUBCASE("fixed deviation cross-check") {
    const Observable a = make_observable(ctx.sld_op + 0.3 * pauli_x());
    CHECK(lambda_decomposed(a, ctx, l_obs) ==
          doctest::Approx(lambda_direct(a, ctx)).epsilon(1e-8));
  }
  SUBCASE("zero deviation gives zero gap") {
    CHECK(std::abs(lambda_decomposed(l_obs, ctx, l_obs)) < 1e-12);
  }
  SUBCASE("the identity cannot serve as reference") {
    const Observable id = make_observable(ComplexMatrix::identity(2));
    CHECK_THROWS_AS(lambda_decomposed(l_obs, ctx, id), NonSaturatingReference);
  }
}

TEST_CASE("commutant basis") {
  SUBCASE("nondegenerate 2x2 operator has a two-element basis") {
    const auto basis = commutant_basis(pauli_z());
    REQUIRE(basis.size() == 2);
    for (const auto& b : basis) {
      CHECK(frobenius_norm(commutator(pauli_z(), b)) <= 1e-9);
      CHECK(std::abs(b(0, 1)) < 1e-12);  // diagonal in the sigma_z basis
    }
    // the two elements span the diagonal matrices
    const double det = basis[0](0, 0).real() * basis[1](1, 1).real() -
                       basis[1](0, 0).real() * basis[0](1, 1).real();
    CHECK(std::abs(det) > 1e-6);
  }
  SUBCASE("the identity commutes with everything") {
    CHECK(commutant_basis(ComplexMatrix::identity(2)).size() == 4);
  }
  SUBCASE("basis of the driven-qubit logarithmic derivative") {
    const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
    const EstimationContext ctx = make_context(fam, 2.0, 1.0);
    const auto basis = commutant_basis(ctx.sld_op);
    REQUIRE(basis.size() == 2);
    for (const auto& b : basis) {
      CHECK(frobenius_norm(commutator(ctx.sld_op, b)) <= 1e-9);
    }
  }
  SUBCASE("non-Hermitian input is rejected") {
    ComplexMatrix m(2, {0.0, 1.0, 2.0, 0.0});
    CHECK_THROWS_AS(commutant_basis(m), NonHermitian);
  }
}

TEST_CASE("minimum distance to the commutant") {
  SUBCASE("a commuting observable has zero distance") {
    const auto [d, m] = min_distance(make_observable(pauli_z()), pauli_z());
    CHECK(d < 1e-12);
    CHECK(max_abs_diff(m, pauli_z()) < 1e-12);
  }
  SUBCASE("sigma_x is purely off-diagonal in the sigma_z basis") {
    const auto [d, m] = min_distance(make_observable(pauli_x()), pauli_z());
    CHECK(d == doctest::Approx(std::sqrt(2.0)));
    CHECK(max_abs(m) < 1e-12);
  }
  SUBCASE("pinching keeps the diagonal part") {
    const ComplexMatrix a = pauli_x() + 0.5 * pauli_z();
    const auto [d, m] = min_distance(make_observable(a), pauli_z());
    CHECK(d == doctest::Approx(std::sqrt(2.0)));
    CHECK(max_abs_diff(m, 0.5 * pauli_z()) < 1e-12);
  }
  SUBCASE("the pinched matrix beats random commutant elements") {
    TestRng rng(33);
    for (int kase = 0; kase < 5; ++kase) {
      const ComplexMatrix l = random_hermitian(rng, 4, 2.0);
      const ComplexMatrix a = random_hermitian(rng, 4, 1.0);
      const auto [d, best] = min_distance(make_observable(a), l);
      CHECK(frobenius_norm(commutator(l, best)) < 1e-8);
      const auto basis = commutant_basis(l);
      for (int trial = 0; trial < 200; ++trial) {
        ComplexMatrix candidate(4);
        for (const auto& b : basis) candidate += rng.uniform(-2.0, 2.0) * b;
        CHECK(d <= frobenius_norm(a - candidate) + 1e-12);
      }
    }
  }
}

TEST_CASE("subsystem information of a product family") {
  TestRng rng(34);
  const ComplexMatrix rho_b = random_state(rng, 2);
  const ParamFamily qubit = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  ParamFamily product;
  product.dim = 4;
  product.dim_a = 2;
  product.dim_b = 2;
  product.state_at = [qubit, rho_b](double theta, double t) {
    return kron(qubit.state_at(theta, t), rho_b);
  };
  product.derivative_at = [qubit, rho_b](double theta, double t) {
    return kron(qubit.derivative_at(theta, t), rho_b);
  };
  auto state = product.state_at;
  auto deriv = product.derivative_at;
  product.state_and_derivative_at = [state, deriv](double theta, double t) {
    return std::make_pair(state(theta, t), deriv(theta, t));
  };

  const double global = qfi(product.state_at(2.0, 1.5), product.derivative_at(2.0, 1.5));
  CHECK(subsystem_qfi(product, 2.0, 1.5, Keep::A) == doctest::Approx(global).epsilon(1e-8));
  CHECK(subsystem_qfi(product, 2.0, 1.5, Keep::B) < 1e-10);
  CHECK_THROWS_AS(subsystem_qfi(qubit, 2.0, 1.5, Keep::A), DimensionMismatch);
}

TEST_CASE("uncertainty product inequality") {
  SUBCASE("X = Y is an equality") {
    TestRng rng(35);
    const ComplexMatrix rho = random_state(rng, 2);
    const ComplexMatrix x = random_hermitian(rng, 2);
    CHECK(schrodinger_robertson_check(x, x, rho));
  }
  SUBCASE("sigma_x, sigma_z on the maximally mixed state") {
    CHECK(schrodinger_robertson_check(pauli_x(), pauli_z(),
                                      0.5 * ComplexMatrix::identity(2)));
  }
  SUBCASE("random Hermitian pairs on random states") {
    TestRng rng(36);
    for (int trial = 0; trial < 10000; ++trial) {
      const int dim = 2 + trial % 3;
      const ComplexMatrix rho = random_state(rng, dim);
      const ComplexMatrix x = random_hermitian(rng, dim, 2.0);
      const ComplexMatrix y = random_hermitian(rng, dim, 2.0);
      CHECK(schrodinger_robertson_check(x, y, rho));
    }
  }
}

TEST_CASE("estimation report identities") {
  const ParamFamily fam = driven_qubit_family(1.0, std::numbers::pi / 4.0);
  const EstimationContext ctx = make_context(fam, 2.0, 1.5);
  const Observable a = make_observable(ctx.sld_op + 0.2 * pauli_y());
  const EstimationReport rep = estimate(a, ctx);
  CHECK(rep.variance == doctest::Approx(rep.qcrb + rep.lambda).epsilon(1e-10));
  CHECK(rep.lambda >= -1e-9);
  CHECK(rep.distance >= 0.0);
  CHECK(rep.qcrb == doctest::Approx(1.0 / rep.qfi));
  CHECK_FALSE(rep.saturated);
  CHECK(estimate(make_observable(ctx.sld_op), ctx).saturated);
}
