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

#include "qestim/complex_matrix.hpp"
#include "qestim/eig.hpp"
#include "qestim/errors.hpp"
#include "qestim/models.hpp"
#include "test_helpers.hpp"

using namespace qestim;
using testing::TestRng;
using testing::max_abs_diff;
using testing::random_hermitian;

namespace {

ComplexMatrix reconstruct(const EigenSystem& es) {
  const int n = es.vectors.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.vectors(r, k) * es.values[k] * std::conj(es.vectors(c, k));
      out(r, c) = s;
    }
  return out;
}

double unitarity_defect(const ComplexMatrix& v) {
  return max_abs(v.adjoint() * v - ComplexMatrix::identity(v.dim()));
}

// det(M) by Gaussian elimination with partial pivoting; used as an
// independent check that closed-form eigenvalues are roots of the
// characteristic polynomial.
Complex determinant(ComplexMatrix m) {
  const int n = m.dim();
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (std::abs(m(pivot, col)) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const Complex f = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("diagonal matrix") {
  const EigenSystem es = eig_hermitian(pauli_z());
  CHECK(es.values[0] == doctest::Approx(-1.0));
  CHECK(es.values[1] == doctest::Approx(1.0));
  CHECK(max_abs_diff(reconstruct(es), pauli_z()) < 1e-12);
}

TEST_CASE("zero matrix gives identity eigenvectors") {
  const EigenSystem es = eig_hermitian(ComplexMatrix::zero(3));
  for (double v : es.values) CHECK(v == 0.0);
  CHECK(max_abs_diff(es.vectors, ComplexMatrix::identity(3)) < 1e-12);
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m(2, {0.0, 1.0, 2.0, 0.0});
  CHECK_THROWS_AS(eig_hermitian(m), NonHermitian);
}

TEST_CASE("coupled-pair Hamiltonian eigenvalues") {
  // omega_l = 2, Omega_1 = 3, g = 2: alpha = -0.5, beta = 2.5
  const ComplexMatrix h = bipartite_hamiltonian(2.0, 3.0, 2.0);
  const EigenSystem es = eig_hermitian(h);
  const double ra = std::sqrt(4.25), rb = std::sqrt(10.25);
  CHECK(es.values[0] == doctest::Approx(-rb).epsilon(1e-12));
  CHECK(es.values[1] == doctest::Approx(-ra).epsilon(1e-12));
  CHECK(es.values[2] == doctest::Approx(ra).epsilon(1e-12));
  CHECK(es.values[3] == doctest::Approx(rb).epsilon(1e-12));
  CHECK(es.values[3] == doctest::Approx(3.2015621187164243));
  CHECK(es.values[2] == doctest::Approx(2.0615528128088303));
  // each value is a root of the characteristic polynomial
  for (const double e : es.values) {
    const ComplexMatrix shifted = h - e * ComplexMatrix::identity(4);
    CHECK(std::abs(determinant(shifted)) < 1e-8);
  }
  CHECK(max_abs_diff(reconstruct(es), h) < 1e-10);
}

TEST_CASE("random Hermitian reconstruction, dims 2-8") {
  TestRng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + trial % 7;
    const ComplexMatrix m = random_hermitian(rng, dim, 3.0);
    const EigenSystem es = eig_hermitian(m);
    CHECK(max_abs_diff(reconstruct(es), m) < 1e-10);
    CHECK(unitarity_defect(es.vectors) < 1e-10);
    for (std::size_t k = 1; k < es.values.size(); ++k) CHECK(es.values[k] >= es.values[k - 1]);
  }
}

TEST_CASE("eigenvector residual and phase convention") {
  TestRng rng(22);
  const ComplexMatrix m = random_hermitian(rng, 5, 2.0);
  const EigenSystem es = eig_hermitian(m);
  for (int k = 0; k < 5; ++k) {
    const Vector v = es.eigenvector(k);
    Vector mv = matvec(m, v);
    double resid = 0.0;
    for (int r = 0; r < 5; ++r) resid = std::max(resid, std::abs(mv[r] - es.values[k] * v[r]));
    CHECK(resid < 1e-10);
    // largest-magnitude component is real and non-negative
    int pivot = 0;
    for (int r = 1; r < 5; ++r)
      if (std::abs(v[r]) > std::abs(v[pivot])) pivot = r;
    CHECK(std::abs(v[pivot].imag()) < 1e-12);
    CHECK(v[pivot].real() >= 0.0);
  }
}

TEST_CASE("degenerate cluster stays orthonormal") {
  ComplexMatrix m(3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  m(0, 1) = Complex(0.0, 1e-13);
  m(1, 0) = Complex(0.0, -1e-13);
  const EigenSystem es = eig_hermitian(m);
  CHECK(unitarity_defect(es.vectors) < 1e-12);
  CHECK(es.values[0] == doctest::Approx(1.0));
  CHECK(es.values[1] == doctest::Approx(1.0));
  CHECK(es.values[2] == doctest::Approx(2.0));
}

TEST_CASE("unitary evolution basics") {
  TestRng rng(23);
  const ComplexMatrix h = random_hermitian(rng, 4, 2.0);
  const ComplexMatrix rho0 = testing::random_state(rng, 4);

  SUBCASE("t = 0 is the identity map") {
    CHECK(max_abs_diff(evolve_unitary(h, rho0, 0.0), rho0) < 1e-14);
  }
  SUBCASE("commuting evolution leaves a diagonal state alone") {
    ComplexMatrix diag(2);
    diag(0, 0) = 0.3;
    diag(1, 1) = 0.7;
    CHECK(max_abs_diff(evolve_unitary(pauli_z(), diag, 2.7), diag) < 1e-12);
  }
  SUBCASE("trace and spectrum are preserved") {
    const ComplexMatrix rho_t = evolve_unitary(h, rho0, 1.7);
    CHECK(std::abs(rho_t.trace().real() - 1.0) < 1e-12);
    const auto before = eig_hermitian(rho0).values;
    const auto after = eig_hermitian(rho_t).values;
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(std::abs(before[k] - after[k]) < 1e-10);
    }
  }
  SUBCASE("matches an independent matrix exponential") {
    const ComplexMatrix u = testing::expm_unitary(h, 1.3);
    const ComplexMatrix expected = (u * rho0 * u.adjoint()).hermitian_part();
    CHECK(max_abs_diff(evolve_unitary(h, rho0, 1.3), expected) < 1e-11);
  }
}
