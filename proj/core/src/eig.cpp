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

#include "qestim/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qestim/errors.hpp"
#include "qestim/tolerances.hpp"

namespace qestim {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p,q): a phase factor
// D = diag(1, e^{-i phi}) that makes the pivot real, composed with the
// classic real rotation G(c, s); phi is the phase of a(p,q). Applied as
// A <- R^dagger A R, V <- V R with R = D G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;        // e^{i phi}
  const Complex cph = std::conj(phase);   // e^{-i phi}

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (app - aqq) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = a.dim();
  // A <- A R : col_p' = c col_p + s e^{-i phi} col_q ; col_q' = -s col_p + c e^{-i phi} col_q
  for (int k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp + s * cph * akq;
    a(k, q) = -s * akp + c * cph * akq;
  }
  // A <- R^dagger A : row_p' = c row_p + s e^{i phi} row_q ; row_q' = -s row_p + c e^{i phi} row_q
  for (int k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk + s * phase * aqk;
    a(q, k) = -s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = Complex(a(p, p).real(), 0.0);
  a(q, q) = Complex(a(q, q).real(), 0.0);
  // V <- V R
  for (int k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp + s * cph * vkq;
    v(k, q) = -s * vkp + c * cph * vkq;
  }
}

// Make the first component of largest magnitude real and non-negative.
void fix_column_phase(ComplexMatrix& v, int col) {
  const int n = v.dim();
  int pivot = 0;
  double best = std::abs(v(0, col));
  for (int r = 1; r < n; ++r) {
    const double m = std::abs(v(r, col));
    if (m > best) {
      best = m;
      pivot = r;
    }
  }
  if (best == 0.0) return;
  const Complex rot = std::conj(v(pivot, col)) / best;
  for (int r = 0; r < n; ++r) v(r, col) *= rot;
  v(pivot, col) = Complex(std::abs(v(pivot, col)), 0.0);
}

void orthonormalize_cluster(ComplexMatrix& v, const std::vector<int>& cols) {
  const int n = v.dim();
  for (std::size_t a = 0; a < cols.size(); ++a) {
    const int ca = cols[a];
    for (std::size_t b = 0; b < a; ++b) {
      const int cb = cols[b];
      Complex ov = 0.0;
      for (int r = 0; r < n; ++r) ov += std::conj(v(r, cb)) * v(r, ca);
      for (int r = 0; r < n; ++r) v(r, ca) -= ov * v(r, cb);
    }
    double nn = 0.0;
    for (int r = 0; r < n; ++r) nn += std::norm(v(r, ca));
    nn = std::sqrt(nn);
    for (int r = 0; r < n; ++r) v(r, ca) /= nn;
  }
}

}  // namespace

Vector EigenSystem::eigenvector(int k) const {
  Vector out(vectors.dim());
  for (int r = 0; r < vectors.dim(); ++r) out[r] = vectors(r, k);
  return out;
}

std::vector<std::vector<int>> cluster_indices(const std::vector<double>& values, double gap) {
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (clusters.empty() || values[i] - values[clusters.back().back()] > gap) {
      clusters.push_back({i});
    } else {
      clusters.back().push_back(i);
    }
  }
  return clusters;
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  if (!m.is_hermitian(tol::hermitian)) {
    throw NonHermitian("eig_hermitian: defect " + std::to_string(m.hermiticity_defect()));
  }
  const int n = m.dim();
  ComplexMatrix a = m.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = tol::jacobi_off_diagonal * std::max(1.0, frobenius_norm(m));
  constexpr int max_sweeps = 100;
  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > max_sweeps) {
      throw Error("eig_hermitian: Jacobi iteration did not converge");
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  for (const auto& cluster : cluster_indices(out.values, tol::cluster)) {
    if (cluster.size() > 1) orthonormalize_cluster(out.vectors, cluster);
  }
  for (int k = 0; k < n; ++k) fix_column_phase(out.vectors, k);
  return out;
}

ComplexMatrix propagator(const ComplexMatrix& hamiltonian, double t) {
  const EigenSystem es = eig_hermitian(hamiltonian);
  const int n = hamiltonian.dim();
  std::vector<Complex> phases(n);
  for (int k = 0; k < n; ++k) phases[k] = std::exp(Complex(0.0, -es.values[k] * t));
  ComplexMatrix u(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k)
        s += es.vectors(r, k) * phases[k] * std::conj(es.vectors(c, k));
      u(r, c) = s;
    }
  return u;
}

ComplexMatrix evolve_unitary(const ComplexMatrix& hamiltonian, const ComplexMatrix& rho0,
                             double t) {
  if (!rho0.is_hermitian(tol::hermitian)) {
    throw NonHermitian("evolve_unitary: rho0 is not Hermitian");
  }
  const ComplexMatrix u = propagator(hamiltonian, t);
  return (u * rho0 * u.adjoint()).hermitian_part();
}

}  // namespace qestim
