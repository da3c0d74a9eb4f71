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

#include "qestim/complex_matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qestim/errors.hpp"

namespace qestim {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()) + " differ");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim, Vector entries) : dim_(dim), entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != dim_ * dim_) {
    throw DimensionMismatch("ComplexMatrix: entry count " + std::to_string(entries_.size()) +
                            " does not match dim " + std::to_string(dim_));
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "add");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "subtract");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
  return out;
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  return hermiticity_defect() <= tolerance;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "multiply");
  const int n = a.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= Complex(s, 0.0); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Keep keep) {
  if (dim_a * dim_b != m.dim()) {
    throw DimensionMismatch("partial_trace: " + std::to_string(dim_a) + "x" +
                            std::to_string(dim_b) + " does not factor dim " +
                            std::to_string(m.dim()));
  }
  if (keep == Keep::A) {
    ComplexMatrix out(dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out(dim_b);
  for (int k = 0; k < dim_b; ++k)
    for (int l = 0; l < dim_b; ++l)
      for (int i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& e : m.entries()) sum += std::norm(e);
  return std::sqrt(sum);
}

double max_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const auto& e : m.entries()) worst = std::max(worst, std::abs(e));
  return worst;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  return trace_product(rho, op).real();
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_product");
  Complex t = 0.0;
  const int n = a.dim();
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) t += a(r, k) * b(k, r);
  return t;
}

namespace {
ComplexMatrix make2(Complex a, Complex b, Complex c, Complex d) {
  return ComplexMatrix(2, {a, b, c, d});
}
}  // namespace

const ComplexMatrix& pauli_identity() {
  static const ComplexMatrix m = make2(1, 0, 0, 1);
  return m;
}
const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = make2(0, 1, 1, 0);
  return m;
}
const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = make2(0, Complex(0, -1), Complex(0, 1), 0);
  return m;
}
const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = make2(1, 0, 0, -1);
  return m;
}
const ComplexMatrix& sigma_minus() {
  static const ComplexMatrix m = make2(0, 0, 1, 0);
  return m;
}

Complex inner(const Vector& u, const Vector& v) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

Vector matvec(const ComplexMatrix& m, const Vector& v) {
  const int n = m.dim();
  Vector out(n);
  for (int r = 0; r < n; ++r) {
    Complex s = 0.0;
    for (int c = 0; c < n; ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

ComplexMatrix outer(const Vector& u, const Vector& v) {
  const int n = static_cast<int>(u.size());
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = u[r] * std::conj(v[c]);
  return out;
}

ComplexMatrix projector(const Vector& v) { return outer(v, v); }

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

}  // namespace qestim
