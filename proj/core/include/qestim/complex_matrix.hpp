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

#ifndef QESTIM_COMPLEX_MATRIX_HPP
#define QESTIM_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

namespace qestim {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense square complex matrix, row-major. The universal carrier for
/// states, observables and Hamiltonians. Sized for small dimensions
/// (2x2, 4x4; general N allowed). Values are immutable once built by the
/// higher layers and safe to share between threads.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), entries_(dim * dim) {}
  ComplexMatrix(int dim, Vector entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return dim_; }
  const Vector& entries() const { return entries_; }

  Complex& operator()(int r, int c) { return entries_[r * dim_ + c]; }
  const Complex& operator()(int r, int c) const { return entries_[r * dim_ + c]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  ComplexMatrix adjoint() const;
  Complex trace() const;

  /// (M + M^dagger)/2 -- removes round-off drift from a nominally
  /// Hermitian matrix.
  ComplexMatrix hermitian_part() const;

  /// Max |M(j,k) - conj(M(k,j))|.
  double hermiticity_defect() const;
  bool is_hermitian(double tolerance) const;

 private:
  int dim_ = 0;
  Vector entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);

/// Kronecker product, standard layout: (A o B)(i*dB+k, j*dB+l) = A(i,j) B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Which tensor factor a partial trace keeps. A is the outer (row-major
/// leading) factor, B the inner one.
enum class Keep { A, B };

/// Trace out one factor of a (dim_a * dim_b)-dimensional matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Keep keep);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// sqrt(sum |m_jk|^2).
double frobenius_norm(const ComplexMatrix& m);

/// Max |m_jk|; the metric used for elementwise comparisons.
double max_abs(const ComplexMatrix& m);

/// Re Tr(rho * op) -- the expectation value of a Hermitian operator.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

/// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices in the basis (|e>, |g>), sigma_z = diag(1, -1).
const ComplexMatrix& pauli_identity();
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
/// Lowering operator |g><e|.
const ComplexMatrix& sigma_minus();

// State-vector helpers.
Complex inner(const Vector& u, const Vector& v);
Vector matvec(const ComplexMatrix& m, const Vector& v);
/// |u><v| as a matrix.
ComplexMatrix outer(const Vector& u, const Vector& v);
/// |v><v|.
ComplexMatrix projector(const Vector& v);
Vector kron_vec(const Vector& a, const Vector& b);
double norm(const Vector& v);

}  // namespace qestim

#endif  // QESTIM_COMPLEX_MATRIX_HPP
