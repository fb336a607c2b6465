// Copyright 2026 The ghzmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GHZMETER_TENSOR_HPP
#define GHZMETER_TENSOR_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ghzmeter {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Max-norm tolerance for exact algebraic identities on small matrices.
inline constexpr double kAlgebraTol = 1e-12;

/// Dense, row-major, double-precision complex matrix.
///
/// Sizes in this library never exceed 125x125 (three qudits with d = 5), so
/// everything is stored densely and products are plain triple loops.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  /// y = M x
  std::vector<cplx> apply(std::span<const cplx> x) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= cplx{-1.0, 0.0}; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_unitary(const ComplexMatrix& m, double tol = kAlgebraTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Directions and frames

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

/// Real unit 3-vector. Construction rejects anything off the unit sphere by
/// more than 1e-12; use `normalized` to project arbitrary nonzero vectors.
class Direction {
 public:
  explicit Direction(const Vec3& v);
  Direction(double x, double y, double z) : Direction(Vec3{x, y, z}) {}

  static Direction normalized(const Vec3& v);
  static Direction x_axis() { return Direction(1.0, 0.0, 0.0); }
  static Direction y_axis() { return Direction(0.0, 1.0, 0.0); }
  static Direction z_axis() { return Direction(0.0, 0.0, 1.0); }

  const Vec3& vec() const { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

 private:
  Vec3 v_;
};

/// Ordered pair of measurement directions with c = n1.n2 and m = n1 x n2.
class OrthoFrame {
 public:
  OrthoFrame(const Direction& n1, const Direction& n2);

  const Direction& n1() const { return n1_; }
  const Direction& n2() const { return n2_; }
  double c() const { return c_; }
  const Vec3& m() const { return m_; }

  bool is_orthogonal(double tol = 1e-10) const { return std::abs(c_) < tol; }

 private:
  Direction n1_;
  Direction n2_;
  double c_;
  Vec3 m_;
};

// ---------------------------------------------------------------------------
// Pauli and Heisenberg-Weyl operators

const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

/// sigma_n = n_x sigma_x + n_y sigma_y + n_z sigma_z
ComplexMatrix spin_observable(const Direction& n);

/// m . sigma for an arbitrary (not necessarily unit) real vector.
ComplexMatrix pauli_vector(const Vec3& m);

/// sigma_na (x) sigma_nb (x) sigma_nc
ComplexMatrix triple_observable(const Direction& na, const Direction& nb,
                                const Direction& nc);

/// Shift X|j> = |j+1 mod d> and clock Z|j> = w^j |j>, w = exp(2 pi i / d).
ComplexMatrix shift_operator(int d);
ComplexMatrix clock_operator(int d);

/// W(p, q) = w^{-pq/2} X^p Z^q.
///
/// For odd d the half is the inverse of 2 mod d, so W(p, q)^d = 1. For even d
/// the phase is tau^{-pq} with tau = exp(i pi / d), a primitive 2d-th root.
/// p and q are reduced mod d first.
ComplexMatrix weyl_operator(int d, int p, int q);

/// Symplectic form p1 q2 - p2 q1 mod d, in [0, d).
int symplectic_form(int d, int p1, int q1, int p2, int q2);

/// exp(2 pi i k / d)
cplx root_of_unity(int d, long long k);

}  // namespace ghzmeter

#endif  // GHZMETER_TENSOR_HPP
