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

#include "ghzmeter/tensor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzmeter {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                                " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<cplx> ComplexMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != cols_) throw std::invalid_argument("ComplexMatrix::apply: size mismatch");
  std::vector<cplx> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx acc = 0.0;
    const cplx* row = &data_[r * cols_];
    for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
  return y;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("ComplexMatrix: shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("ComplexMatrix: shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in *");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

double max_abs(const ComplexMatrix& a) {
  double worst = 0.0;
  for (const auto& v : a.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && max_abs_diff(m, m.adjoint()) < tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.is_square() &&
         max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows())) < tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t br = b.rows();
  const std::size_t bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      e(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------------------

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Direction::Direction(const Vec3& v) : v_(v) {
  const double n = norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) >= kAlgebraTol) {
    throw std::invalid_argument("Direction: vector is not unit (norm " + std::to_string(n) + ")");
  }
}

Direction Direction::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("Direction: zero vector");
  return Direction(Vec3{v[0] / n, v[1] / n, v[2] / n});
}

OrthoFrame::OrthoFrame(const Direction& n1, const Direction& n2)
    : n1_(n1), n2_(n2), c_(dot(n1.vec(), n2.vec())), m_(cross(n1.vec(), n2.vec())) {}

// ---------------------------------------------------------------------------

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

ComplexMatrix pauli_vector(const Vec3& m) {
  return ComplexMatrix{{m[2], cplx{m[0], -m[1]}}, {cplx{m[0], m[1]}, -m[2]}};
}

ComplexMatrix spin_observable(const Direction& n) { return pauli_vector(n.vec()); }

ComplexMatrix triple_observable(const Direction& na, const Direction& nb, const Direction& nc) {
  return kron(kron(spin_observable(na), spin_observable(nb)), spin_observable(nc));
}

namespace {

int mod(long long a, int d) {
  const long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("local dimension must be >= 2, got " + std::to_string(d));
}

ComplexMatrix matrix_power(const ComplexMatrix& m, int k) {
  ComplexMatrix out = ComplexMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

cplx root_of_unity(int d, long long k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, d)) / d;
  return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix shift_operator(int d) {
  require_dim(d);
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix x(n, n);
  for (std::size_t j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

ComplexMatrix clock_operator(int d) {
  require_dim(d);
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix z(n, n);
  for (std::size_t j = 0; j < n; ++j) z(j, j) = root_of_unity(d, static_cast<long long>(j));
  return z;
}

ComplexMatrix weyl_operator(int d, int p, int q) {
  require_dim(d);
  p = mod(p, d);
  q = mod(q, d);
  cplx phase;
  if (d % 2 == 1) {
    const int half = (d + 1) / 2;  // inverse of 2 mod d
    phase = root_of_unity(d, -static_cast<long long>(p) * q * half);
  } else {
    const double angle = -std::numbers::pi * static_cast<double>(p * q) / d;
    phase = {std::cos(angle), std::sin(angle)};
  }
  return phase * (matrix_power(shift_operator(d), p) * matrix_power(clock_operator(d), q));
}

int symplectic_form(int d, int p1, int q1, int p2, int q2) {
  require_dim(d);
  return mod(static_cast<long long>(p1) * q2 - static_cast<long long>(p2) * q1, d);
}

}  // namespace ghzmeter
