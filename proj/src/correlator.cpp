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

#include "ghzmeter/correlator.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace ghzmeter {

namespace {

double real_part_checked(cplx v, const char* what) {
  if (std::abs(v.imag()) > kImagResidueTol) {
    std::ostringstream os;
    os << what << ": imaginary residue " << v.imag() << " on a Hermitian expectation";
    throw std::logic_error(os.str());
  }
  return v.real();
}

void require_qubit_triple(const QuantumState& state) {
  if (!state.is_qubit_triple())
    throw StateError("correlators need a three-qubit state (local_dim 2, 3 parties)");
}

// Applies the 2x2 matrix u to qubit `party` (0 = A, most significant) in place.
void apply_local(std::array<cplx, 8>& v, const ComplexMatrix& u, int party) {
  const std::size_t stride = std::size_t{1} << (2 - party);
  for (std::size_t base = 0; base < 8; ++base) {
    if (base & stride) continue;
    const cplx lo = v[base];
    const cplx hi = v[base | stride];
    v[base] = u(0, 0) * lo + u(0, 1) * hi;
    v[base | stride] = u(1, 0) * lo + u(1, 1) * hi;
  }
}

}  // namespace

StabQuad build_quad(const OrthoFrame& frame) {
  const ComplexMatrix s1 = spin_observable(frame.n1());
  const ComplexMatrix s2 = spin_observable(frame.n2());
  return StabQuad{kron(kron(s1, s2), s2), kron(kron(s2, s1), s2), kron(kron(s2, s2), s1),
                  kron(kron(s1, s1), s1), frame};
}

CorrelatorQuad expectations(const StabQuad& quad, const QuantumState& state) {
  require_qubit_triple(state);
  return {real_part_checked(expectation(state, quad.o1), "e1"),
          real_part_checked(expectation(state, quad.o2), "e2"),
          real_part_checked(expectation(state, quad.o3), "e3"),
          real_part_checked(expectation(state, quad.o4), "e4")};
}

cplx local_product_expectation(const QuantumState& state, const ComplexMatrix& a,
                               const ComplexMatrix& b, const ComplexMatrix& c) {
  require_qubit_triple(state);
  if (!state.is_pure()) return expectation(state, kron(kron(a, b), c));
  const auto psi = state.amplitudes();
  std::array<cplx, 8> v{};
  std::copy(psi.begin(), psi.end(), v.begin());
  apply_local(v, a, 0);
  apply_local(v, b, 1);
  apply_local(v, c, 2);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < 8; ++i) acc += std::conj(psi[i]) * v[i];
  return acc;
}

CorrelatorQuad frame_expectations(const QuantumState& state, const OrthoFrame& frame) {
  require_qubit_triple(state);
  const ComplexMatrix s1 = spin_observable(frame.n1());
  const ComplexMatrix s2 = spin_observable(frame.n2());
  return {real_part_checked(local_product_expectation(state, s1, s2, s2), "e1"),
          real_part_checked(local_product_expectation(state, s2, s1, s2), "e2"),
          real_part_checked(local_product_expectation(state, s2, s2, s1), "e3"),
          real_part_checked(local_product_expectation(state, s1, s1, s1), "e4")};
}

IdentityReport verify_identities(const OrthoFrame& frame) {
  const StabQuad q = build_quad(frame);
  const ComplexMatrix s1 = spin_observable(frame.n1());
  const ComplexMatrix s2 = spin_observable(frame.n2());
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix id8 = ComplexMatrix::identity(8);
  const ComplexMatrix ms = pauli_vector(frame.m());
  const double c = frame.c();

  IdentityReport r;

  const ComplexMatrix comm_rhs =
      kron(kron(ms, id2) - kron(id2, ms), id2) * cplx{0.0, 2.0 * c};
  r.commutator = max_abs_diff(commutator(q.o1, q.o2), comm_rhs);

  const ComplexMatrix o123 = q.o1 * q.o2 * q.o3;
  r.product_sum = max_abs_diff(o123 + q.o4, kron(kron(s1, s2), s1) * cplx{2.0 * c});

  r.sandwich = max_abs_diff(s2 * s1 * s2, s2 * cplx{2.0 * c} - s1);

  r.stabiliser = max_abs_diff(o123 * q.o4, -id8);

  const std::array<const ComplexMatrix*, 4> ops{&q.o1, &q.o2, &q.o3, &q.o4};
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      r.pairwise_commutator =
          std::max(r.pairwise_commutator, max_abs(commutator(*ops[i], *ops[j])));
  return r;
}

}  // namespace ghzmeter
