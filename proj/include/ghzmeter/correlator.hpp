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

#ifndef GHZMETER_CORRELATOR_HPP
#define GHZMETER_CORRELATOR_HPP

#include "ghzmeter/states.hpp"
#include "ghzmeter/tensor.hpp"

namespace ghzmeter {

/// The four tripartite observables of a frame (n1, n2):
///   O1 = s1 (x) s2 (x) s2,  O2 = s2 (x) s1 (x) s2,
///   O3 = s2 (x) s2 (x) s1,  O4 = s1 (x) s1 (x) s1,
/// with s_i = sigma_{n_i}. Each is Hermitian with O^2 = 1.
struct StabQuad {
  ComplexMatrix o1;
  ComplexMatrix o2;
  ComplexMatrix o3;
  ComplexMatrix o4;
  OrthoFrame frame;
};

/// e_i = <O_i>, each in [-1, 1].
struct CorrelatorQuad {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
};

/// Imaginary residue above which an expectation of a Hermitian product is
/// treated as a pipeline bug rather than rounding.
inline constexpr double kImagResidueTol = 1e-10;

StabQuad build_quad(const OrthoFrame& frame);

/// Expectations of the materialized quad. Throws StateError for states that
/// are not three qubits and std::logic_error on a non-negligible imaginary part.
CorrelatorQuad expectations(const StabQuad& quad, const QuantumState& state);

/// Same values as expectations(build_quad(frame), state) without forming the
/// 8x8 operators; this is the optimizer's inner loop.
CorrelatorQuad frame_expectations(const QuantumState& state, const OrthoFrame& frame);

/// <a (x) b (x) c> for single-qubit operators a, b, c, applied locally.
cplx local_product_expectation(const QuantumState& state, const ComplexMatrix& a,
                               const ComplexMatrix& b, const ComplexMatrix& c);

/// Max-norm residuals of the operator identities of a frame.
struct IdentityReport {
  /// [O1, O2] - 2ic (m.s (x) 1 - 1 (x) m.s) (x) 1
  double commutator = 0.0;
  /// O1 O2 O3 + O4 - 2c s1 (x) s2 (x) s1
  double product_sum = 0.0;
  /// s2 s1 s2 - (2c s2 - s1)
  double sandwich = 0.0;
  /// O1 O2 O3 O4 + 1; only expected to vanish for orthogonal frames.
  double stabiliser = 0.0;
  /// Largest pairwise commutator among O1..O4.
  double pairwise_commutator = 0.0;
};

IdentityReport verify_identities(const OrthoFrame& frame);

}  // namespace ghzmeter

#endif  // GHZMETER_CORRELATOR_HPP
