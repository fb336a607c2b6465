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

#ifndef GHZMETER_QUDIT_HPP
#define GHZMETER_QUDIT_HPP

#include <array>
#include <utility>

#include "ghzmeter/states.hpp"
#include "ghzmeter/tensor.hpp"

namespace ghzmeter {

/// Two Heisenberg-Weyl labels g1 = (p1, q1), g2 = (p2, q2) in Z_d^2.
class QuditGenPair {
 public:
  /// Reduces labels mod d; throws std::invalid_argument for d < 2.
  QuditGenPair(int d, std::pair<int, int> g1, std::pair<int, int> g2);

  int d() const { return d_; }
  std::pair<int, int> g1() const { return g1_; }
  std::pair<int, int> g2() const { return g2_; }
  /// <g1, g2> = p1 q2 - p2 q1 mod d.
  int symplectic() const { return symplectic_; }

 private:
  int d_;
  std::pair<int, int> g1_;
  std::pair<int, int> g2_;
  int symplectic_;
};

/// G1 = W1 W2 W2, G2 = W2 W1 W2, G3 = W2 W2 W1, G4 = W1 W1 W1 (tensor
/// products, Wi = W(g_i)).
struct QuditQuad {
  ComplexMatrix g1;
  ComplexMatrix g2;
  ComplexMatrix g3;
  ComplexMatrix g4;
};

QuditQuad build_qudit_quad(const QuditGenPair& pair);

struct QuditFunctionalValue {
  /// <G4> - w^{2<g1,g2>} <G1><G2><G3>
  cplx value;
  double modulus = 0.0;
  std::array<cplx, 4> expectations{};
  /// max-norm of G1 G2 G3 - w^{2<g1,g2>} G4
  double product_residual = 0.0;
};

QuditFunctionalValue eval_Id(const QuantumState& state, const QuditGenPair& pair);

/// || G1 G2 G3 - w^{2<g1,g2>} G4 ||_max for a generator pair.
double qudit_product_residual(const QuditGenPair& pair);

struct QuditScanResult {
  double best_modulus = 0.0;
  cplx best_value;
  std::pair<int, int> best_g1{0, 0};
  std::pair<int, int> best_g2{0, 0};
  int pairs_scanned = 0;
  /// Pairs with |I_d| >= 2 - 1e-9.
  int saturating_pairs = 0;
};

/// Exhaustive scan over all (g1, g2) in Z_d^2 x Z_d^2 with <g1, g2> != 0.
QuditScanResult qudit_scan(const QuantumState& state);

/// Applies the local quarter turn about x on every qubit, so that
/// <Z> on the result equals <Y> on the input and <X> is unchanged.
QuantumState relabel_yz(const QuantumState& state);

}  // namespace ghzmeter

#endif  // GHZMETER_QUDIT_HPP
