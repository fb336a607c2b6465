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

#include "ghzmeter/qudit.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace ghzmeter {

namespace {

int reduce(int v, int d) {
  const int r = v % d;
  return r < 0 ? r + d : r;
}

cplx product_phase(const QuditGenPair& pair) {
  return root_of_unity(pair.d(), 2LL * pair.symplectic());
}

}  // namespace

QuditGenPair::QuditGenPair(int d, std::pair<int, int> g1, std::pair<int, int> g2) : d_(d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(d));
  g1_ = {reduce(g1.first, d), reduce(g1.second, d)};
  g2_ = {reduce(g2.first, d), reduce(g2.second, d)};
  symplectic_ = symplectic_form(d, g1_.first, g1_.second, g2_.first, g2_.second);
}

QuditQuad build_qudit_quad(const QuditGenPair& pair) {
  const ComplexMatrix w1 = weyl_operator(pair.d(), pair.g1().first, pair.g1().second);
  const ComplexMatrix w2 = weyl_operator(pair.d(), pair.g2().first, pair.g2().second);
  return {kron(kron(w1, w2), w2), kron(kron(w2, w1), w2), kron(kron(w2, w2), w1),
          kron(kron(w1, w1), w1)};
}

double qudit_product_residual(const QuditGenPair& pair) {
  const QuditQuad q = build_qudit_quad(pair);
  return max_abs_diff(q.g1 * q.g2 * q.g3, q.g4 * product_phase(pair));
}

QuditFunctionalValue eval_Id(const QuantumState& state, const QuditGenPair& pair) {
  if (state.local_dim() != pair.d() || state.parties() != 3) {
    throw StateError("qudit functional: state has local_dim " + std::to_string(state.local_dim()) +
                     ", generators have d = " + std::to_string(pair.d()));
  }
  const QuditQuad q = build_qudit_quad(pair);
  QuditFunctionalValue out;
  out.expectations = {expectation(state, q.g1), expectation(state, q.g2),
                      expectation(state, q.g3), expectation(state, q.g4)};
  const auto& e = out.expectations;
  out.value = e[3] - product_phase(pair) * e[0] * e[1] * e[2];
  out.modulus = std::abs(out.value);
  out.product_residual = max_abs_diff(q.g1 * q.g2 * q.g3, q.g4 * product_phase(pair));
  return out;
}

QuditScanResult qudit_scan(const QuantumState& state) {
  const int d = state.local_dim();
  QuditScanResult r;
  bool have_best = false;
  for (int p1 = 0; p1 < d; ++p1)
    for (int q1 = 0; q1 < d; ++q1)
      for (int p2 = 0; p2 < d; ++p2)
        for (int q2 = 0; q2 < d; ++q2) {
          const QuditGenPair pair(d, {p1, q1}, {p2, q2});
          if (pair.symplectic() == 0) continue;
          const auto v = eval_Id(state, pair);
          ++r.pairs_scanned;
          if (v.modulus >= 2.0 - 1e-9) ++r.saturating_pairs;
          if (!have_best || v.modulus > r.best_modulus) {
            have_best = true;
            r.best_modulus = v.modulus;
            r.best_value = v.value;
            r.best_g1 = pair.g1();
            r.best_g2 = pair.g2();
          }
        }
  return r;
}

QuantumState relabel_yz(const QuantumState& state) {
  if (!state.is_qubit_triple()) throw StateError("relabel_yz: expected a three-qubit state");
  const double h = 1.0 / std::numbers::sqrt2;
  // exp(-i pi/4 X): U^dagger Z U = Y, U^dagger X U = X.
  const ComplexMatrix u{{h, cplx{0.0, -h}}, {cplx{0.0, -h}, h}};
  return apply_local_unitaries(state, u, u, u);
}

}  // namespace ghzmeter
