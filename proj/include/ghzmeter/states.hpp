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

#ifndef GHZMETER_STATES_HPP
#define GHZMETER_STATES_HPP

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzmeter/tensor.hpp"

namespace ghzmeter {

/// Seedable generator used by every stochastic routine.
using Rng = std::mt19937_64;

/// A state failed one of its defining invariants (normalization, trace,
/// hermiticity, positivity, dimension).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StateKind { pure, mixed };

/// Pure amplitude vector or density matrix on (C^d)^{(x) parties}.
///
/// Basis index for three parties is d^2 i + d j + k for |ijk>, party A first.
/// Instances are validated on construction and immutable afterwards.
class QuantumState {
 public:
  static constexpr double kNormTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kPositivityFloor = -1e-10;

  static QuantumState pure(int local_dim, std::vector<cplx> amplitudes, int parties = 3);
  static QuantumState mixed(int local_dim, ComplexMatrix density, int parties = 3);

  int local_dim() const { return local_dim_; }
  int parties() const { return parties_; }
  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::pure; }
  bool is_qubit_triple() const { return local_dim_ == 2 && parties_ == 3; }
  std::size_t dimension() const { return dimension_; }

  std::span<const cplx> amplitudes() const;
  const ComplexMatrix& density() const;

  /// |psi><psi| for pure states, the stored matrix otherwise.
  ComplexMatrix to_density() const;

 private:
  QuantumState(int local_dim, int parties, StateKind kind);

  int local_dim_;
  int parties_;
  std::size_t dimension_;
  StateKind kind_;
  std::vector<cplx> amplitudes_;
  ComplexMatrix density_;
};

/// <psi|O|psi> or Tr[O rho].
cplx expectation(const QuantumState& state, const ComplexMatrix& op);

/// |<a|b>|^2 for two pure states of the same shape.
double fidelity(const QuantumState& a, const QuantumState& b);

// ---------------------------------------------------------------------------
// Acin canonical family

/// Coordinates of l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct AcinParams {
  std::array<double, 5> lambda{};
  double phi = 0.0;

  /// Validates nonnegativity, sum of squares = 1 (1e-12) and phi in [0, pi].
  static AcinParams make(std::array<double, 5> lambda, double phi);

  double mu() const { return lambda[0] * lambda[4]; }
  double tau3() const { return 4.0 * mu() * mu(); }
};

/// Random valid parameters: |Gaussian| lambdas normalized, phi uniform on
/// [0, pi].
AcinParams random_acin_params(Rng& rng);

/// l0 = l4 = sqrt(mu), remaining weight spread evenly over l1..l3.
/// mu must lie in [0, 1/2].
AcinParams acin_params_for_mu(double mu);

// ---------------------------------------------------------------------------
// Named states

QuantumState make_ghz(int d = 2);
QuantumState make_w();
QuantumState make_acin(const AcinParams& p);
QuantumState make_ghz_basis_element(int i, int j, int k, int sign);
QuantumState maximally_mixed(int d = 2);
QuantumState basis_state(int d, int parties, std::size_t index);

/// (|00> + |11>)/sqrt(2) as a two-party state.
QuantumState bell_phi_plus();

/// Single-qubit pure state with the given Bloch direction.
QuantumState qubit_from_bloch(const Direction& n);

enum class Cut { A_BC, B_AC, C_AB };

Cut parse_cut(const std::string& label);
std::string to_string(Cut cut);

/// rho_single (x) rho_pair placed on the parties named by `cut`.
QuantumState make_biseparable(Cut cut, const QuantumState& single, const QuantumState& pair);

/// rho_A (x) rho_B (x) rho_C from three single-party states.
QuantumState make_product(const QuantumState& a, const QuantumState& b, const QuantumState& c);

/// Tensor product of two states with the same local dimension.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

/// Reorder parties: output party k is input party perm[k].
QuantumState permute_parties(const QuantumState& state, std::span<const int> perm);

/// p rho1 + (1 - p) rho2 as a mixed state.
QuantumState mixture(double p, const QuantumState& rho1, const QuantumState& rho2);

/// (Ua (x) Ub (x) Uc) rho (Ua (x) Ub (x) Uc)^dagger
QuantumState apply_local_unitaries(const QuantumState& state, const ComplexMatrix& ua,
                                   const ComplexMatrix& ub, const ComplexMatrix& uc);

// ---------------------------------------------------------------------------
// Random sampling

/// Normalized standard complex Gaussian vector on (C^d)^{(x) parties}.
QuantumState haar_random_pure(int d, std::uint64_t seed, int parties = 3);
QuantumState haar_random_pure(int d, Rng& rng, int parties = 3);

/// Haar unitary via QR of a Ginibre matrix with phase-fixed diagonal.
ComplexMatrix haar_random_unitary(std::size_t n, Rng& rng);

/// Single-qubit density matrix with Bloch vector uniform in the unit ball.
QuantumState random_qubit_density(Rng& rng);

}  // namespace ghzmeter

#endif  // GHZMETER_STATES_HPP
