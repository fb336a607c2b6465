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

#include "ghzmeter/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ghzmeter {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_shape(int local_dim, int parties) {
  if (local_dim < 2) throw StateError("local_dim must be >= 2, got " + std::to_string(local_dim));
  if (parties < 1 || parties > 3)
    throw StateError("parties must be 1, 2 or 3, got " + std::to_string(parties));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

QuantumState::QuantumState(int local_dim, int parties, StateKind kind)
    : local_dim_(local_dim),
      parties_(parties),
      dimension_(ipow(static_cast<std::size_t>(local_dim), parties)),
      kind_(kind) {}

QuantumState QuantumState::pure(int local_dim, std::vector<cplx> amplitudes, int parties) {
  require_shape(local_dim, parties);
  QuantumState s(local_dim, parties, StateKind::pure);
  if (amplitudes.size() != s.dimension_) {
    throw StateError("amplitude count: expected " + std::to_string(s.dimension_) + ", got " +
                     std::to_string(amplitudes.size()));
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw StateError("amplitudes: non-finite entry");
    norm2 += std::norm(a);
  }
  if (std::abs(std::sqrt(norm2) - 1.0) >= kNormTol)
    throw StateError("normalization: |psi| = " + fmt(std::sqrt(norm2)) + ", expected 1");
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::mixed(int local_dim, ComplexMatrix density, int parties) {
  require_shape(local_dim, parties);
  QuantumState s(local_dim, parties, StateKind::mixed);
  if (density.rows() != s.dimension_ || density.cols() != s.dimension_) {
    throw StateError("density shape: expected " + std::to_string(s.dimension_) + "x" +
                     std::to_string(s.dimension_) + ", got " + std::to_string(density.rows()) +
                     "x" + std::to_string(density.cols()));
  }
  for (const auto& v : density.data())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw StateError("density: non-finite entry");
  if (!is_hermitian(density, kHermitianTol)) throw StateError("hermiticity: rho != rho^dagger");
  const cplx tr = density.trace();
  if (std::abs(tr - cplx{1.0, 0.0}) >= kTraceTol)
    throw StateError("trace: Tr rho = " + fmt(tr.real()) + ", expected 1");
  const auto ev = hermitian_eigenvalues(density);
  if (!ev.empty() && ev.front() < kPositivityFloor)
    throw StateError("positivity: smallest eigenvalue " + fmt(ev.front()));
  s.density_ = std::move(density);
  return s;
}

std::span<const cplx> QuantumState::amplitudes() const {
  if (!is_pure()) throw StateError("amplitudes requested from a mixed state");
  return amplitudes_;
}

const ComplexMatrix& QuantumState::density() const {
  if (is_pure()) throw StateError("density requested from a pure state; use to_density()");
  return density_;
}

ComplexMatrix QuantumState::to_density() const {
  if (!is_pure()) return density_;
  ComplexMatrix rho(dimension_, dimension_);
  for (std::size_t r = 0; r < dimension_; ++r)
    for (std::size_t c = 0; c < dimension_; ++c)
      rho(r, c) = amplitudes_[r] * std::conj(amplitudes_[c]);
  return rho;
}

cplx expectation(const QuantumState& state, const ComplexMatrix& op) {
  const std::size_t n = state.dimension();
  if (op.rows() != n || op.cols() != n) {
    throw StateError("operator shape " + std::to_string(op.rows()) + "x" +
                     std::to_string(op.cols()) + " does not match state dimension " +
                     std::to_string(n));
  }
  cplx acc = 0.0;
  if (state.is_pure()) {
    const auto psi = state.amplitudes();
    for (std::size_t r = 0; r < n; ++r) {
      cplx row = 0.0;
      for (std::size_t c = 0; c < n; ++c) row += op(r, c) * psi[c];
      acc += std::conj(psi[r]) * row;
    }
  } else {
    const auto& rho = state.density();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) acc += op(r, c) * rho(c, r);
  }
  return acc;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  if (x.size() != y.size()) throw StateError("fidelity: dimension mismatch");
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
  return std::norm(overlap);
}

// ---------------------------------------------------------------------------

AcinParams AcinParams::make(std::array<double, 5> lambda, double phi) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!(lambda[i] >= 0.0) || !std::isfinite(lambda[i]))
      throw StateError("acin: lambda" + std::to_string(i) + " must be a nonnegative real");
    sum += lambda[i] * lambda[i];
  }
  if (std::abs(sum - 1.0) >= QuantumState::kNormTol)
    throw StateError("acin: sum of lambda_i^2 = " + fmt(sum) + ", expected 1");
  if (!(phi >= 0.0 && phi <= std::numbers::pi))
    throw StateError("acin: phi = " + fmt(phi) + " outside [0, pi]");
  return AcinParams{lambda, phi};
}

AcinParams random_acin_params(Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::array<double, 5> l{};
  double sum = 0.0;
  for (auto& v : l) {
    v = std::abs(gauss(rng));
    sum += v * v;
  }
  const double n = std::sqrt(sum);
  for (auto& v : l) v /= n;
  return AcinParams::make(l, angle(rng));
}

AcinParams acin_params_for_mu(double mu) {
  if (!(mu >= 0.0 && mu <= 0.5)) throw StateError("acin: mu = " + fmt(mu) + " outside [0, 1/2]");
  const double edge = std::sqrt(mu);
  const double rest = std::sqrt(std::max(0.0, (1.0 - 2.0 * mu) / 3.0));
  return AcinParams::make({edge, rest, rest, rest, edge}, 0.0);
}

// ---------------------------------------------------------------------------

QuantumState make_ghz(int d) {
  require_shape(d, 3);
  const auto n = static_cast<std::size_t>(d);
  std::vector<cplx> amps(n * n * n);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < n; ++j) amps[j * n * n + j * n + j] = a;
  return QuantumState::pure(d, std::move(amps));
}

QuantumState make_w() {
  std::vector<cplx> amps(8);
  const double a = 1.0 / std::sqrt(3.0);
  amps[1] = amps[2] = amps[4] = a;
  return QuantumState::pure(2, std::move(amps));
}

QuantumState make_acin(const AcinParams& p) {
  const AcinParams checked = AcinParams::make(p.lambda, p.phi);
  std::vector<cplx> amps(8);
  amps[0] = checked.lambda[0];
  amps[4] = checked.lambda[1] * std::polar(1.0, checked.phi);
  amps[5] = checked.lambda[2];
  amps[6] = checked.lambda[3];
  amps[7] = checked.lambda[4];
  return QuantumState::pure(2, std::move(amps));
}

QuantumState make_ghz_basis_element(int i, int j, int k, int sign) {
  auto bit = [](int b) {
    if (b != 0 && b != 1) throw StateError("ghz basis: labels must be bits");
    return static_cast<std::size_t>(b);
  };
  if (sign != 1 && sign != -1) throw StateError("ghz basis: sign must be +1 or -1");
  const std::size_t idx = 4 * bit(i) + 2 * bit(j) + bit(k);
  std::vector<cplx> amps(8);
  const double a = 1.0 / std::numbers::sqrt2;
  amps[idx] += a;
  amps[7 - idx] += sign * a;
  return QuantumState::pure(2, std::move(amps));
}

QuantumState maximally_mixed(int d) {
  require_shape(d, 3);
  const std::size_t n = ipow(static_cast<std::size_t>(d), 3);
  return QuantumState::mixed(d, ComplexMatrix::identity(n) * cplx{1.0 / static_cast<double>(n)});
}

QuantumState basis_state(int d, int parties, std::size_t index) {
  require_shape(d, parties);
  std::vector<cplx> amps(ipow(static_cast<std::size_t>(d), parties));
  if (index >= amps.size()) throw StateError("basis_state: index out of range");
  amps[index] = 1.0;
  return QuantumState::pure(d, std::move(amps), parties);
}

QuantumState bell_phi_plus() {
  const double a = 1.0 / std::numbers::sqrt2;
  return QuantumState::pure(2, {a, 0.0, 0.0, a}, 2);
}

QuantumState qubit_from_bloch(const Direction& n) {
  const double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  // Renormalize away the last ulp so the 1e-12 check never trips.
  const double nn = std::sqrt(c * c + s * s);
  return QuantumState::pure(2, {c / nn, std::polar(s / nn, phi)}, 1);
}

Cut parse_cut(const std::string& label) {
  if (label == "A|BC" || label == "A_BC" || label == "a") return Cut::A_BC;
  if (label == "B|AC" || label == "B_AC" || label == "b") return Cut::B_AC;
  if (label == "C|AB" || label == "C_AB" || label == "c") return Cut::C_AB;
  throw StateError("unknown cut '" + label + "' (expected A|BC, B|AC or C|AB)");
}

std::string to_string(Cut cut) {
  switch (cut) {
    case Cut::A_BC: return "A|BC";
    case Cut::B_AC: return "B|AC";
    case Cut::C_AB: return "C|AB";
  }
  return "?";
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  if (a.local_dim() != b.local_dim()) throw StateError("tensor: local dimension mismatch");
  const int parties = a.parties() + b.parties();
  if (parties > 3) throw StateError("tensor: more than three parties");
  if (a.is_pure() && b.is_pure()) {
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    std::vector<cplx> amps;
    amps.reserve(x.size() * y.size());
    for (const auto& u : x)
      for (const auto& v : y) amps.push_back(u * v);
    // Products of normalized vectors can drift by an ulp or two.
    double n2 = 0.0;
    for (const auto& v : amps) n2 += std::norm(v);
    const double n = std::sqrt(n2);
    for (auto& v : amps) v /= n;
    return QuantumState::pure(a.local_dim(), std::move(amps), parties);
  }
  return QuantumState::mixed(a.local_dim(), kron(a.to_density(), b.to_density()), parties);
}

QuantumState permute_parties(const QuantumState& state, std::span<const int> perm) {
  const int parties = state.parties();
  if (static_cast<int>(perm.size()) != parties) throw StateError("permute: wrong arity");
  const auto d = static_cast<std::size_t>(state.local_dim());
  const std::size_t n = state.dimension();

  // new_index(old_index): output digit k equals input digit perm[k].
  std::vector<std::size_t> map(n);
  for (std::size_t old = 0; old < n; ++old) {
    std::array<std::size_t, 3> digits{};
    std::size_t rem = old;
    for (int p = parties - 1; p >= 0; --p) {
      digits[static_cast<std::size_t>(p)] = rem % d;
      rem /= d;
    }
    std::size_t idx = 0;
    for (int k = 0; k < parties; ++k) idx = idx * d + digits[static_cast<std::size_t>(perm[k])];
    map[old] = idx;
  }

  if (state.is_pure()) {
    const auto x = state.amplitudes();
    std::vector<cplx> amps(n);
    for (std::size_t old = 0; old < n; ++old) amps[map[old]] = x[old];
    return QuantumState::pure(state.local_dim(), std::move(amps), parties);
  }
  const auto& rho = state.density();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(map[r], map[c]) = rho(r, c);
  return QuantumState::mixed(state.local_dim(), std::move(out), parties);
}

QuantumState make_biseparable(Cut cut, const QuantumState& single, const QuantumState& pair) {
  if (single.local_dim() != 2 || single.parties() != 1)
    throw StateError("biseparable: single must be a one-qubit state");
  if (pair.local_dim() != 2 || pair.parties() != 2)
    throw StateError("biseparable: pair must be a two-qubit state");
  const QuantumState joined = tensor(single, pair);
  switch (cut) {
    case Cut::A_BC:
      return joined;
    case Cut::B_AC: {
      static constexpr std::array<int, 3> perm{1, 0, 2};
      return permute_parties(joined, perm);
    }
    case Cut::C_AB: {
      static constexpr std::array<int, 3> perm{1, 2, 0};
      return permute_parties(joined, perm);
    }
  }
  throw StateError("biseparable: invalid cut");
}

QuantumState make_product(const QuantumState& a, const QuantumState& b, const QuantumState& c) {
  for (const auto* s : {&a, &b, &c})
    if (s->parties() != 1) throw StateError("product: factors must be single-party states");
  return tensor(tensor(a, b), c);
}

QuantumState mixture(double p, const QuantumState& rho1, const QuantumState& rho2) {
  if (!(p >= 0.0 && p <= 1.0)) throw StateError("mixture: weight outside [0, 1]");
  if (rho1.dimension() != rho2.dimension() || rho1.local_dim() != rho2.local_dim())
    throw StateError("mixture: dimension mismatch");
  ComplexMatrix rho = rho1.to_density() * cplx{p} + rho2.to_density() * cplx{1.0 - p};
  // Re-symmetrize to keep the hermiticity check exact.
  ComplexMatrix sym = (rho + rho.adjoint()) * cplx{0.5};
  return QuantumState::mixed(rho1.local_dim(), std::move(sym), rho1.parties());
}

QuantumState apply_local_unitaries(const QuantumState& state, const ComplexMatrix& ua,
                                   const ComplexMatrix& ub, const ComplexMatrix& uc) {
  if (state.parties() != 3) throw StateError("local unitaries: expected a three-party state");
  const ComplexMatrix u = kron(kron(ua, ub), uc);
  if (u.rows() != state.dimension()) throw StateError("local unitaries: dimension mismatch");
  if (state.is_pure()) {
    auto amps = u.apply(state.amplitudes());
    double n2 = 0.0;
    for (const auto& v : amps) n2 += std::norm(v);
    const double n = std::sqrt(n2);
    for (auto& v : amps) v /= n;
    return QuantumState::pure(state.local_dim(), std::move(amps));
  }
  ComplexMatrix rho = u * state.density() * u.adjoint();
  ComplexMatrix sym = (rho + rho.adjoint()) * cplx{0.5};
  return QuantumState::mixed(state.local_dim(), std::move(sym));
}

// ---------------------------------------------------------------------------

QuantumState haar_random_pure(int d, std::uint64_t seed, int parties) {
  Rng rng(seed);
  return haar_random_pure(d, rng, parties);
}

QuantumState haar_random_pure(int d, Rng& rng, int parties) {
  require_shape(d, parties);
  std::normal_distribution<double> gauss;
  std::vector<cplx> amps(ipow(static_cast<std::size_t>(d), parties));
  double n2 = 0.0;
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = {re, im};
    n2 += re * re + im * im;
  }
  const double n = std::sqrt(n2);
  for (auto& a : amps) a /= n;
  return QuantumState::pure(d, std::move(amps), parties);
}

ComplexMatrix haar_random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss;
  const auto en = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd g(en, en);
  for (Eigen::Index r = 0; r < en; ++r)
    for (Eigen::Index c = 0; c < en; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = {re, im};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < en; ++c) {
    const cplx diag = rmat(c, c);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(c) *= diag / mag;
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < en; ++r)
    for (Eigen::Index c = 0; c < en; ++c)
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = q(r, c);
  return out;
}

QuantumState random_qubit_density(Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  const double len = norm(v);
  const double radius = std::cbrt(unit(rng));
  for (auto& x : v) x *= radius / len;
  ComplexMatrix rho = (ComplexMatrix::identity(2) + pauli_vector(v)) * cplx{0.5};
  return QuantumState::mixed(2, std::move(rho), 1);
}

}  // namespace ghzmeter
