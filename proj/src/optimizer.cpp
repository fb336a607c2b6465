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

#include "ghzmeter/optimizer.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ghzmeter {

namespace {

using Angles3 = std::array<double, 3>;
using Angles4 = std::array<double, 4>;

template <std::size_t N, class Objective>
std::vector<NelderMeadResult<N>> run_restarts(const std::vector<std::array<double, N>>& starts,
                                              const Objective& objective,
                                              const NelderMeadOptions& options, bool parallel) {
  std::vector<NelderMeadResult<N>> results(starts.size());
  const auto count = static_cast<long long>(starts.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long r = 0; r < count; ++r) {
      const auto i = static_cast<std::size_t>(r);
      results[i] = nelder_mead_minimize<N>(objective, starts[i], options);
    }
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i)
      results[i] = nelder_mead_minimize<N>(objective, starts[i], options);
  }
  return results;
}

Angles3 to_array(const FrameAngles& a) { return {a.alpha, a.beta, a.gamma}; }
FrameAngles to_angles(const Angles3& a) { return {a[0], a[1], a[2]}; }

OptimizationResult maximize_impl(const QuantumState& state, const OptimizerConfig& config,
                                 bool parallel) {
  if (!state.is_qubit_triple()) throw StateError("maximize_I: expected a three-qubit state");
  if (config.restarts < 1) throw std::invalid_argument("maximize_I: restarts must be >= 1");

  Rng rng(config.seed);
  std::vector<Angles3> starts;
  starts.reserve(static_cast<std::size_t>(config.restarts));
  for (int r = 0; r < config.restarts; ++r) starts.push_back(to_array(random_frame_angles(rng)));

  auto objective = [&state](const Angles3& x) {
    return -eval_I(state, frame_from_angles(to_angles(x))).modulus;
  };
  const auto runs = run_restarts<3>(starts, objective, config.nelder_mead, parallel);

  OptimizationResult out;
  out.restarts = config.restarts;
  out.seed = config.seed;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out.restart_values.push_back(-runs[i].f);
    out.iterations_total += runs[i].iterations;
    if (runs[i].converged) ++out.converged_restarts;
    if (runs[i].f < runs[best].f) best = i;
  }
  out.best_angles = to_angles(runs[best].x);
  out.best_frame = frame_from_angles(out.best_angles);
  out.best_value = -runs[best].f;
  out.e_ghz = out.best_value / 2.0;
  for (const double v : out.restart_values)
    if (v >= out.best_value - kRestartAgreementTol) ++out.agreeing_restarts;
  return out;
}

Direction direction_from_polar(double theta, double phi) {
  return Direction::normalized(
      {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
}

double abs_f_w(double u, double v) {
  const double inner = 2.0 / 3.0 - 3.0 * v * v;
  return std::abs(u * u * u * inner * inner * inner - u * (2.0 - 3.0 * u * u));
}

}  // namespace

OrthoFrame frame_from_angles(const FrameAngles& a) {
  const double ca = std::cos(a.alpha), sa = std::sin(a.alpha);
  const double cb = std::cos(a.beta), sb = std::sin(a.beta);
  const double cg = std::cos(a.gamma), sg = std::sin(a.gamma);
  // Columns 0 and 1 of Rz(alpha) Ry(beta) Rz(gamma).
  const Vec3 n1{ca * cb * cg - sa * sg, sa * cb * cg + ca * sg, -sb * cg};
  const Vec3 n2{-ca * cb * sg - sa * cg, -sa * cb * sg + ca * cg, sb * sg};
  return OrthoFrame(Direction::normalized(n1), Direction::normalized(n2));
}

FrameAngles random_frame_angles(Rng& rng) {
  // Uniform unit quaternion -> rotation matrix -> ZYZ angles.
  std::normal_distribution<double> gauss;
  double w = gauss(rng), x = gauss(rng), y = gauss(rng), z = gauss(rng);
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  const double r02 = 2.0 * (x * z + w * y);
  const double r12 = 2.0 * (y * z - w * x);
  const double r20 = 2.0 * (x * z - w * y);
  const double r21 = 2.0 * (y * z + w * x);
  const double r22 = 1.0 - 2.0 * (x * x + y * y);
  return {std::atan2(r12, r02), std::acos(std::clamp(r22, -1.0, 1.0)), std::atan2(r21, -r20)};
}

OptimizationResult maximize_I(const QuantumState& state, const OptimizerConfig& config) {
  return maximize_impl(state, config, true);
}

OptimizationResult maximize_I_serial(const QuantumState& state, const OptimizerConfig& config) {
  return maximize_impl(state, config, false);
}

double e_ghz(const QuantumState& state, const OptimizerConfig& config) {
  return maximize_I(state, config).e_ghz;
}

// ---------------------------------------------------------------------------

WAnalyticMax w_analytic_max() {
  WAnalyticMax out;
  std::vector<std::pair<double, double>> candidates;

  // v = 0: f = (89/27) u^3 - 2u, stationary at u^2 = 18/89, else the ends.
  for (const double u : {-1.0, 1.0, -std::sqrt(18.0 / 89.0), std::sqrt(18.0 / 89.0)}) {
    out.branch_v0 = std::max(out.branch_v0, abs_f_w(u, 0.0));
    candidates.emplace_back(u, 0.0);
  }

  // v^2 = 2/9: f = -u (2 - 3u^2) on u^2 <= 7/9, stationary at u^2 = 2/9.
  const double v2 = std::sqrt(2.0 / 9.0);
  for (const double u : {std::sqrt(2.0 / 9.0), std::sqrt(7.0 / 9.0)})
    for (const double su : {-1.0, 1.0})
      for (const double sv : {-1.0, 1.0}) {
        out.branch_v2 = std::max(out.branch_v2, abs_f_w(su * u, sv * v2));
        candidates.emplace_back(su * u, sv * v2);
      }

  // u = 0: f vanishes identically.
  out.branch_u0 = 0.0;

  // Boundary u^2 + v^2 = 1: one-dimensional, so a fine grid plus
  // golden-section refinement on the best cell is exhaustive enough.
  constexpr int kBoundaryGrid = 20000;
  auto boundary = [](double u) { return abs_f_w(u, std::sqrt(std::max(0.0, 1.0 - u * u))); };
  int best_k = 0;
  for (int k = 0; k <= kBoundaryGrid; ++k) {
    const double u = -1.0 + 2.0 * k / kBoundaryGrid;
    if (boundary(u) > boundary(-1.0 + 2.0 * best_k / kBoundaryGrid)) best_k = k;
  }
  double lo = std::max(-1.0, -1.0 + 2.0 * (best_k - 1) / kBoundaryGrid);
  double hi = std::min(1.0, -1.0 + 2.0 * (best_k + 1) / kBoundaryGrid);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double m1 = hi - inv_phi * (hi - lo);
    const double m2 = lo + inv_phi * (hi - lo);
    if (boundary(m1) < boundary(m2)) lo = m1; else hi = m2;
  }
  const double u_star = 0.5 * (lo + hi);
  out.branch_boundary = std::max({boundary(u_star), boundary(-1.0), boundary(1.0)});
  for (const double u : {u_star, -u_star, -1.0, 1.0})
    for (const double sv : {-1.0, 1.0})
      candidates.emplace_back(u, sv * std::sqrt(std::max(0.0, 1.0 - u * u)));

  constexpr int kDiscGrid = 600;
  for (int i = 0; i <= kDiscGrid; ++i)
    for (int j = 0; j <= kDiscGrid; ++j) {
      const double u = -1.0 + 2.0 * i / kDiscGrid;
      const double v = -1.0 + 2.0 * j / kDiscGrid;
      if (u * u + v * v > 1.0) continue;
      out.grid_max = std::max(out.grid_max, abs_f_w(u, v));
    }

  out.value = std::max({out.branch_v0, out.branch_v2, out.branch_boundary, out.branch_u0});
  for (const auto& [u, v] : candidates) {
    if (abs_f_w(u, v) < out.value - 1e-12) continue;
    // The boundary search lands within ~1e-7 of the corner points.
    const double vv = std::abs(v) < 1e-6 ? 0.0 : v;
    const bool seen = std::any_of(out.argmax.begin(), out.argmax.end(), [&](const auto& p) {
      return std::abs(p.first - u) < 1e-6 && std::abs(p.second - vv) < 1e-6;
    });
    if (!seen) out.argmax.emplace_back(u, vv);
  }
  std::sort(out.argmax.begin(), out.argmax.end());
  return out;
}

// ---------------------------------------------------------------------------

ConvexityReport convexity_probe(const QuantumState& rho1, const QuantumState& rho2,
                                const std::vector<double>& p_grid, const OptimizerConfig& config) {
  ConvexityReport out;
  out.e_rho1 = e_ghz(rho1, config);
  out.e_rho2 = e_ghz(rho2, config);
  for (const double p : p_grid) {
    ConvexityPoint pt;
    pt.p = p;
    pt.e_mixture = e_ghz(mixture(p, rho1, rho2), config);
    pt.e_chord = p * out.e_rho1 + (1.0 - p) * out.e_rho2;
    pt.violation = pt.e_mixture - pt.e_chord;
    out.max_violation = std::max(out.max_violation, pt.violation);
    if (pt.violation > kConvexityTol) ++out.breaches;
    out.points.push_back(pt);
  }
  return out;
}

LuInvarianceReport lu_invariance_check(const QuantumState& state, std::uint64_t seed, int trials,
                                       const OptimizerConfig& config) {
  LuInvarianceReport out;
  out.reference = e_ghz(state, config);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const ComplexMatrix ua = haar_random_unitary(2, rng);
    const ComplexMatrix ub = haar_random_unitary(2, rng);
    const ComplexMatrix uc = haar_random_unitary(2, rng);
    const double v = e_ghz(apply_local_unitaries(state, ua, ub, uc), config);
    out.trial_values.push_back(v);
    out.max_deviation = std::max(out.max_deviation, std::abs(v - out.reference));
  }
  return out;
}

// ---------------------------------------------------------------------------

MerminResult maximize_M3(const QuantumState& state, const OptimizerConfig& config) {
  if (!state.is_qubit_triple()) throw StateError("maximize_M3: expected a three-qubit state");
  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Angles4> starts;
  for (int r = 0; r < config.restarts; ++r) {
    Angles4 s{};
    for (int k = 0; k < 2; ++k) {
      s[2 * k] = std::acos(1.0 - 2.0 * unit(rng));
      s[2 * k + 1] = 2.0 * std::numbers::pi * unit(rng);
    }
    starts.push_back(s);
  }
  auto frame_of = [](const Angles4& x) {
    return OrthoFrame(direction_from_polar(x[0], x[1]), direction_from_polar(x[2], x[3]));
  };
  auto objective = [&](const Angles4& x) { return -std::abs(mermin_M3(state, frame_of(x))); };
  const auto runs = run_restarts<4>(starts, objective, config.nelder_mead, true);

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].f < runs[best].f) best = i;
  const OrthoFrame f = frame_of(runs[best].x);
  return {-runs[best].f, mermin_M3(state, f), f.n1(), f.n2(), config.restarts, config.seed};
}

MerminResult maximize_M3_orthogonal(const QuantumState& state, const OptimizerConfig& config) {
  if (!state.is_qubit_triple()) throw StateError("maximize_M3: expected a three-qubit state");
  Rng rng(config.seed);
  std::vector<Angles3> starts;
  for (int r = 0; r < config.restarts; ++r) starts.push_back(to_array(random_frame_angles(rng)));
  auto objective = [&](const Angles3& x) {
    return -std::abs(mermin_M3(state, frame_from_angles(to_angles(x))));
  };
  const auto runs = run_restarts<3>(starts, objective, config.nelder_mead, true);
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].f < runs[best].f) best = i;
  const OrthoFrame f = frame_from_angles(to_angles(runs[best].x));
  return {-runs[best].f, mermin_M3(state, f), f.n1(), f.n2(), config.restarts, config.seed};
}

// ---------------------------------------------------------------------------

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over seed + golden-ratio stride.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::vector<SweepSample> sweep_impl(int samples, int restarts, std::uint64_t seed, bool parallel) {
  if (samples < 1) throw std::invalid_argument("haar_sweep: samples must be >= 1");
  Rng rng(seed);
  std::vector<QuantumState> states;
  states.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) states.push_back(haar_random_pure(2, rng));

  std::vector<SweepSample> out(states.size());
  auto one = [&](std::size_t k) {
    const OptimizerConfig cfg{restarts, derive_seed(seed, k), {}};
    const auto r = maximize_I_serial(states[k], cfg);
    out[k] = {k, r.best_value, r.agreeing_restarts};
  };
  const auto count = static_cast<long long>(states.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < count; ++k) one(static_cast<std::size_t>(k));
  } else {
    for (long long k = 0; k < count; ++k) one(static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace

std::vector<SweepSample> haar_sweep(int samples, int restarts, std::uint64_t seed) {
  return sweep_impl(samples, restarts, seed, true);
}

std::vector<SweepSample> haar_sweep_serial(int samples, int restarts, std::uint64_t seed) {
  return sweep_impl(samples, restarts, seed, false);
}

}  // namespace ghzmeter
