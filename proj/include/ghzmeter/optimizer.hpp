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

#ifndef GHZMETER_OPTIMIZER_HPP
#define GHZMETER_OPTIMIZER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ghzmeter/functional.hpp"
#include "ghzmeter/nelder_mead.hpp"
#include "ghzmeter/states.hpp"

namespace ghzmeter {

/// ZYZ Euler angles of a rotation R; the frame is (R x, R y).
struct FrameAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Orthonormal by construction for any finite angles.
OrthoFrame frame_from_angles(const FrameAngles& a);

/// Angles of a Haar-random rotation.
FrameAngles random_frame_angles(Rng& rng);

struct OptimizerConfig {
  int restarts = 300;
  std::uint64_t seed = 0;
  NelderMeadOptions nelder_mead{};
};

/// Agreement window used to count restarts that landed on the incumbent.
inline constexpr double kRestartAgreementTol = 1e-8;

struct OptimizationResult {
  double best_value = 0.0;  ///< max |I| found
  OrthoFrame best_frame{Direction::x_axis(), Direction::y_axis()};
  FrameAngles best_angles{};
  double e_ghz = 0.0;  ///< best_value / 2
  int restarts = 0;
  std::uint64_t seed = 0;
  long long iterations_total = 0;
  int converged_restarts = 0;  ///< simplex collapsed before the iteration cap
  int agreeing_restarts = 0;   ///< within kRestartAgreementTol of best_value
  std::vector<double> restart_values;  ///< per-restart |I|, in seed order
};

/// Multistart Nelder-Mead maximization of |I| over orthonormal frames.
///
/// Initial rotations are drawn Haar-uniformly from a generator seeded with
/// config.seed, in restart order, before any optimization runs. Restarts
/// then execute in parallel (OpenMP) and are merged in restart order, so
/// the result is bit-identical to maximize_I_serial.
OptimizationResult maximize_I(const QuantumState& state, const OptimizerConfig& config);

/// Single-threaded reference for maximize_I.
OptimizationResult maximize_I_serial(const QuantumState& state, const OptimizerConfig& config);

/// Half of the maximized |I|.
double e_ghz(const QuantumState& state, const OptimizerConfig& config);

// ---------------------------------------------------------------------------

/// Analytic maximization of |f(u, v)|, f = u^3 (2/3 - 3 v^2)^3 - u (2 - 3 u^2),
/// on the disc u^2 + v^2 <= 1 (f = -I_W with u = z.n1, v = z.n2).
struct WAnalyticMax {
  double value = 0.0;
  std::vector<std::pair<double, double>> argmax;
  double branch_v0 = 0.0;       ///< max |f| on v = 0
  double branch_v2 = 0.0;       ///< max |f| on v^2 = 2/9
  double branch_boundary = 0.0; ///< max |f| on u^2 + v^2 = 1
  double branch_u0 = 0.0;       ///< max |f| on u = 0 (identically zero)
  double grid_max = 0.0;        ///< dense interior grid, as a cross-check
};

WAnalyticMax w_analytic_max();

// ---------------------------------------------------------------------------

struct ConvexityPoint {
  double p = 0.0;
  double e_mixture = 0.0;
  double e_chord = 0.0;       ///< p E(rho1) + (1 - p) E(rho2)
  double violation = 0.0;     ///< e_mixture - e_chord
};

inline constexpr double kConvexityTol = 1e-4;

struct ConvexityReport {
  double e_rho1 = 0.0;
  double e_rho2 = 0.0;
  std::vector<ConvexityPoint> points;
  double max_violation = 0.0;
  /// Points whose violation exceeds kConvexityTol.
  int breaches = 0;
};

/// Compares E_GHZ along the segment p rho1 + (1 - p) rho2 with its chord.
ConvexityReport convexity_probe(const QuantumState& rho1, const QuantumState& rho2,
                                const std::vector<double>& p_grid, const OptimizerConfig& config);

struct LuInvarianceReport {
  double reference = 0.0;
  std::vector<double> trial_values;
  double max_deviation = 0.0;
};

/// E_GHZ of `state` against E_GHZ of independent Haar local-unitary images.
LuInvarianceReport lu_invariance_check(const QuantumState& state, std::uint64_t seed, int trials,
                                       const OptimizerConfig& config);

// ---------------------------------------------------------------------------

struct MerminResult {
  double best_value = 0.0;  ///< max |M3|
  double signed_value = 0.0;
  Direction n1 = Direction::x_axis();
  Direction n2 = Direction::y_axis();
  int restarts = 0;
  std::uint64_t seed = 0;
};

/// Maximizes |M3| over two independent unit directions (not necessarily
/// orthogonal), each parametrized by polar and azimuthal angles.
MerminResult maximize_M3(const QuantumState& state, const OptimizerConfig& config);

/// Maximizes |M3| over orthonormal frames only.
MerminResult maximize_M3_orthogonal(const QuantumState& state, const OptimizerConfig& config);

// ---------------------------------------------------------------------------

struct SweepSample {
  std::size_t index = 0;
  double sup_abs_I = 0.0;
  int agreeing_restarts = 0;
};

/// sup|I| for `samples` Haar-random pure three-qubit states.
///
/// States are drawn in order from a generator seeded with `seed`; sample k
/// optimizes with a seed derived from (seed, k). Parallel over samples.
std::vector<SweepSample> haar_sweep(int samples, int restarts, std::uint64_t seed);
std::vector<SweepSample> haar_sweep_serial(int samples, int restarts, std::uint64_t seed);

/// Stateless 64-bit mixer used to derive per-task seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ghzmeter

#endif  // GHZMETER_OPTIMIZER_HPP
