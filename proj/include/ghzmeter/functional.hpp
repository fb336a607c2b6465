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

#ifndef GHZMETER_FUNCTIONAL_HPP
#define GHZMETER_FUNCTIONAL_HPP

#include <array>
#include <cstdint>
#include <set>

#include "ghzmeter/correlator.hpp"
#include "ghzmeter/states.hpp"

namespace ghzmeter {

/// I(n1, n2) = e4 - e1 e2 e3 together with the correlators it came from.
struct FunctionalValue {
  double value = 0.0;
  double modulus = 0.0;
  CorrelatorQuad correlators;
  OrthoFrame frame;
};

/// Evaluates I on any pair of unit directions; orthogonality is not required.
FunctionalValue eval_I(const QuantumState& state, const OrthoFrame& frame);

/// Linear comparison functional M3 = e4 - e1 - e2 - e3 in the frame's axes.
double mermin_M3(const QuantumState& state, const OrthoFrame& frame);

// ---------------------------------------------------------------------------
// Local hidden variables

/// One deterministic assignment of +-1 outcomes to A, B, C at n1 and n2.
struct LhvAssignment {
  std::array<int, 2> a{1, 1};
  std::array<int, 2> b{1, 1};
  std::array<int, 2> c{1, 1};
};

/// Deterministic I = [A1 B1 C1] - [A1 B2 C2][A2 B1 C2][A2 B2 C1].
int lhv_value(const LhvAssignment& s);

struct LhvReport {
  std::set<int> attained;
  int assignments = 0;
  /// Product of the three mixed terms equalled A1 B1 C1 every time.
  bool identity_holds = true;
};

/// Exhaustive enumeration of all 2^6 assignments.
LhvReport lhv_oracle();

// ---------------------------------------------------------------------------
// Closed forms on canonical families

/// 2 mu (4 mu^2 + 1) with mu = l0 l4; the value of I(x, y) on make_acin(p).
double acin_closed_form(const AcinParams& p);
double acin_closed_form_mu(double mu);

struct AcinCorrelators {
  double xxx = 0.0;
  double xyy = 0.0;
  double yxy = 0.0;
  double yyx = 0.0;
};

/// (2 mu, -2 mu, -2 mu, -2 mu); no dependence on l1, l2, l3 or phi.
AcinCorrelators acin_correlators(const AcinParams& p);

/// sin^3(2 beta) + sin(2 beta) for cos(beta)|000> + sin(beta)|111>.
double schmidt_subfamily_I(double beta);

/// sqrt(tau3) (tau3 + 1); throws std::domain_error outside [0, 1].
double tau3_relation(double tau3);

/// I on the W state for an orthogonal frame with z-projections a3 = z.n1
/// and b3 = z.n2: a3 (2 - 3 a3^2) - a3^3 (2/3 - 3 b3^2)^3.
/// Throws std::domain_error when a3^2 + b3^2 > 1 (no such frame exists).
double w_reduced_I(double a3, double b3);

}  // namespace ghzmeter

#endif  // GHZMETER_FUNCTIONAL_HPP
