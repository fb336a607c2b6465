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

#include "ghzmeter/functional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ghzmeter {

FunctionalValue eval_I(const QuantumState& state, const OrthoFrame& frame) {
  const CorrelatorQuad e = frame_expectations(state, frame);
  const double value = e.e4 - e.e1 * e.e2 * e.e3;
  return FunctionalValue{value, std::abs(value), e, frame};
}

double mermin_M3(const QuantumState& state, const OrthoFrame& frame) {
  const CorrelatorQuad e = frame_expectations(state, frame);
  return e.e4 - e.e1 - e.e2 - e.e3;
}

int lhv_value(const LhvAssignment& s) {
  const int diag = s.a[0] * s.b[0] * s.c[0];
  const int mixed = (s.a[0] * s.b[1] * s.c[1]) * (s.a[1] * s.b[0] * s.c[1]) *
                    (s.a[1] * s.b[1] * s.c[0]);
  return diag - mixed;
}

LhvReport lhv_oracle() {
  LhvReport report;
  for (unsigned bits = 0; bits < 64; ++bits) {
    auto pm = [bits](unsigned k) { return (bits >> k) & 1u ? -1 : 1; };
    const LhvAssignment s{{pm(0), pm(1)}, {pm(2), pm(3)}, {pm(4), pm(5)}};
    const int mixed = (s.a[0] * s.b[1] * s.c[1]) * (s.a[1] * s.b[0] * s.c[1]) *
                      (s.a[1] * s.b[1] * s.c[0]);
    report.identity_holds = report.identity_holds && mixed == s.a[0] * s.b[0] * s.c[0];
    report.attained.insert(lhv_value(s));
    ++report.assignments;
  }
  return report;
}

double acin_closed_form_mu(double mu) { return 2.0 * mu * (4.0 * mu * mu + 1.0); }

double acin_closed_form(const AcinParams& p) { return acin_closed_form_mu(p.mu()); }

AcinCorrelators acin_correlators(const AcinParams& p) {
  const double t = 2.0 * p.mu();
  return {t, -t, -t, -t};
}

double schmidt_subfamily_I(double beta) {
  const double s = std::sin(2.0 * beta);
  return s * s * s + s;
}

double tau3_relation(double tau3) {
  if (!(tau3 >= 0.0 && tau3 <= 1.0))
    throw std::domain_error("tau3 must lie in [0, 1], got " + std::to_string(tau3));
  return std::sqrt(tau3) * (tau3 + 1.0);
}

double w_reduced_I(double a3, double b3) {
  if (!std::isfinite(a3) || !std::isfinite(b3) || a3 * a3 + b3 * b3 > 1.0 + 1e-12) {
    throw std::domain_error("no orthogonal frame has z-projections (" + std::to_string(a3) +
                            ", " + std::to_string(b3) + ")");
  }
  const double inner = 2.0 / 3.0 - 3.0 * b3 * b3;
  return a3 * (2.0 - 3.0 * a3 * a3) - a3 * a3 * a3 * inner * inner * inner;
}

}  // namespace ghzmeter
