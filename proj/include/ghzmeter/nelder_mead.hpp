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

#ifndef GHZMETER_NELDER_MEAD_HPP
#define GHZMETER_NELDER_MEAD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace ghzmeter {

struct NelderMeadOptions {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  /// Edge length of the initial axis-aligned simplex.
  double initial_step = 0.25;
  /// Stop once every vertex lies within this distance of the best vertex.
  double diameter_tol = 1e-10;
  int max_iterations = 2000;
};

template <std::size_t N>
struct NelderMeadResult {
  std::array<double, N> x{};
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// True when the diameter criterion fired before the iteration cap.
  bool converged = false;
};

/// Downhill simplex minimization of `f` starting from `x0`.
///
/// Fully deterministic: ties in the vertex ordering are broken by the
/// original vertex position, so identical inputs give identical outputs.
template <std::size_t N, class F>
NelderMeadResult<N> nelder_mead_minimize(F&& f, const std::array<double, N>& x0,
                                         const NelderMeadOptions& opt = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts{};
  std::array<double, N + 1> vals{};
  NelderMeadResult<N> out;

  auto eval = [&](const Point& p) {
    ++out.evaluations;
    return f(p);
  };

  pts[0] = x0;
  vals[0] = eval(x0);
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += opt.initial_step;
    vals[i + 1] = eval(pts[i + 1]);
  }

  std::array<std::size_t, N + 1> order{};
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::array<Point, N + 1> p2{};
    std::array<double, N + 1> v2{};
    for (std::size_t i = 0; i <= N; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts = p2;
    vals = v2;
  };

  auto diameter = [&] {
    double worst = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < N; ++k) {
        const double d = pts[i][k] - pts[0][k];
        d2 += d * d;
      }
      worst = std::max(worst, std::sqrt(d2));
    }
    return worst;
  };

  auto along = [](const Point& from, const Point& to, double t) {
    Point p{};
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  sort_vertices();
  while (true) {
    if (diameter() < opt.diameter_tol) {
      out.converged = true;
      break;
    }
    if (out.iterations >= opt.max_iterations) break;
    ++out.iterations;

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

    const Point& worst = pts[N];
    const Point xr = along(centroid, worst, -opt.reflection);
    const double fr = eval(xr);

    if (fr < vals[0]) {
      const Point xe = along(centroid, xr, opt.expansion);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[N] = xe;
        vals[N] = fe;
      } else {
        pts[N] = xr;
        vals[N] = fr;
      }
    } else if (fr < vals[N - 1]) {
      pts[N] = xr;
      vals[N] = fr;
    } else {
      bool accepted = false;
      if (fr < vals[N]) {
        const Point xc = along(centroid, xr, opt.contraction);
        const double fc = eval(xc);
        if (fc <= fr) {
          pts[N] = xc;
          vals[N] = fc;
          accepted = true;
        }
      } else {
        const Point xc = along(centroid, worst, opt.contraction);
        const double fc = eval(xc);
        if (fc < vals[N]) {
          pts[N] = xc;
          vals[N] = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t i = 1; i <= N; ++i) {
          pts[i] = along(pts[0], pts[i], opt.shrink);
          vals[i] = eval(pts[i]);
        }
      }
    }
    sort_vertices();
  }

  out.x = pts[0];
  out.f = vals[0];
  return out;
}

}  // namespace ghzmeter

#endif  // GHZMETER_NELDER_MEAD_HPP
