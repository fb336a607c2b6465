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

// Wall-clock comparison of the OpenMP kernels against their serial
// references, with a bit-for-bit agreement check on every pair of runs.
//
// Usage: bench_optimizer [--restarts N] [--samples N] [--repeats N]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <fmt/format.h>

#include "ghzmeter/optimizer.hpp"

using namespace ghzmeter;

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
  std::cout << fmt::format("{:<32} serial {:>9.4f} s  parallel {:>9.4f} s  speedup {:>5.2f}x  {}\n",
                           name, serial, parallel, serial / parallel,
                           identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int restarts = 300, samples = 32, repeats = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const int value = std::atoi(argv[i + 1]);
    if (flag == "--restarts") restarts = value;
    else if (flag == "--samples") samples = value;
    else if (flag == "--repeats") repeats = value;
    else {
      std::cerr << "unknown flag " << flag << "\n";
      return 2;
    }
  }
  std::cout << fmt::format("OpenMP threads: {}\n", omp_get_max_threads());

  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 42;
  bool all_identical = true;
  for (const auto& [label, state] : {std::pair{"W", make_w()}, std::pair{"Haar", haar_random_pure(2, 7)}}) {
    OptimizationResult s, p;
    const double ts = best_of(repeats, [&] { s = maximize_I_serial(state, cfg); });
    const double tp = best_of(repeats, [&] { p = maximize_I(state, cfg); });
    const bool same = s.best_value == p.best_value && s.restart_values == p.restart_values;
    all_identical = all_identical && same;
    report(fmt::format("maximize_I {} ({} restarts)", label, restarts), ts, tp, same);
  }

  std::vector<SweepSample> s, p;
  const double ts = best_of(repeats, [&] { s = haar_sweep_serial(samples, 30, 42); });
  const double tp = best_of(repeats, [&] { p = haar_sweep(samples, 30, 42); });
  bool same = s.size() == p.size();
  for (std::size_t i = 0; same && i < s.size(); ++i) same = s[i].sup_abs_I == p[i].sup_abs_I;
  all_identical = all_identical && same;
  report(fmt::format("haar_sweep ({} samples)", samples), ts, tp, same);
  return all_identical ? 0 : 1;
}
