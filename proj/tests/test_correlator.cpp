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

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "ghzmeter/correlator.hpp"
#include "oracles.hpp"

using namespace ghzmeter;

namespace {

Direction random_direction(Rng& rng) {
  std::normal_distribution<double> g;
  return Direction::normalized({g(rng), g(rng), g(rng)});
}

OrthoFrame random_orthogonal_frame(Rng& rng) {
  const Direction n1 = random_direction(rng);
  const Direction t = random_direction(rng);
  const double c = dot(n1.vec(), t.vec());
  Vec3 v{};
  for (int i = 0; i < 3; ++i) v[i] = t[i] - c * n1[i];
  return OrthoFrame(n1, Direction::normalized(v));
}

oracle::V3 v3(const Direction& d) { return {d[0], d[1], d[2]}; }

const OrthoFrame kXY(Direction::x_axis(), Direction::y_axis());

}  // namespace

TEST_CASE("build_quad on (x, y): O4 = XXX and O1 O2 O3 O4 = -1") {
  const auto q = build_quad(kXY);
  CHECK(q.o4 == kron(kron(pauli_x(), pauli_x()), pauli_x()));
  CHECK(q.o1 == kron(kron(pauli_x(), pauli_y()), pauli_y()));
  CHECK(max_abs_diff(q.o1 * q.o2 * q.o3 * q.o4, -ComplexMatrix::identity(8)) < 1e-12);
}

TEST_CASE("degenerate frame (x, x) makes the four observables equal") {
  const auto q = build_quad(OrthoFrame(Direction::x_axis(), Direction::x_axis()));
  CHECK(q.o1 == q.o4);
  CHECK(q.o2 == q.o4);
  CHECK(q.o3 == q.o4);
}

TEST_CASE("each observable is a Hermitian involution; commuting when orthogonal") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto q = build_quad(random_orthogonal_frame(rng));
    const auto id = ComplexMatrix::identity(8);
    for (const auto* o : {&q.o1, &q.o2, &q.o3, &q.o4}) {
      CHECK(is_hermitian(*o));
      CHECK(max_abs_diff(*o * *o, id) < 1e-12);
    }
    CHECK(max_abs(commutator(q.o1, q.o2)) < 1e-12);
    CHECK(max_abs(commutator(q.o1, q.o4)) < 1e-12);
    CHECK(max_abs(commutator(q.o2, q.o3)) < 1e-12);
  }
}

TEST_CASE("expectations on GHZ, W and the maximally mixed state") {
  const auto q = build_quad(kXY);
  const auto g = expectations(q, make_ghz());
  CHECK(g.e1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.e2 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.e3 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.e4 == doctest::Approx(1.0).epsilon(1e-14));

  const auto w = expectations(q, make_w());
  for (double e : {w.e1, w.e2, w.e3, w.e4}) CHECK(std::abs(e) < 1e-15);

  Rng rng(2);
  const auto mm = maximally_mixed();
  for (int t = 0; t < 20; ++t) {
    const auto e = frame_expectations(mm, OrthoFrame(random_direction(rng), random_direction(rng)));
    for (double v : {e.e1, e.e2, e.e3, e.e4}) CHECK(std::abs(v) < 1e-15);
  }
}

TEST_CASE("expectations reject non-qubit states") {
  CHECK_THROWS_AS(expectations(build_quad(kXY), make_ghz(3)), StateError);
  CHECK_THROWS_AS(frame_expectations(make_ghz(3), kXY), StateError);
}

TEST_CASE("identity residuals on random frames") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto r = verify_identities(OrthoFrame(random_direction(rng), random_direction(rng)));
    CHECK(r.commutator < 1e-12);
    CHECK(r.product_sum < 1e-12);
    CHECK(r.sandwich < 1e-12);
  }
}

TEST_CASE("orthogonal frames: O1 O2 O3 = -O4") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto f = random_orthogonal_frame(rng);
    const auto q = build_quad(f);
    CHECK(max_abs_diff(q.o1 * q.o2 * q.o3, -q.o4) < 1e-12);
    const auto r = verify_identities(f);
    CHECK(r.stabiliser < 1e-12);
    CHECK(r.pairwise_commutator < 1e-12);
  }
}

TEST_CASE("parallel frame has an exactly vanishing commutator residual") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto n = random_direction(rng);
    CHECK(verify_identities(OrthoFrame(n, n)).commutator == 0.0);
  }
}

TEST_CASE("correlators are bounded by one on random (state, frame) pairs") {
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const auto s = haar_random_pure(2, rng);
    const auto e = frame_expectations(s, OrthoFrame(random_direction(rng), random_direction(rng)));
    for (double v : {e.e1, e.e2, e.e3, e.e4}) CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("fast path, materialized path and index-sum oracle agree") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto s = haar_random_pure(2, rng);
    const OrthoFrame f(random_direction(rng), random_direction(rng));
    const auto fast = frame_expectations(s, f);
    const auto full = expectations(build_quad(f), s);
    const auto ref = oracle::correlators(s.amplitudes(), v3(f.n1()), v3(f.n2()));
    CHECK(std::abs(fast.e1 - ref.e1) < 1e-13);
    CHECK(std::abs(fast.e2 - ref.e2) < 1e-13);
    CHECK(std::abs(fast.e3 - ref.e3) < 1e-13);
    CHECK(std::abs(fast.e4 - ref.e4) < 1e-13);
    CHECK(std::abs(full.e1 - ref.e1) < 1e-13);
    CHECK(std::abs(full.e4 - ref.e4) < 1e-13);
  }
}

TEST_CASE("mixed-state expectations match the density oracle") {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto rho = mixture(0.4, haar_random_pure(2, rng), haar_random_pure(2, rng));
    const OrthoFrame f(random_direction(rng), random_direction(rng));
    const auto e = frame_expectations(rho, f);
    const auto s1 = oracle::sigma(v3(f.n1())), s2 = oracle::sigma(v3(f.n2()));
    const auto data = rho.density().data();
    CHECK(std::abs(e.e1 - oracle::triple_expectation_rho(data, s1, s2, s2).real()) < 1e-13);
    CHECK(std::abs(e.e4 - oracle::triple_expectation_rho(data, s1, s1, s1).real()) < 1e-13);
  }
}

TEST_CASE("orthogonal frames: the quad is jointly diagonalizable") {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto q = build_quad(random_orthogonal_frame(rng));
    // A generic real combination of commuting Hermitian matrices has a
    // non-degenerate spectrum, so its eigenvectors diagonalize every term.
    Eigen::MatrixXcd m[4];
    const ComplexMatrix* ops[4] = {&q.o1, &q.o2, &q.o3, &q.o4};
    for (int k = 0; k < 4; ++k) {
      m[k].resize(8, 8);
      for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) m[k](i, j) = (*ops[k])(i, j);
    }
    const Eigen::MatrixXcd combo = 1.0 * m[0] + 0.37 * m[1] + 0.11 * m[2] + 0.053 * m[3];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(combo);
    const Eigen::MatrixXcd v = es.eigenvectors();
    for (int k = 0; k < 4; ++k) {
      Eigen::MatrixXcd d = v.adjoint() * m[k] * v;
      d.diagonal().setZero();
      CHECK(d.cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("non-orthogonal frames with |c| > 0.1 cannot saturate on the GHZ basis") {
  Rng rng(10);
  std::uniform_real_distribution<double> cdist(0.1, 0.99);
  double worst_gap = 2.0;
  for (int t = 0; t < 200; ++t) {
    const auto f0 = random_orthogonal_frame(rng);
    // Tilt n2 towards n1 so that n1 . n2 = c exactly.
    const double c = (t % 2 ? 1.0 : -1.0) * cdist(rng);
    const double s = std::sqrt(1.0 - c * c);
    Vec3 n2{};
    for (int i = 0; i < 3; ++i) n2[i] = c * f0.n1()[i] + s * f0.n2()[i];
    const OrthoFrame f(f0.n1(), Direction::normalized(n2));
    REQUIRE(std::abs(f.c()) > 0.1);
    double best = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int sign : {+1, -1}) {
            const auto e = frame_expectations(make_ghz_basis_element(i, j, k, sign), f);
            best = std::max(best, std::abs(e.e4 - e.e1 * e.e2 * e.e3));
          }
    worst_gap = std::min(worst_gap, 2.0 - best);
  }
  MESSAGE("smallest saturation gap over non-orthogonal frames: " << worst_gap);
  CHECK(worst_gap > 1e-3);
}
