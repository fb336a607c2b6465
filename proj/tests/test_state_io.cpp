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

#include <filesystem>
#include <fstream>
#include <string>

#include "ghzmeter/state_io.hpp"

using namespace ghzmeter;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ghzmeter_test_" + name + ".json");
}

double max_amp_diff(const QuantumState& a, const QuantumState& b) {
  return max_abs_diff(a.to_density(), b.to_density());
}

template <class E>
std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const E& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("GHZ round-trips through a file with identical amplitudes") {
  const auto path = temp_file("ghz");
  const auto ghz = make_ghz();
  save_state(ghz, path);
  const auto back = load_state(path);
  REQUIRE(back.is_pure());
  REQUIRE(back.amplitudes().size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(back.amplitudes()[i] == ghz.amplitudes()[i]);
  std::filesystem::remove(path);
}

TEST_CASE("random pure and mixed states round-trip within 1e-15") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto pure = haar_random_pure(t % 2 == 0 ? 2 : 3, rng);
    const auto back = state_from_json(state_to_json(pure));
    CHECK(back.local_dim() == pure.local_dim());
    for (std::size_t i = 0; i < pure.dimension(); ++i)
      CHECK(std::abs(back.amplitudes()[i] - pure.amplitudes()[i]) <= 1e-15);
  }
  const auto mixed = mixture(0.3, make_w(), maximally_mixed());
  const auto path = temp_file("mixed");
  save_state(mixed, path);
  const auto back = load_state(path);
  CHECK_FALSE(back.is_pure());
  CHECK(max_amp_diff(back, mixed) <= 1e-15);
  std::filesystem::remove(path);
}

TEST_CASE("malformed amplitude count names the expected length") {
  auto doc = state_to_json(make_ghz());
  doc["amplitudes"].erase(doc["amplitudes"].begin());
  const auto msg = error_of<StateIoError>([&] { state_from_json(doc); });
  CHECK(msg.find("expected 8") != std::string::npos);
}

TEST_CASE("density file with trace 0.5 reports the trace invariant") {
  auto doc = state_to_json(maximally_mixed());
  for (std::size_t i = 0; i < 8; ++i) doc["density"][i][i][0] = 0.5 / 8.0;
  const auto msg = error_of<StateError>([&] { state_from_json(doc); });
  CHECK(msg.find("trace") != std::string::npos);
}

TEST_CASE("unnormalized amplitudes report the normalization invariant") {
  auto doc = state_to_json(make_ghz());
  doc["amplitudes"][0][0] = 1.0;
  const auto msg = error_of<StateError>([&] { state_from_json(doc); });
  CHECK(msg.find("normalization") != std::string::npos);
}

TEST_CASE("syntax errors and missing files are parse failures") {
  const auto path = temp_file("broken");
  std::ofstream(path) << "{\"local_dim\": 2, \"kind\": ";
  CHECK_THROWS_AS(load_state(path), StateIoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_state(temp_file("does_not_exist")), StateIoError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"local_dim", 2}, {"kind", "bogus"}}), StateIoError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json{{"kind", "pure"}}), StateIoError);
}
