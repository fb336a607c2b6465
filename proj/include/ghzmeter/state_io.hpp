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

#ifndef GHZMETER_STATE_IO_HPP
#define GHZMETER_STATE_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ghzmeter/states.hpp"

namespace ghzmeter {

/// Malformed state document (syntax, missing field, wrong type or length).
/// Invariant violations of a well-formed document surface as StateError.
class StateIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State file layout:
//   {"local_dim": 2, "kind": "pure",  "amplitudes": [[re, im], ...]}
//   {"local_dim": 2, "kind": "mixed", "density": [[[re, im], ...], ...]}
// Amplitudes and density rows follow the basis order d^2 i + d j + k.

nlohmann::json state_to_json(const QuantumState& state);
QuantumState state_from_json(const nlohmann::json& doc);

void save_state(const QuantumState& state, const std::filesystem::path& path);
QuantumState load_state(const std::filesystem::path& path);

}  // namespace ghzmeter

#endif  // GHZMETER_STATE_IO_HPP
