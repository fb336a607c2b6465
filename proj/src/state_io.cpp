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

#include "ghzmeter/state_io.hpp"

#include <fstream>

namespace ghzmeter {

namespace {

using nlohmann::json;

json encode(const cplx& v) { return json::array({v.real(), v.imag()}); }

cplx decode(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw StateIoError(where + ": expected a [re, im] pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

int party_count(const json& doc) {
  if (!doc.contains("parties")) return 3;
  if (!doc["parties"].is_number_integer()) throw StateIoError("parties: expected an integer");
  return doc["parties"].get<int>();
}

std::size_t expected_dimension(int d, int parties) {
  std::size_t n = 1;
  for (int i = 0; i < parties; ++i) n *= static_cast<std::size_t>(d);
  return n;
}

}  // namespace

json state_to_json(const QuantumState& state) {
  json doc;
  doc["local_dim"] = state.local_dim();
  if (state.parties() != 3) doc["parties"] = state.parties();
  if (state.is_pure()) {
    doc["kind"] = "pure";
    json amps = json::array();
    for (const auto& a : state.amplitudes()) amps.push_back(encode(a));
    doc["amplitudes"] = std::move(amps);
  } else {
    doc["kind"] = "mixed";
    const auto& rho = state.density();
    json rows = json::array();
    for (std::size_t r = 0; r < rho.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < rho.cols(); ++c) row.push_back(encode(rho(r, c)));
      rows.push_back(std::move(row));
    }
    doc["density"] = std::move(rows);
  }
  return doc;
}

QuantumState state_from_json(const json& doc) {
  if (!doc.is_object()) throw StateIoError("state document must be a JSON object");
  if (!doc.contains("local_dim") || !doc["local_dim"].is_number_integer())
    throw StateIoError("local_dim: missing or not an integer");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw StateIoError("kind: missing or not a string");

  const int d = doc["local_dim"].get<int>();
  if (d < 2) throw StateIoError("local_dim: must be >= 2, got " + std::to_string(d));
  const int parties = party_count(doc);
  if (parties < 1 || parties > 3) throw StateIoError("parties: must be 1, 2 or 3");
  const std::size_t n = expected_dimension(d, parties);
  const auto kind = doc["kind"].get<std::string>();

  if (kind == "pure") {
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
      throw StateIoError("amplitudes: missing or not an array");
    const auto& arr = doc["amplitudes"];
    if (arr.size() != n) {
      throw StateIoError("amplitudes: expected " + std::to_string(n) + " entries for local_dim " +
                         std::to_string(d) + ", got " + std::to_string(arr.size()));
    }
    std::vector<cplx> amps;
    amps.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      amps.push_back(decode(arr[i], "amplitudes[" + std::to_string(i) + "]"));
    return QuantumState::pure(d, std::move(amps), parties);
  }
  if (kind == "mixed") {
    if (!doc.contains("density") || !doc["density"].is_array())
      throw StateIoError("density: missing or not an array");
    const auto& rows = doc["density"];
    if (rows.size() != n) {
      throw StateIoError("density: expected " + std::to_string(n) + " rows, got " +
                         std::to_string(rows.size()));
    }
    ComplexMatrix rho(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != n) {
        throw StateIoError("density[" + std::to_string(r) + "]: expected " + std::to_string(n) +
                           " entries");
      }
      for (std::size_t c = 0; c < n; ++c)
        rho(r, c) = decode(row[c], "density[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return QuantumState::mixed(d, std::move(rho), parties);
  }
  throw StateIoError("kind: expected \"pure\" or \"mixed\", got \"" + kind + "\"");
}

void save_state(const QuantumState& state, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw StateIoError("cannot open " + path.string() + " for writing");
  out << state_to_json(state).dump(2) << '\n';
  if (!out) throw StateIoError("write to " + path.string() + " failed");
}

QuantumState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StateIoError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw StateIoError(path.string() + ": " + e.what());
  }
  return state_from_json(doc);
}

}  // namespace ghzmeter
