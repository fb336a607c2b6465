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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ghzmeter/functional.hpp"
#include "ghzmeter/optimizer.hpp"
#include "ghzmeter/qudit.hpp"
#include "ghzmeter/state_io.hpp"
#include "ghzmeter/states.hpp"

namespace ghzmeter::cli {

namespace {

using nlohmann::json;

/// Malformed command-line input; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { table, csv, json };

const std::vector<std::string> kNamedStates{"ghz", "w", "bisep", "product", "mixed"};
constexpr std::uint64_t kDefaultSeed = 42;
constexpr double kRandomBoundMargin = 1e-3;

std::string num(double v) { return fmt::format("{:.9g}", v); }

std::string join_names() {
  std::string s;
  for (const auto& n : kNamedStates) s += (s.empty() ? "" : ", ") + n;
  return s;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& field,
                                  std::size_t expected) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(field + ": '" + item + "' is not a number");
    }
  }
  if (values.size() != expected) {
    throw UsageError(field + ": expected " + std::to_string(expected) +
                     " comma-separated numbers, got " + std::to_string(values.size()));
  }
  return values;
}

Direction parse_direction(const std::string& text, const std::string& field) {
  const auto v = parse_numbers(text, field, 3);
  try {
    return Direction::normalized({v[0], v[1], v[2]});
  } catch (const std::invalid_argument&) {
    throw UsageError(field + ": direction must be a nonzero vector");
  }
}

std::pair<int, int> parse_generator(const std::string& text, const std::string& field, int d) {
  const auto v = parse_numbers(text, field, 2);
  std::pair<int, int> g;
  for (int i = 0; i < 2; ++i) {
    const double x = v[static_cast<std::size_t>(i)];
    if (x != std::floor(x) || x < 0 || x >= d) {
      throw UsageError(field + ": entries must be integers in [0, " + std::to_string(d) + ")");
    }
    (i == 0 ? g.first : g.second) = static_cast<int>(x);
  }
  return g;
}

Format parse_format(const std::string& text) {
  if (text == "table") return Format::table;
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw UsageError("--format: expected table, csv or json, got '" + text + "'");
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("GHZMETER_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("GHZMETER_SEED: '") + env + "' is not an unsigned integer");
    }
  }
  return kDefaultSeed;
}

QuantumState named_state(const std::string& name, int d = 2) {
  if (name == "ghz") return make_ghz(d);
  if (name == "mixed") return maximally_mixed(d);
  if (d != 2) throw UsageError("--state: '" + name + "' is only defined for qubits");
  if (name == "w") return make_w();
  if (name == "bisep") return make_biseparable(Cut::A_BC, basis_state(2, 1, 0), bell_phi_plus());
  if (name == "product") return basis_state(2, 3, 0);
  throw UsageError("--state: unknown state '" + name + "' (valid: " + join_names() + ")");
}

struct StateOptions {
  std::string name;
  std::string acin;
  std::string file;

  void attach(CLI::App* sub) {
    sub->add_option("--state", name, "Named state: " + join_names());
    sub->add_option("--acin", acin, "Canonical parameters l0,l1,l2,l3,l4,phi");
    sub->add_option("--state-file", file, "State file (JSON)");
  }
};

struct ResolvedState {
  QuantumState state;
  std::string label;
};

ResolvedState resolve_state(const StateOptions& o, int d = 2) {
  const int given = !o.name.empty() + !o.acin.empty() + !o.file.empty();
  if (given != 1) throw UsageError("state: give exactly one of --state, --acin, --state-file");
  if (!o.name.empty()) return {named_state(o.name, d), o.name};
  if (!o.acin.empty()) {
    const auto v = parse_numbers(o.acin, "--acin", 6);
    try {
      const auto p = AcinParams::make({v[0], v[1], v[2], v[3], v[4]}, v[5]);
      return {make_acin(p), "acin"};
    } catch (const StateError& e) {
      throw UsageError(std::string("--acin: ") + e.what());
    }
  }
  try {
    return {load_state(o.file), o.file};
  } catch (const std::exception& e) {
    throw UsageError(std::string("--state-file: ") + e.what());
  }
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }
std::string vec_text(const Vec3& v) { return num(v[0]) + " " + num(v[1]) + " " + num(v[2]); }

void require_qubits(const QuantumState& s) {
  if (!s.is_qubit_triple()) throw UsageError("state: this command needs a three-qubit state");
}

/// Key/value table, aligned on the key column.
std::string table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::string s;
  for (const auto& [k, v] : rows) s += fmt::format("{:<{}}  {}\n", k, width, v);
  return s;
}

/// Column-aligned table with a header row.
std::string grid(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c)
      s += fmt::format("{}{:<{}}", c ? "  " : "", cells[c], c + 1 < cells.size() ? width[c] : 0);
    return s + "\n";
  };
  std::string s = line(header);
  for (const auto& r : rows) s += line(r);
  return s;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string full(double v) { return fmt::format("{:.17g}", v); }

// ---------------------------------------------------------------------------

struct Common {
  std::string format = "table";
  std::string output;
  void attach(CLI::App* sub, const std::string& default_format = "table") {
    format = default_format;
    sub->add_option("--format", format, "table, csv or json")->capture_default_str();
    sub->add_option("--output,-o", output, "Write the report to a file instead of stdout");
  }
};

std::string cmd_eval(const StateOptions& so, const std::string& n1s, const std::string& n2s,
                     Format format) {
  const auto [state, label] = resolve_state(so);
  require_qubits(state);
  if (n1s.empty()) throw UsageError("--n1: required");
  if (n2s.empty()) throw UsageError("--n2: required");
  const OrthoFrame frame(parse_direction(n1s, "--n1"), parse_direction(n2s, "--n2"));
  const FunctionalValue v = eval_I(state, frame);
  const auto& e = v.correlators;
  switch (format) {
    case Format::json:
      return json{{"command", "eval"},
                  {"state", label},
                  {"n1", vec_json(frame.n1().vec())},
                  {"n2", vec_json(frame.n2().vec())},
                  {"c", frame.c()},
                  {"e", {e.e1, e.e2, e.e3, e.e4}},
                  {"I", v.value},
                  {"abs_I", v.modulus},
                  {"M3", e.e4 - e.e1 - e.e2 - e.e3}}
                 .dump(2) +
             "\n";
    case Format::csv:
      return csv_line({"state", "n1x", "n1y", "n1z", "n2x", "n2y", "n2z", "c", "e1", "e2", "e3",
                       "e4", "I", "abs_I", "M3"}) +
             csv_line({label, full(frame.n1()[0]), full(frame.n1()[1]), full(frame.n1()[2]),
                       full(frame.n2()[0]), full(frame.n2()[1]), full(frame.n2()[2]),
                       full(frame.c()), full(e.e1), full(e.e2), full(e.e3), full(e.e4),
                       full(v.value), full(v.modulus), full(e.e4 - e.e1 - e.e2 - e.e3)});
    case Format::table:
      break;
  }
  return table({{"state", label},
                {"n1", vec_text(frame.n1().vec())},
                {"n2", vec_text(frame.n2().vec())},
                {"c = n1.n2", num(frame.c())},
                {"e1", num(e.e1)},
                {"e2", num(e.e2)},
                {"e3", num(e.e3)},
                {"e4", num(e.e4)},
                {"I", num(v.value)},
                {"|I|", num(v.modulus)}});
}

json optimization_json(const std::string& label, const OptimizationResult& r) {
  return json{{"state", label},
              {"best_value", r.best_value},
              {"e_ghz", r.e_ghz},
              {"best_frame",
               {{"n1", vec_json(r.best_frame.n1().vec())},
                {"n2", vec_json(r.best_frame.n2().vec())}}},
              {"restarts", r.restarts},
              {"seed", r.seed},
              {"iterations_total", r.iterations_total},
              {"converged_restarts", r.converged_restarts},
              {"agreeing_restarts", r.agreeing_restarts}};
}

std::string cmd_optimize(const StateOptions& so, int restarts, std::uint64_t seed, bool serial,
                         Format format) {
  const auto [state, label] = resolve_state(so);
  require_qubits(state);
  if (restarts < 1) throw UsageError("--restarts: must be >= 1");
  const OptimizerConfig cfg{restarts, seed, {}};
  const auto r = serial ? maximize_I_serial(state, cfg) : maximize_I(state, cfg);
  switch (format) {
    case Format::json: {
      json doc = optimization_json(label, r);
      doc["command"] = "optimize";
      return doc.dump(2) + "\n";
    }
    case Format::csv:
      return csv_line({"state", "best_value", "e_ghz", "n1x", "n1y", "n1z", "n2x", "n2y", "n2z",
                       "restarts", "seed", "iterations_total", "converged_restarts",
                       "agreeing_restarts"}) +
             csv_line({label, full(r.best_value), full(r.e_ghz), full(r.best_frame.n1()[0]),
                       full(r.best_frame.n1()[1]), full(r.best_frame.n1()[2]),
                       full(r.best_frame.n2()[0]), full(r.best_frame.n2()[1]),
                       full(r.best_frame.n2()[2]), std::to_string(r.restarts),
                       std::to_string(r.seed), std::to_string(r.iterations_total),
                       std::to_string(r.converged_restarts), std::to_string(r.agreeing_restarts)});
    case Format::table:
      break;
  }
  return table({{"state", label},
                {"sup |I|", num(r.best_value)},
                {"E_GHZ", num(r.e_ghz)},
                {"best n1", vec_text(r.best_frame.n1().vec())},
                {"best n2", vec_text(r.best_frame.n2().vec())},
                {"restarts", std::to_string(r.restarts)},
                {"seed", std::to_string(r.seed)},
                {"iterations", std::to_string(r.iterations_total)},
                {"converged", std::to_string(r.converged_restarts)},
                {"agreeing (1e-8)", std::to_string(r.agreeing_restarts)}});
}

std::string cmd_scan_mu(int steps, Format format) {
  if (steps < 2) throw UsageError("--steps: must be >= 2");
  const OrthoFrame xy(Direction::x_axis(), Direction::y_axis());
  json rows = json::array();
  std::string csv = csv_line({"mu", "closed_form", "direct", "abs_diff"});
  std::vector<std::vector<std::string>> tab;
  for (int k = 0; k < steps; ++k) {
    const double mu = 0.5 * k / (steps - 1);
    const auto params = acin_params_for_mu(mu);
    const double closed = acin_closed_form_mu(mu);
    const double direct = eval_I(make_acin(params), xy).value;
    rows.push_back({{"label", "acin"},
                    {"mu", mu},
                    {"value", closed},
                    {"direct", direct},
                    {"abs_diff", std::abs(closed - direct)}});
    csv += csv_line({full(mu), full(closed), full(direct), full(std::abs(closed - direct))});
    tab.push_back({num(mu), num(closed), num(direct), num(std::abs(closed - direct))});
  }
  switch (format) {
    case Format::json:
      return json{{"command", "scan-mu"}, {"steps", steps}, {"rows", rows}}.dump(2) + "\n";
    case Format::csv:
      return csv;
    case Format::table:
      break;
  }
  return grid({"mu", "|I| closed form", "|I| direct", "difference"}, tab);
}

std::string cmd_bench_states(int restarts, std::uint64_t seed, Format format) {
  if (restarts < 1) throw UsageError("--restarts: must be >= 1");
  struct Row {
    std::string label;
    double expected;
  };
  const std::vector<Row> rows{{"ghz", 2.0}, {"w", 35.0 / 27.0}, {"bisep", 1.0}, {"product", 1.0}};
  const OptimizerConfig cfg{restarts, seed, {}};
  json jrows = json::array();
  std::string csv =
      csv_line({"label", "sup_abs_I", "e_ghz", "expected", "deviation", "restarts", "seed"});
  std::vector<std::vector<std::string>> tab;
  for (const auto& row : rows) {
    const auto r = maximize_I(named_state(row.label), cfg);
    const double dev = std::abs(r.best_value - row.expected);
    jrows.push_back({{"label", row.label},
                     {"value", r.best_value},
                     {"e_ghz", r.e_ghz},
                     {"expected", row.expected},
                     {"deviation", dev},
                     {"restarts", restarts},
                     {"seed", seed}});
    csv += csv_line({row.label, full(r.best_value), full(r.e_ghz), full(row.expected), full(dev),
                     std::to_string(restarts), std::to_string(seed)});
    tab.push_back({row.label, num(r.best_value), num(r.e_ghz), num(row.expected), num(dev)});
  }
  switch (format) {
    case Format::json:
      return json{{"command", "bench-states"}, {"rows", jrows}}.dump(2) + "\n";
    case Format::csv:
      return csv;
    case Format::table:
      break;
  }
  return grid({"state", "sup|I|", "E_GHZ", "expected", "deviation"}, tab) +
         fmt::format("restarts {}, seed {}\n", restarts, seed);
}

double quantile(const std::vector<double>& sorted, double q) {
  // Nearest-rank.
  const auto n = sorted.size();
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  return sorted[std::min(n - 1, rank == 0 ? 0 : rank - 1)];
}

struct RandomOutcome {
  std::string report;
  bool bound_ok = true;
};

RandomOutcome cmd_random(int samples, int restarts, std::uint64_t seed, Format format) {
  if (samples < 1) throw UsageError("--samples: must be >= 1");
  if (restarts < 1) throw UsageError("--restarts: must be >= 1");
  const auto sweep = haar_sweep(samples, restarts, seed);
  std::vector<double> values;
  for (const auto& s : sweep) values.push_back(s.sup_abs_I);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double max_v = sorted.back();
  const bool ok = max_v < 2.0 - kRandomBoundMargin;

  const std::vector<std::pair<std::string, double>> qs{
      {"min", sorted.front()},        {"q10", quantile(sorted, 0.10)},
      {"q25", quantile(sorted, 0.25)}, {"median", quantile(sorted, 0.50)},
      {"q75", quantile(sorted, 0.75)}, {"q90", quantile(sorted, 0.90)},
      {"max", max_v}};
  std::size_t in_band = 0;
  for (const double v : values)
    if (v >= 0.4 && v <= 1.6) ++in_band;

  RandomOutcome out;
  out.bound_ok = ok;
  switch (format) {
    case Format::json: {
      json jsamples = json::array();
      for (const auto& s : sweep)
        jsamples.push_back({{"index", s.index},
                            {"value", s.sup_abs_I},
                            {"e_ghz", s.sup_abs_I / 2.0},
                            {"agreeing_restarts", s.agreeing_restarts}});
      json summary = json::object();
      for (const auto& [k, v] : qs) summary[k] = v;
      summary["fraction_in_0.4_1.6"] = static_cast<double>(in_band) / values.size();
      out.report = json{{"command", "random"},
                        {"samples", samples},
                        {"restarts", restarts},
                        {"reduced_restarts", restarts < 300},
                        {"seed", seed},
                        {"bound_margin", kRandomBoundMargin},
                        {"bound_ok", ok},
                        {"summary", summary},
                        {"rows", jsamples}}
                       .dump(2) +
                   "\n";
      return out;
    }
    case Format::csv: {
      std::string csv = csv_line({"index", "sup_abs_I", "e_ghz", "agreeing_restarts"});
      for (const auto& s : sweep)
        csv += csv_line({std::to_string(s.index), full(s.sup_abs_I), full(s.sup_abs_I / 2.0),
                         std::to_string(s.agreeing_restarts)});
      out.report = csv;
      return out;
    }
    case Format::table:
      break;
  }
  std::vector<std::pair<std::string, std::string>> tab{
      {"samples", std::to_string(samples)},
      {"restarts", std::to_string(restarts) + (restarts < 300 ? " (reduced)" : "")},
      {"seed", std::to_string(seed)}};
  for (const auto& [k, v] : qs) tab.emplace_back("sup|I| " + k, num(v));
  tab.emplace_back("in [0.4, 1.6]", std::to_string(in_band) + "/" + std::to_string(samples));
  tab.emplace_back("max < 2 - 1e-3", ok ? "yes" : "NO");
  out.report = table(tab);
  return out;
}

std::string cmd_qudit(int d, const std::string& g1s, const std::string& g2s,
                      const StateOptions& so, bool exhaustive, bool relabel, Format format) {
  if (d < 2) throw UsageError("--d: must be >= 2");
  auto [state, label] = resolve_state(so, d);
  if (state.local_dim() != d || state.parties() != 3)
    throw UsageError("state: local dimension does not match --d " + std::to_string(d));
  if (relabel) {
    if (d != 2) throw UsageError("--relabel-yz: only defined for d = 2");
    state = relabel_yz(state);
    label += " (y<->z relabelled)";
  }

  if (exhaustive) {
    const auto r = qudit_scan(state);
    switch (format) {
      case Format::json:
        return json{{"command", "qudit"},
                    {"mode", "exhaustive"},
                    {"d", d},
                    {"state", label},
                    {"pairs_scanned", r.pairs_scanned},
                    {"best_modulus", r.best_modulus},
                    {"best_value", {r.best_value.real(), r.best_value.imag()}},
                    {"best_g1", {r.best_g1.first, r.best_g1.second}},
                    {"best_g2", {r.best_g2.first, r.best_g2.second}},
                    {"saturating_pairs", r.saturating_pairs}}
                   .dump(2) +
               "\n";
      case Format::csv:
        return csv_line({"d", "pairs_scanned", "best_modulus", "best_re", "best_im", "g1p", "g1q",
                         "g2p", "g2q", "saturating_pairs"}) +
               csv_line({std::to_string(d), std::to_string(r.pairs_scanned),
                         full(r.best_modulus), full(r.best_value.real()),
                         full(r.best_value.imag()), std::to_string(r.best_g1.first),
                         std::to_string(r.best_g1.second), std::to_string(r.best_g2.first),
                         std::to_string(r.best_g2.second), std::to_string(r.saturating_pairs)});
      case Format::table:
        break;
    }
    return table({{"d", std::to_string(d)},
                  {"state", label},
                  {"pairs scanned", std::to_string(r.pairs_scanned)},
                  {"best |I_d|", num(r.best_modulus)},
                  {"best g1", fmt::format("({},{})", r.best_g1.first, r.best_g1.second)},
                  {"best g2", fmt::format("({},{})", r.best_g2.first, r.best_g2.second)},
                  {"pairs with |I_d| = 2", std::to_string(r.saturating_pairs)}});
  }

  if (g1s.empty() || g2s.empty()) throw UsageError("--g1/--g2: required unless --exhaustive");
  const QuditGenPair pair(d, parse_generator(g1s, "--g1", d), parse_generator(g2s, "--g2", d));
  const auto v = eval_Id(state, pair);
  switch (format) {
    case Format::json:
      return json{{"command", "qudit"},
                  {"mode", "single"},
                  {"d", d},
                  {"state", label},
                  {"g1", {pair.g1().first, pair.g1().second}},
                  {"g2", {pair.g2().first, pair.g2().second}},
                  {"symplectic", pair.symplectic()},
                  {"value", {v.value.real(), v.value.imag()}},
                  {"modulus", v.modulus},
                  {"product_residual", v.product_residual}}
                 .dump(2) +
             "\n";
    case Format::csv:
      return csv_line({"d", "g1p", "g1q", "g2p", "g2q", "symplectic", "re", "im", "modulus",
                       "product_residual"}) +
             csv_line({std::to_string(d), std::to_string(pair.g1().first),
                       std::to_string(pair.g1().second), std::to_string(pair.g2().first),
                       std::to_string(pair.g2().second), std::to_string(pair.symplectic()),
                       full(v.value.real()), full(v.value.imag()), full(v.modulus),
                       full(v.product_residual)});
    case Format::table:
      break;
  }
  return table({{"d", std::to_string(d)},
                {"state", label},
                {"g1", fmt::format("({},{})", pair.g1().first, pair.g1().second)},
                {"g2", fmt::format("({},{})", pair.g2().first, pair.g2().second)},
                {"<g1,g2>", std::to_string(pair.symplectic())},
                {"I_d", num(v.value.real()) + (v.value.imag() < 0 ? " - " : " + ") +
                            num(std::abs(v.value.imag())) + "i"},
                {"|I_d|", num(v.modulus)},
                {"G1G2G3 residual", num(v.product_residual)}});
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("--output: cannot open '" + path + "' for writing");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ghzmeter: multiplicative GHZ functional and E_GHZ toolkit", "ghzmeter"};
  app.require_subcommand(1);

  // eval
  StateOptions eval_state;
  Common eval_common;
  std::string n1s, n2s;
  auto* eval = app.add_subcommand("eval", "Evaluate I(n1, n2) on a state");
  eval_state.attach(eval);
  eval->add_option("--n1", n1s, "First direction x,y,z");
  eval->add_option("--n2", n2s, "Second direction x,y,z");
  eval_common.attach(eval);

  // optimize
  StateOptions opt_state;
  Common opt_common;
  int opt_restarts = 300;
  std::uint64_t opt_seed = 0;
  bool opt_serial = false;
  auto* optimize = app.add_subcommand("optimize", "Maximize |I| over orthonormal frames");
  opt_state.attach(optimize);
  optimize->add_option("--restarts", opt_restarts, "Nelder-Mead restarts")->capture_default_str();
  auto* opt_seed_opt = optimize->add_option("--seed", opt_seed, "Seed (default: $GHZMETER_SEED or 42)");
  optimize->add_flag("--serial", opt_serial, "Use the single-threaded reference optimizer");
  opt_common.attach(optimize);

  // scan-mu
  Common scan_common;
  int scan_steps = 101;
  auto* scan = app.add_subcommand("scan-mu", "|I(x,y)| across the canonical family versus mu");
  scan->add_option("--steps", scan_steps, "Grid points on [0, 1/2]")->capture_default_str();
  scan_common.attach(scan, "csv");

  // bench-states
  Common bench_common;
  int bench_restarts = 300;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench-states", "sup|I| for ghz, w, bisep and product");
  bench->add_option("--restarts", bench_restarts)->capture_default_str();
  auto* bench_seed_opt = bench->add_option("--seed", bench_seed);
  bench_common.attach(bench);

  // random
  Common rand_common;
  int rand_samples = 100;
  int rand_restarts = 30;
  std::uint64_t rand_seed = 0;
  auto* random = app.add_subcommand("random", "sup|I| over Haar-random pure states");
  random->add_option("--samples", rand_samples)->capture_default_str();
  random->add_option("--restarts", rand_restarts)->capture_default_str();
  auto* rand_seed_opt = random->add_option("--seed", rand_seed);
  rand_common.attach(random);

  // qudit
  StateOptions qudit_state;
  Common qudit_common;
  int qudit_d = 2;
  std::string g1s, g2s;
  bool qudit_exhaustive = false;
  bool qudit_relabel = false;
  auto* qudit = app.add_subcommand("qudit", "Heisenberg-Weyl functional I_d");
  qudit->add_option("--d", qudit_d, "Local dimension")->capture_default_str();
  qudit->add_option("--g1", g1s, "First generator p,q");
  qudit->add_option("--g2", g2s, "Second generator p,q");
  qudit_state.attach(qudit);
  qudit->add_flag("--exhaustive", qudit_exhaustive, "Scan every non-commuting generator pair");
  qudit->add_flag("--relabel-yz", qudit_relabel, "d = 2: rotate the state so Z plays the role of Y");
  qudit_common.attach(qudit);

  // export-state
  StateOptions export_state;
  std::string export_path;
  auto* exporter = app.add_subcommand("export-state", "Write a state to a JSON state file");
  export_state.attach(exporter);
  exporter->add_option("--output,-o", export_path, "Destination file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (eval->parsed()) {
      emit(cmd_eval(eval_state, n1s, n2s, parse_format(eval_common.format)), eval_common.output,
           out);
    } else if (optimize->parsed()) {
      emit(cmd_optimize(opt_state, opt_restarts, resolve_seed(opt_seed_opt, opt_seed), opt_serial,
                        parse_format(opt_common.format)),
           opt_common.output, out);
    } else if (scan->parsed()) {
      emit(cmd_scan_mu(scan_steps, parse_format(scan_common.format)), scan_common.output, out);
    } else if (bench->parsed()) {
      if (bench_restarts < 1) throw UsageError("--restarts: must be >= 1");
      emit(cmd_bench_states(bench_restarts, resolve_seed(bench_seed_opt, bench_seed),
                            parse_format(bench_common.format)),
           bench_common.output, out);
    } else if (random->parsed()) {
      const auto r = cmd_random(rand_samples, rand_restarts, resolve_seed(rand_seed_opt, rand_seed),
                                parse_format(rand_common.format));
      emit(r.report, rand_common.output, out);
      if (!r.bound_ok) {
        err << "error: a random state reached sup|I| >= 2 - 1e-3\n";
        return kExitFailure;
      }
    } else if (qudit->parsed()) {
      emit(cmd_qudit(qudit_d, g1s, g2s, qudit_state, qudit_exhaustive, qudit_relabel,
                     parse_format(qudit_common.format)),
           qudit_common.output, out);
    } else if (exporter->parsed()) {
      const auto [state, label] = resolve_state(export_state);
      save_state(state, export_path);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace ghzmeter::cli
