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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace cli = ghzmeter::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  REQUIRE(r.code == cli::kExitOk);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ghzmeter_cli_" + name);
}

struct SeedEnv {
  explicit SeedEnv(const char* value) { ::setenv("GHZMETER_SEED", value, 1); }
  ~SeedEnv() { ::unsetenv("GHZMETER_SEED"); }
};

}  // namespace

TEST_CASE("eval on GHZ at (x, y) gives 2") {
  const auto j = run_json({"eval", "--state", "ghz", "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(j["I"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(j["e"][0].get<double>() == doctest::Approx(-1.0));
  CHECK(j["e"][3].get<double>() == doctest::Approx(1.0));
  const auto table = run({"eval", "--state", "ghz", "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(table.code == 0);
  CHECK(table.out.find("|I|") != std::string::npos);
}

TEST_CASE("eval on W at (z, x) gives -35/27") {
  const auto j = run_json({"eval", "--state", "w", "--n1", "0,0,1", "--n2", "1,0,0"});
  CHECK(j["I"].get<double>() == doctest::Approx(-35.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("eval accepts the degenerate frame n1 = n2") {
  const auto j = run_json({"eval", "--state", "ghz", "--n1", "1,0,0", "--n2", "1,0,0"});
  CHECK(std::abs(j["I"].get<double>()) < 1e-12);
  CHECK(j["c"].get<double>() == 1.0);
}

TEST_CASE("eval normalizes directions and accepts canonical parameters") {
  const auto j = run_json({"eval", "--acin", "0.7071067811865476,0,0,0,0.7071067811865476,0",
                           "--n1", "2,0,0", "--n2", "0,5,0"});
  CHECK(j["I"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("usage errors exit 2 and name the offending field") {
  auto r = run({"eval", "--state", "foo", "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("ghz, w, bisep, product, mixed") != std::string::npos);

  r = run({"eval", "--state", "ghz", "--n1", "1,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--n1") != std::string::npos);

  r = run({"eval", "--state", "ghz", "--n1", "0,0,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--n1") != std::string::npos);

  r = run({"eval", "--state", "ghz", "--n1", "1,0,0", "--n2", "0,1,0", "--format", "xml"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--format") != std::string::npos);

  r = run({"eval", "--state", "ghz", "--acin", "1,0,0,0,0,0", "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);

  r = run({"eval", "--acin", "1,1,0,0,0,0", "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--acin") != std::string::npos);

  r = run({"optimize", "--state", "ghz", "--restarts", "0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--restarts") != std::string::npos);

  r = run({"qudit", "--d", "3", "--state", "ghz", "--g1", "1", "--g2", "0,1"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("--g1") != std::string::npos);

  r = run({"qudit", "--d", "1", "--state", "ghz", "--g1", "1,0", "--g2", "0,1"});
  CHECK(r.code == cli::kExitUsage);

  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"export-state", "--state", "ghz"}).code == cli::kExitUsage);
}

TEST_CASE("optimize reproduces the reference optima") {
  const auto w = run_json({"optimize", "--state", "w", "--restarts", "300", "--seed", "42"});
  CHECK(std::abs(w["e_ghz"].get<double>() - 35.0 / 54.0) < 1e-6);
  const auto g = run_json({"optimize", "--state", "ghz"});
  CHECK(std::abs(g["e_ghz"].get<double>() - 1.0) < 1e-6);
  const auto p = run_json({"optimize", "--state", "product"});
  CHECK(std::abs(p["e_ghz"].get<double>() - 0.5) < 1e-6);
  const auto m = run_json({"optimize", "--state", "mixed", "--restarts", "10"});
  CHECK(m["best_value"].get<double>() < 1e-12);
}

TEST_CASE("optimize JSON carries the documented fields") {
  const auto j = run_json({"optimize", "--state", "w", "--restarts", "20", "--seed", "5"});
  for (const char* key : {"command", "state", "best_value", "e_ghz", "best_frame", "restarts",
                          "seed", "iterations_total", "converged_restarts", "agreeing_restarts"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK(j["best_frame"]["n1"].size() == 3);
  CHECK(j["best_frame"]["n2"].size() == 3);
  CHECK(j["e_ghz"].get<double>() == j["best_value"].get<double>() / 2);
  CHECK(j["seed"].get<std::uint64_t>() == 5);
}

TEST_CASE("seed falls back to GHZMETER_SEED, then to 42") {
  CHECK(run_json({"optimize", "--state", "w", "--restarts", "3"})["seed"].get<int>() == 42);
  {
    SeedEnv env("7");
    CHECK(run_json({"optimize", "--state", "w", "--restarts", "3"})["seed"].get<int>() == 7);
    CHECK(run_json({"optimize", "--state", "w", "--restarts", "3", "--seed", "3"})["seed"]
              .get<int>() == 3);
  }
  {
    SeedEnv env("seven");
    const auto r = run({"optimize", "--state", "w", "--restarts", "3"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("GHZMETER_SEED") != std::string::npos);
  }
}

TEST_CASE("parallel and serial optimize print identical JSON") {
  const auto a = run({"optimize", "--state", "w", "--restarts", "40", "--seed", "9", "--format", "json"});
  const auto b = run({"optimize", "--state", "w", "--restarts", "40", "--seed", "9", "--format",
                      "json", "--serial"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("fixed seeds make optimize and random bit-reproducible") {
  const std::vector<std::string> opt{"optimize", "--state", "w", "--restarts", "50",
                                     "--seed", "11", "--format", "json"};
  CHECK(run(opt).out == run(opt).out);
  const std::vector<std::string> rnd{"random", "--samples", "5", "--restarts", "10",
                                     "--seed", "11", "--format", "json"};
  const auto r1 = run(rnd), r2 = run(rnd);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
}

TEST_CASE("scan-mu emits a rectangular CSV matching the closed form") {
  const auto r = run({"scan-mu", "--steps", "5"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"mu", "closed_form", "direct", "abs_diff"});
  for (const auto& row : rows) CHECK(row.size() == 4);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][3]) < 1e-12);
  CHECK(std::stod(rows[1][1]) == 0.0);
  CHECK(std::stod(rows[3][0]) == 0.25);
  CHECK(std::stod(rows[3][1]) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(std::stod(rows[3][2]) == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(std::stod(rows[5][1]) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::stod(rows[5][2]) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(run({"scan-mu", "--steps", "1"}).code == cli::kExitUsage);
}

TEST_CASE("bench-states reproduces the reference bars") {
  const auto j = run_json({"bench-states", "--restarts", "100"});
  REQUIRE(j["rows"].size() == 4);
  for (const auto& row : j["rows"]) CHECK(row["deviation"].get<double>() < 1e-6);
  const auto csv = parse_csv(run({"bench-states", "--restarts", "20", "--format", "csv"}).out);
  REQUIRE(csv.size() == 5);
  for (const auto& row : csv) CHECK(row.size() == csv[0].size());
}

TEST_CASE("random reports the bound and quantiles") {
  const auto j = run_json({"random", "--samples", "10", "--restarts", "10", "--seed", "1"});
  CHECK(j["bound_ok"].get<bool>());
  CHECK(j["reduced_restarts"].get<bool>());
  CHECK(j["rows"].size() == 10);
  CHECK(j["summary"]["max"].get<double>() < 2.0 - 1e-3);
  CHECK(j["summary"]["min"].get<double>() <= j["summary"]["median"].get<double>());
  const auto csv = parse_csv(run({"random", "--samples", "4", "--restarts", "5", "--format", "csv"}).out);
  REQUIRE(csv.size() == 5);
  for (const auto& row : csv) CHECK(row.size() == csv[0].size());
}

TEST_CASE("qudit subcommand") {
  auto j = run_json({"qudit", "--d", "2", "--g1", "1,0", "--g2", "0,1", "--state", "ghz",
                     "--relabel-yz"});
  CHECK(j["modulus"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  j = run_json({"qudit", "--d", "3", "--g1", "1,0", "--g2", "0,1", "--state", "mixed"});
  CHECK(j["modulus"].get<double>() < 1e-14);
  CHECK(j["symplectic"].get<int>() == 1);
  j = run_json({"qudit", "--d", "3", "--state", "ghz", "--exhaustive"});
  CHECK(j["pairs_scanned"].get<int>() == 48);
  CHECK(j["best_modulus"].get<double>() <= 2.0 + 1e-9);
}

TEST_CASE("export-state writes a file that --state-file reads back") {
  const auto path = temp_file("w.json").string();
  REQUIRE(run({"export-state", "--state", "w", "--output", path}).code == 0);
  const auto j = run_json({"eval", "--state-file", path, "--n1", "0,0,1", "--n2", "1,0,0"});
  CHECK(j["I"].get<double>() == doctest::Approx(-35.0 / 27.0).epsilon(1e-12));
  std::filesystem::remove(path);

  const auto bad = temp_file("bad.json").string();
  std::ofstream(bad) << "{\"local_dim\": 2, \"kind\": \"pure\", \"amplitudes\": [[1, 0]]}";
  const auto r = run({"eval", "--state-file", bad, "--n1", "1,0,0", "--n2", "0,1,0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("expected 8") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("--output redirects the report to a file") {
  const auto path = temp_file("scan.csv");
  const auto r = run({"scan-mu", "--steps", "3", "--output", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "mu,closed_form,direct,abs_diff");
  std::filesystem::remove(path);
}

TEST_CASE("the installed binary returns the documented exit codes") {
  const std::string bin = GHZMETER_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("eval --state ghz --n1 1,0,0 --n2 0,1,0") == 0);
  CHECK(status("eval --state nope --n1 1,0,0 --n2 0,1,0") == 2);
  CHECK(status("--help") == 0);
}
