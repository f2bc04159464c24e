// Copyright 2026 The qvars Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "runner.hpp"

using namespace qvars;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qvars_runner_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& config) {
  const fs::path p = dir / name;
  std::ofstream(p) << config.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& l : lines) {
    if (l.find(needle) != std::string::npos) return true;
  }
  return false;
}

json spin_config() {
  return {{"kind", "spin_monte_carlo"},
          {"seed", 11},
          {"parameters", {{"samples", 20000}, {"directions_deg", {0, 45, 90}}}}};
}

json chsh_config() {
  return {{"kind", "chsh"}, {"seed", 5}, {"parameters", {{"samples", 20000}}}};
}

json system_doc() {
  return {{"points", {"a", "b", "c", "d"}},
          {"variables",
           {{{"name", "theta"}, {"values", {"+", "+", "-", "-"}}},
            {{"name", "eta"}, {"values", {"+", "-", "+", "-"}}},
            {{"name", "lambda"}, {"values", {"+", "-", "-", "+"}}, {"accessible", false}}}},
          {"group", {{"generators", {{0, 2, 1, 3}}}}},
          {"theorem3", {{"theta", "theta"}, {"eta", "eta"}, {"lambda", "lambda"}}}};
}

}  // namespace

TEST_CASE("config validation") {
  const fs::path base = fs::temp_directory_path();
  CHECK(config_violations(spin_config(), base).empty());
  CHECK(config_violations(chsh_config(), base).empty());
  CHECK(config_violations(json{{"kind", "epr_bohm"}}, base).empty());

  json no_samples = spin_config();
  no_samples["parameters"].erase("samples");
  CHECK(mentions(config_violations(no_samples, base), "parameters.samples: required for spin_monte_carlo"));

  json negative_seed = spin_config();
  negative_seed["seed"] = -3;
  CHECK(mentions(config_violations(negative_seed, base), "seed: must be a non-negative integer"));

  CHECK(mentions(config_violations(json{{"kind", "bogus"}}, base), "unknown experiment kind"));
  CHECK(mentions(config_violations(json::array(), base), "config: must be an object"));
  CHECK(mentions(config_violations(json{{"seed", 1}}, base), "kind: required"));

  json few = chsh_config();
  few["parameters"]["samples"] = 999;
  CHECK(mentions(config_violations(few, base), "parameters.samples"));
  json angle = chsh_config();
  angle["parameters"]["a"] = 360;
  CHECK(mentions(config_violations(angle, base), "parameters.a:"));

  json format = chsh_config();
  format["output"] = {{"format", "xml"}};
  CHECK(mentions(config_violations(format, base), "output.format"));

  json missing_file = {{"kind", "variable_system_check"}, {"parameters", {{"system", "nope.json"}}}};
  CHECK(mentions(config_violations(missing_file, base), "does not exist"));

  json bad_table = {{"kind", "born_table"},
                    {"parameters",
                     {{"prepared_deg", {0}},
                      {"outcome_deg", {0}},
                      {"likelihood",
                       {{"data_values", {1, -1}},
                        {"variable_values", {1, -1}},
                        {"table", {{0.5, 0.5}, {0.6, 0.5}}},
                        {"state_deg", 0},
                        {"measure_deg", 0}}}}}};
  CHECK(mentions(config_violations(bad_table, base), "parameters.likelihood.table"));
}

TEST_CASE("overrides") {
  RunOverrides o;
  o.seed = 99;
  o.samples = 1234;
  o.workers = 3;
  o.output_dir = "elsewhere";
  o.format = "csv";
  const json c = apply_overrides(spin_config(), o);
  CHECK(c["seed"] == 99);
  CHECK(c["parameters"]["samples"] == 1234);
  CHECK(c["parameters"]["workers"] == 3);
  CHECK(c["output"]["dir"] == "elsewhere");
  CHECK(c["output"]["format"] == "csv");
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  auto run = [&](const std::string& name, json config) {
    config["output"] = {{"dir", (dir / "out").string()}};
    return run_config_file(write_config(dir, name, config));
  };

  CHECK(run("epr.json", {{"kind", "epr_bohm"}}).exit_code == kExitOk);
  CHECK(run("spin.json", spin_config()).exit_code == kExitOk);

  const auto bogus = run("bogus.json", {{"kind", "bogus"}});
  CHECK(bogus.exit_code == kExitConfigError);
  CHECK(mentions(bogus.diagnostics, "unknown experiment kind"));
  CHECK(bogus.written.empty());

  CHECK(run_config_file(dir / "missing.json").exit_code == kExitConfigError);
  std::ofstream(dir / "garbage.json") << "{ not json";
  CHECK(run_config_file(dir / "garbage.json").exit_code == kExitConfigError);

  // The default CHSH angles give S = 0, so the violation check fails.
  const auto chsh = run("chsh.json", chsh_config());
  CHECK(chsh.exit_code == kExitCheckFailed);
  CHECK(mentions(chsh.diagnostics, "check failed: quantum_exceeds_classical_bound"));
  CHECK(chsh.written.size() == 1);

  json maximal = chsh_config();
  maximal["parameters"]["a_prime"] = 270;
  maximal["parameters"]["b"] = 135;
  maximal["parameters"]["b_prime"] = 225;
  CHECK(run("chsh_max.json", maximal).exit_code == kExitOk);
  const json report = json::parse(slurp(dir / "out" / "chsh.json"));
  CHECK(std::abs(report["results"]["quantum"]["S"].get<double>() - 2 * std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("malformed configs always exit 2 and never throw") {
  const fs::path dir = scratch("fuzz");
  const std::vector<json> valid = {
      spin_config(), chsh_config(), json{{"kind", "epr_bohm"}},
      json{{"kind", "variable_system_check"}, {"parameters", {{"builtin", "theorem3_demo"}}}}};
  const std::vector<json> junk = {nullptr, -1, "text", json::array(), json::object(), 1.5, true};
  int cases = 0;
  for (const auto& base : valid) {
    std::vector<std::vector<std::string>> paths = {{"kind"}, {"seed"}, {"parameters"}, {"output"}};
    if (base.contains("parameters")) {
      for (const auto& [k, v] : base["parameters"].items()) paths.push_back({"parameters", k});
    }
    for (const auto& path : paths) {
      for (const auto& j : junk) {
        json c = base;
        json* slot = &c;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) slot = &(*slot)[path[i]];
        (*slot)[path.back()] = j;
        c["output"] = json{{"dir", (dir / "out").string()}};
        if (path.front() == "output") c["output"] = j;
        // Junk that happens to be acceptable for its slot is not a case.
        if (config_violations(c, dir).empty()) continue;
        const auto out = run_config_file(write_config(dir, "c.json", c));
        ++cases;
        CHECK(out.exit_code == kExitConfigError);
        CHECK(out.written.empty());
      }
    }
  }
  CHECK(cases > 40);
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  const fs::path dir = scratch("determinism");
  for (const json& base : {spin_config(), chsh_config()}) {
    for (const char* format : {"structured", "csv"}) {
      std::vector<std::string> bodies;
      for (unsigned workers : {1u, 1u, 4u}) {
        json c = base;
        c["parameters"]["workers"] = workers;
        c["output"] = {{"dir", (dir / ("w" + std::to_string(bodies.size()))).string()},
                       {"format", format}};
        const auto out = run_config_file(write_config(dir, "c.json", c));
        REQUIRE(out.written.size() == 1);
        bodies.push_back(slurp(out.written.front()));
      }
      CHECK(bodies[0] == bodies[1]);
      CHECK(bodies[0] == bodies[2]);
    }
  }
}

TEST_CASE("csv layout") {
  const fs::path dir = scratch("csv");
  json c = {{"kind", "epr_bohm"}, {"output", {{"dir", (dir / "out").string()}, {"format", "csv"}}}};
  const auto out = run_config_file(write_config(dir, "c.json", c));
  REQUIRE(out.written.size() == 1);
  CHECK(out.written.front().extension() == ".csv");
  const std::string body = slurp(out.written.front());
  CHECK(body.rfind("setting,term,value\n", 0) == 0);
  CHECK(body.find("xi,eigenvalue_0,-2.99999999999999") != std::string::npos);
}

TEST_CASE("variable system checks from a file and inline") {
  const fs::path dir = scratch("system");
  std::ofstream(dir / "sys.json") << system_doc().dump(2);
  const json by_path = {{"kind", "variable_system_check"},
                        {"parameters", {{"system", "sys.json"}}},
                        {"output", {{"dir", (dir / "a").string()}}}};
  const auto a = run_config_file(write_config(dir, "by_path.json", by_path));
  CHECK(a.exit_code == kExitOk);
  const json report = json::parse(slurp(a.written.front()));
  CHECK(report["results"]["theorem3"]["status"] == "precondition_failed");
  CHECK(report["results"]["group"]["order"] == 2);
  CHECK(report["results"]["accessible_partitions"] == 3);

  const json inline_doc = {{"kind", "variable_system_check"},
                           {"parameters", {{"system", system_doc()}}},
                           {"output", {{"dir", (dir / "b").string()}}}};
  CHECK(run_config_file(write_config(dir, "inline.json", inline_doc)).exit_code == kExitOk);

  json broken = system_doc();
  broken["group"] = {{"elements", {{1, 0, 2, 3}}}};
  const json bad = {{"kind", "variable_system_check"}, {"parameters", {{"system", broken}}}};
  const auto v = config_violations(bad, dir);
  CHECK(mentions(v, "parameters.system"));
}

TEST_CASE("born table with likelihood") {
  const json c = {{"kind", "born_table"},
                  {"parameters",
                   {{"prepared_deg", {0, 60, 90, 180}},
                    {"outcome_deg", {0}},
                    {"likelihood",
                     {{"data_values", {1, -1}},
                      {"variable_values", {1, -1}},
                      {"table", {{0.9, 0.2}, {0.1, 0.8}}},
                      {"state_deg", 30},
                      {"measure_deg", 0}}}}}};
  const Report r = run_experiment(c, fs::temp_directory_path());
  CHECK(r.passed());
  const auto& probs = r.results["probabilities"];
  CHECK(std::abs(probs[1][0].get<double>() - 0.75) < 1e-10);
  CHECK(std::abs(probs[2][0].get<double>() - 0.5) < 1e-10);
  CHECK(std::abs(probs[3][0].get<double>()) < 1e-10);
  // E(z) = 0.8 P(+) - 0.6 P(-) with P(+) = cos^2(15 deg).
  const double p = std::pow(std::cos(15.0 * 3.14159265358979323846 / 180.0), 2);
  CHECK(std::abs(r.results["data_expectation"].get<double>() - (0.8 * p - 0.6 * (1 - p))) < 1e-10);
}
