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

#include "system_io.hpp"

#include <fstream>

#include "error.hpp"

namespace qvars {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Config, what); }

std::string label_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  bad("variable values must be strings or numbers");
}

Permutation read_permutation(const json& j, std::size_t degree, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array of point indices");
  Permutation p;
  for (const auto& x : j) {
    if (!(x.is_number_unsigned() || (x.is_number_integer() && x.get<std::int64_t>() >= 0))) {
      bad(where + " must contain non-negative integers");
    }
    p.push_back(x.get<std::size_t>());
  }
  if (p.size() != degree) {
    bad(where + " has " + std::to_string(p.size()) + " entries for " + std::to_string(degree) +
        " points");
  }
  return p;
}

}  // namespace

SystemDocument parse_system(const json& doc) {
  if (!doc.is_object()) bad("variable system document must be an object");
  if (!doc.contains("points") || !doc["points"].is_array()) bad("points: required array");
  std::vector<std::string> points;
  for (const auto& p : doc["points"]) {
    if (!p.is_string()) bad("points: entries must be strings");
    points.push_back(p.get<std::string>());
  }
  std::optional<std::vector<Direction>> embedding;
  if (doc.contains("embedding")) {
    embedding.emplace();
    for (const auto& v : doc["embedding"]) {
      if (!v.is_array()) bad("embedding: entries must be coordinate arrays");
      Direction d;
      for (const auto& x : v) {
        if (!x.is_number()) bad("embedding: coordinates must be numbers");
        d.push_back(x.get<double>());
      }
      embedding->push_back(std::move(d));
    }
  }
  PhiSpacePtr space;
  try {
    space = PhiSpace::make(std::move(points), std::move(embedding));
  } catch (const Error& e) {
    bad(std::string("points: ") + e.what());
  }

  std::vector<Variable> generators;
  std::vector<Variable> others;
  if (!doc.contains("variables") || !doc["variables"].is_array()) bad("variables: required array");
  for (const auto& v : doc["variables"]) {
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
      bad("variables: each entry needs a string name");
    }
    const std::string name = v["name"].get<std::string>();
    if (!v.contains("values") || !v["values"].is_array()) bad("variables." + name + ": values required");
    std::vector<std::string> labels;
    for (const auto& x : v["values"]) labels.push_back(label_of(x));
    const bool accessible = v.value("accessible", true);
    try {
      Variable var(name, space, std::move(labels), accessible);
      (accessible ? generators : others).push_back(std::move(var));
    } catch (const Error& e) {
      bad("variables." + name + ": " + e.what());
    }
  }

  std::optional<GroupAction> group;
  if (doc.contains("group")) {
    const json& g = doc["group"];
    const std::size_t n = space->size();
    if (g.contains("elements")) {
      std::vector<Permutation> elements;
      for (std::size_t i = 0; i < g["elements"].size(); ++i) {
        elements.push_back(
            read_permutation(g["elements"][i], n, "group.elements[" + std::to_string(i) + "]"));
      }
      group = GroupAction::verify(elements);
    } else if (g.contains("generators")) {
      std::vector<Permutation> gens;
      for (std::size_t i = 0; i < g["generators"].size(); ++i) {
        gens.push_back(read_permutation(g["generators"][i], n,
                                        "group.generators[" + std::to_string(i) + "]"));
      }
      group = GroupAction::generate(gens, n);
    } else {
      bad("group: needs 'elements' or 'generators'");
    }
  }

  SystemDocument out{VariableSystem(space, std::move(generators), std::move(group), std::move(others)),
                     std::nullopt};

  if (doc.contains("theorem3")) {
    const json& t = doc["theorem3"];
    Theorem3Query q;
    for (auto [key, slot] : {std::pair{"theta", &q.theta}, std::pair{"eta", &q.eta},
                             std::pair{"lambda", &q.lambda}}) {
      if (!t.contains(key) || !t[key].is_string()) bad(std::string("theorem3.") + key + ": required");
      *slot = t[key].get<std::string>();
      if (!out.system.find(*slot)) bad(std::string("theorem3.") + key + ": unknown variable '" + *slot + "'");
    }
    const std::string mode = t.value("mode", "strict");
    if (mode == "strict") q.mode = RelatednessMode::Strict;
    else if (mode == "up_to_relabeling") q.mode = RelatednessMode::UpToRelabeling;
    else bad("theorem3.mode: expected 'strict' or 'up_to_relabeling'");
    out.theorem3 = q;
  }
  return out;
}

SystemDocument load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read variable system '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    bad("variable system '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_system(doc);
}

nlohmann::ordered_json serialize_system(const SystemDocument& doc) {
  using OJ = nlohmann::ordered_json;
  const VariableSystem& s = doc.system;
  OJ out;
  out["points"] = s.phi()->points();
  if (s.phi()->has_embedding()) out["embedding"] = s.phi()->embedding();
  OJ vars = OJ::array();
  for (const auto& v : s.variables()) {
    vars.push_back({{"name", v.name()}, {"values", v.labels()}, {"accessible", v.accessible()}});
  }
  out["variables"] = std::move(vars);
  if (s.group()) out["group"] = {{"elements", s.group()->elements()}};
  if (doc.theorem3) {
    out["theorem3"] = {{"theta", doc.theorem3->theta},
                       {"eta", doc.theorem3->eta},
                       {"lambda", doc.theorem3->lambda},
                       {"mode", doc.theorem3->mode == RelatednessMode::Strict ? "strict"
                                                                               : "up_to_relabeling"}};
  }
  return out;
}

}  // namespace qvars
