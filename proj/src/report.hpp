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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "experiments.hpp"
#include "hilbert.hpp"

namespace qvars {

using Json = nlohmann::ordered_json;

struct CsvRow {
  std::string setting;
  std::string term;
  double value = 0.0;
};

/// One experiment's outcome. Serializes deterministically: key order is
/// insertion order and doubles print in shortest round-trip form.
struct Report {
  std::string experiment;
  Json inputs = Json::object();
  std::vector<CheckResult> checks;
  Json results = Json::object();
  Json seeds = Json::object();
  std::vector<CsvRow> rows;

  bool passed() const { return all_passed(checks); }
};

std::string to_structured(const Report& report);
std::string to_csv(const Report& report);

/// Row-major array of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

}  // namespace qvars
