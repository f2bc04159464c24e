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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "varlattice.hpp"

namespace qvars {

struct Theorem3Query {
  std::string theta;
  std::string eta;
  std::string lambda;
  RelatednessMode mode = RelatednessMode::Strict;
};

struct SystemDocument {
  VariableSystem system;
  std::optional<Theorem3Query> theorem3;
};

/// Variable-system document:
///
///   {
///     "points":    ["p0", "p1", ...],
///     "embedding": [[x, y], ...],                  optional, unit vectors
///     "variables": [{"name": "theta", "values": ["+", "-", ...],
///                    "accessible": true}, ...],
///     "group":     {"elements": [[0, 1, ...], ...]}  or
///                  {"generators": [[...], ...]},     optional
///     "theorem3":  {"theta": "...", "eta": "...", "lambda": "...",
///                   "mode": "strict" | "up_to_relabeling"}  optional
///   }
///
/// Accessible variables become the system's generators. Permutations list
/// the image index of each point. Throws Error(Config) describing the first
/// problem found; group validation failures keep their own error codes.
SystemDocument parse_system(const nlohmann::json& doc);
SystemDocument load_system(const std::filesystem::path& path);

/// Inverse of parse_system; the group is written as its full element list.
nlohmann::ordered_json serialize_system(const SystemDocument& doc);

}  // namespace qvars
