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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "report.hpp"

namespace qvars {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Command-line overrides applied on top of the config document.
struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> output_dir;
  std::optional<std::string> format;
  std::optional<unsigned> workers;
};

struct ValidationOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> violations;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> diagnostics;
  std::vector<std::filesystem::path> written;
};

/// Schema violations of an in-memory config; `base_dir` resolves relative
/// file references.
std::vector<std::string> config_violations(const nlohmann::json& config,
                                           const std::filesystem::path& base_dir);

/// Applies overrides to a config document.
nlohmann::json apply_overrides(nlohmann::json config, const RunOverrides& overrides);

ValidationOutcome validate_config_file(const std::filesystem::path& path,
                                       const RunOverrides& overrides = {});

/// Runs the configured experiment in memory. Throws Error(Config) on schema
/// violations.
Report run_experiment(const nlohmann::json& config, const std::filesystem::path& base_dir);

/// Full pipeline: read, validate, run, write `<output>/<kind>.json|.csv`.
/// Exit 0 when every check passes, 1 when a check fails, 2 on config errors.
RunOutcome run_config_file(const std::filesystem::path& path, const RunOverrides& overrides = {});

}  // namespace qvars
