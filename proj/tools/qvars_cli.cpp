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


// qvars command-line driver: `qvars run|validate --config FILE [options]`.

#include <cstdio>
#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qvars/qvars.h"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::optional<unsigned> workers;
};

void add_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "experiment config (JSON)")->required();
  cmd->add_option("--seed", o.seed, "override the RNG seed");
  cmd->add_option("--samples", o.samples, "override the sample count");
  cmd->add_option("--output", o.output, "directory for the report");
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"structured", "csv"}));
  cmd->add_option("--workers", o.workers, "worker threads for Monte Carlo")
      ->check(CLI::PositiveNumber);
}

int report_error(qv_status status) {
  std::fprintf(stderr, "qvars: %s: %s\n", qv_status_string(status), qv_last_error_message());
  return 2;
}

int dispatch(const Options& o, bool run) {
  qv_runner* runner = nullptr;
  qv_status st = qv_runner_create(o.config.c_str(), &runner);
  if (st != QV_OK) return report_error(st);

  if (o.seed) st = qv_runner_set_seed(runner, *o.seed);
  if (st == QV_OK && o.samples) st = qv_runner_set_samples(runner, *o.samples);
  if (st == QV_OK && o.output) st = qv_runner_set_output_dir(runner, o.output->c_str());
  if (st == QV_OK && o.format) st = qv_runner_set_format(runner, o.format->c_str());
  if (st == QV_OK && o.workers) st = qv_runner_set_workers(runner, *o.workers);

  int exit_code = 2;
  if (st == QV_OK) st = run ? qv_runner_run(runner, &exit_code) : qv_runner_validate(runner, &exit_code);
  if (st != QV_OK) {
    qv_runner_destroy(runner);
    return report_error(st);
  }
  for (size_t i = 0; i < qv_runner_message_count(runner); ++i) {
    std::fprintf(stderr, "qvars: %s\n", qv_runner_message(runner, i));
  }
  for (size_t i = 0; i < qv_runner_output_count(runner); ++i) {
    std::printf("wrote %s\n", qv_runner_output(runner, i));
  }
  if (!run && exit_code == 0) std::printf("%s: ok\n", o.config.c_str());
  qv_runner_destroy(runner);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run and validate quantum-variable experiments"};
  app.require_subcommand(1);
  Options run_opts;
  Options validate_opts;
  CLI::App* run = app.add_subcommand("run", "run an experiment and write its report");
  CLI::App* validate = app.add_subcommand("validate", "check a config without running it");
  add_options(run, run_opts);
  add_options(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return run->parsed() ? dispatch(run_opts, true) : dispatch(validate_opts, false);
}
