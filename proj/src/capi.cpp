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


#include "qvars/qvars.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "born.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "hilbert.hpp"
#include "runner.hpp"
#include "system_io.hpp"

struct qv_operator {
  qvars::HermitianOperator op;
};

struct qv_state {
  qvars::StateVector state;
};

struct qv_density {
  qvars::DensityOperator rho;
};

struct qv_system {
  qvars::SystemDocument doc;
};

struct qv_runner {
  std::string config_path;
  qvars::RunOverrides overrides;
  std::vector<std::string> messages;
  std::vector<std::string> outputs;
};

namespace {

thread_local std::string g_last_error;

qv_status map_code(qvars::ErrorCode code) {
  using qvars::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QV_ERR_INVALID_ARGUMENT;
    case ErrorCode::DomainMismatch: return QV_ERR_DOMAIN_MISMATCH;
    case ErrorCode::NotAccessible: return QV_ERR_NOT_ACCESSIBLE;
    case ErrorCode::NotClosed: return QV_ERR_NOT_CLOSED;
    case ErrorCode::MissingIdentity: return QV_ERR_MISSING_IDENTITY;
    case ErrorCode::NotABijection: return QV_ERR_NOT_A_BIJECTION;
    case ErrorCode::GroupTooLarge: return QV_ERR_GROUP_TOO_LARGE;
    case ErrorCode::NotOrthonormal: return QV_ERR_NOT_ORTHONORMAL;
    case ErrorCode::DuplicateValues: return QV_ERR_DUPLICATE_VALUES;
    case ErrorCode::NotUnitary: return QV_ERR_NOT_UNITARY;
    case ErrorCode::NotHermitian: return QV_ERR_NOT_HERMITIAN;
    case ErrorCode::NotAProjection: return QV_ERR_NOT_A_PROJECTION;
    case ErrorCode::NotConverged: return QV_ERR_NOT_CONVERGED;
    case ErrorCode::DimensionMismatch: return QV_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotNormalized: return QV_ERR_NOT_NORMALIZED;
    case ErrorCode::SupportMismatch: return QV_ERR_SUPPORT_MISMATCH;
    case ErrorCode::ProbabilityOutOfRange: return QV_ERR_PROBABILITY_OUT_OF_RANGE;
    case ErrorCode::Config: return QV_ERR_CONFIG;
    case ErrorCode::Io: return QV_ERR_IO;
  }
  return QV_ERR_INTERNAL;
}

qv_status fail(qv_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
qv_status guarded(F&& body) {
  try {
    return body();
  } catch (const qvars::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QV_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QV_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QV_ERR_INTERNAL, "unknown exception");
  }
}

qv_status null_arg(const char* what) {
  return fail(QV_ERR_NULL_ARGUMENT, std::string(what) + " must not be NULL");
}

qvars::Matrix read_matrix(const double* re_im, size_t dim) {
  qvars::Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      const size_t k = 2 * (i * dim + j);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {re_im[k], re_im[k + 1]};
    }
  }
  return m;
}

qv_status write_complex(const qvars::Complex* data, size_t n, double* re_im, size_t capacity,
                        size_t* count) {
  if (!count) return null_arg("count");
  *count = 2 * n;
  if (capacity < 2 * n) return fail(QV_ERR_BUFFER_TOO_SMALL, "buffer too small");
  if (n && !re_im) return null_arg("buffer");
  for (size_t i = 0; i < n; ++i) {
    re_im[2 * i] = data[i].real();
    re_im[2 * i + 1] = data[i].imag();
  }
  return QV_OK;
}

qvars::Variable lookup(const qv_system* s, const char* name) {
  if (!name) throw qvars::Error(qvars::ErrorCode::InvalidArgument, "variable name is NULL");
  auto v = s->doc.system.find(name);
  if (!v) throw qvars::Error(qvars::ErrorCode::InvalidArgument, std::string("unknown variable '") + name + "'");
  return *v;
}

qvars::RelatednessMode to_mode(qv_relatedness mode) {
  switch (mode) {
    case QV_RELATED_STRICT: return qvars::RelatednessMode::Strict;
    case QV_RELATED_UP_TO_RELABELING: return qvars::RelatednessMode::UpToRelabeling;
  }
  throw qvars::Error(qvars::ErrorCode::InvalidArgument, "unknown relatedness mode");
}

qvars::ChshSetting to_setting(const qv_chsh_setting* s) {
  qvars::ChshSetting out;
  out.a = s->a;
  out.a_prime = s->a_prime;
  out.b = s->b;
  out.b_prime = s->b_prime;
  out.validate();
  return out;
}

template <typename Pipeline>
qv_status finish_runner(qv_runner* r, int* exit_code, Pipeline&& pipeline) {
  if (!r) return null_arg("runner");
  if (!exit_code) return null_arg("exit_code");
  return guarded([&] {
    r->messages.clear();
    r->outputs.clear();
    *exit_code = qvars::kExitConfigError;
    pipeline();
    return QV_OK;
  });
}

}  // namespace

extern "C" {

const char* qv_version(void) { return "0.1.0"; }

const char* qv_status_string(qv_status status) {
  switch (status) {
    case QV_OK: return "ok";
    case QV_ERR_NULL_ARGUMENT: return "null_argument";
    case QV_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case QV_ERR_INTERNAL: return "internal_error";
    default: break;
  }
  if (status >= QV_ERR_INVALID_ARGUMENT && status <= QV_ERR_IO) {
    return qvars::to_string(static_cast<qvars::ErrorCode>(status - 1));
  }
  return "unknown";
}

const char* qv_last_error_message(void) { return g_last_error.c_str(); }

// --- operators ---------------------------------------------------------------

qv_status qv_operator_create(const double* re_im, size_t dim, qv_operator** out) {
  if (!re_im) return null_arg("re_im");
  if (!out) return null_arg("out");
  if (dim == 0) return fail(QV_ERR_INVALID_ARGUMENT, "dimension must be positive");
  return guarded([&] {
    *out = new qv_operator{qvars::HermitianOperator::make(read_matrix(re_im, dim))};
    return QV_OK;
  });
}

qv_status qv_operator_spin_in_plane(double angle_rad, qv_operator** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_operator{qvars::spin_operator_in_plane(angle_rad)};
    return QV_OK;
  });
}

qv_status qv_operator_dot_product(qv_operator** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_operator{qvars::dot_product_operator()};
    return QV_OK;
  });
}

qv_status qv_operator_projection(const qv_operator* op, size_t k, qv_operator** out) {
  if (!op) return null_arg("op");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto sd = qvars::spectral_decompose(op->op);
    if (k >= sd.projections.size()) {
      return fail(QV_ERR_INVALID_ARGUMENT, "eigenvalue index out of range");
    }
    *out = new qv_operator{sd.projections[k]};
    return QV_OK;
  });
}

void qv_operator_destroy(qv_operator* op) { delete op; }

qv_status qv_operator_dim(const qv_operator* op, size_t* dim) {
  if (!op) return null_arg("op");
  if (!dim) return null_arg("dim");
  *dim = op->op.dim();
  return QV_OK;
}

qv_status qv_operator_matrix(const qv_operator* op, double* re_im, size_t capacity,
                             size_t* count) {
  if (!op) return null_arg("op");
  // Row-major copy; Eigen stores column-major.
  const qvars::Matrix rm = op->op.matrix().transpose();
  return write_complex(rm.data(), static_cast<size_t>(rm.size()), re_im, capacity, count);
}

qv_status qv_operator_spectrum(const qv_operator* op, double* values, size_t* multiplicities,
                               size_t capacity, size_t* count) {
  if (!op) return null_arg("op");
  if (!count) return null_arg("count");
  return guarded([&] {
    const auto sd = qvars::spectral_decompose(op->op);
    *count = sd.eigenvalues.size();
    if (capacity < *count) return fail(QV_ERR_BUFFER_TOO_SMALL, "buffer too small");
    if (!values) return null_arg("values");
    for (size_t k = 0; k < *count; ++k) {
      values[k] = sd.eigenvalues[k];
      if (multiplicities) multiplicities[k] = sd.multiplicities[k];
    }
    return QV_OK;
  });
}

qv_status qv_operator_is_maximal(const qv_operator* op, int* out) {
  if (!op) return null_arg("op");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::is_maximal_operator(op->op) ? 1 : 0;
    return QV_OK;
  });
}

// --- states ------------------------------------------------------------------

qv_status qv_state_create(const double* re_im, size_t dim, qv_state** out) {
  if (!re_im) return null_arg("re_im");
  if (!out) return null_arg("out");
  if (dim == 0) return fail(QV_ERR_INVALID_ARGUMENT, "dimension must be positive");
  return guarded([&] {
    qvars::Vector v(static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = {re_im[2 * i], re_im[2 * i + 1]};
    *out = new qv_state{qvars::StateVector::make(v)};
    return QV_OK;
  });
}

qv_status qv_state_singlet(qv_state** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_state{qvars::singlet_state()};
    return QV_OK;
  });
}

void qv_state_destroy(qv_state* state) { delete state; }

qv_status qv_state_amplitudes(const qv_state* state, double* re_im, size_t capacity,
                              size_t* count) {
  if (!state) return null_arg("state");
  const auto& a = state->state.amplitudes();
  return write_complex(a.data(), static_cast<size_t>(a.size()), re_im, capacity, count);
}

qv_status qv_density_create(const double* re_im, size_t dim, qv_density** out) {
  if (!re_im) return null_arg("re_im");
  if (!out) return null_arg("out");
  if (dim == 0) return fail(QV_ERR_INVALID_ARGUMENT, "dimension must be positive");
  return guarded([&] {
    *out = new qv_density{qvars::DensityOperator::make(read_matrix(re_im, dim))};
    return QV_OK;
  });
}

qv_status qv_density_pure(const qv_state* state, qv_density** out) {
  if (!state) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_density{qvars::DensityOperator::pure(state->state)};
    return QV_OK;
  });
}

void qv_density_destroy(qv_density* rho) { delete rho; }

// --- Born rule ---------------------------------------------------------------

qv_status qv_born_simple(const qv_state* prepared, const qv_state* outcome, double* out) {
  if (!prepared || !outcome) return null_arg("state");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::born_simple(prepared->state, outcome->state);
    return QV_OK;
  });
}

qv_status qv_born_trace(const qv_density* rho, const qv_operator* projection, double* out) {
  if (!rho) return null_arg("rho");
  if (!projection) return null_arg("projection");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::born_trace(rho->rho, projection->op);
    return QV_OK;
  });
}

qv_status qv_expectation(const qv_density* rho, const qv_operator* op, double* out) {
  if (!rho) return null_arg("rho");
  if (!op) return null_arg("op");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::expectation(rho->rho, op->op);
    return QV_OK;
  });
}

// --- variable systems --------------------------------------------------------

qv_status qv_system_load(const char* path, qv_system** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_system{qvars::load_system(path)};
    return QV_OK;
  });
}

qv_status qv_system_parse(const char* json, qv_system** out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(QV_ERR_CONFIG, std::string("invalid JSON: ") + e.what());
    }
    *out = new qv_system{qvars::parse_system(doc)};
    return QV_OK;
  });
}

void qv_system_destroy(qv_system* system) { delete system; }

qv_status qv_system_less_or_equal(const qv_system* system, const char* alpha, const char* beta,
                                  int* out) {
  if (!system) return null_arg("system");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::less_or_equal(lookup(system, alpha), lookup(system, beta)) ? 1 : 0;
    return QV_OK;
  });
}

qv_status qv_system_equivalent(const qv_system* system, const char* alpha, const char* beta,
                               int* out) {
  if (!system) return null_arg("system");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::equivalent(lookup(system, alpha), lookup(system, beta)) ? 1 : 0;
    return QV_OK;
  });
}

qv_status qv_system_is_accessible(const qv_system* system, const char* name, int* out) {
  if (!system) return null_arg("system");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = system->doc.system.is_accessible(lookup(system, name)) ? 1 : 0;
    return QV_OK;
  });
}

qv_status qv_system_is_maximal(const qv_system* system, const char* name, int* out) {
  if (!system) return null_arg("system");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = qvars::is_maximal(lookup(system, name), system->doc.system) ? 1 : 0;
    return QV_OK;
  });
}

qv_status qv_system_is_related(const qv_system* system, const char* theta, const char* eta,
                               qv_relatedness mode, int* related, size_t* element) {
  if (!system) return null_arg("system");
  if (!related) return null_arg("related");
  return guarded([&] {
    const auto& group = system->doc.system.group();
    if (!group) return fail(QV_ERR_INVALID_ARGUMENT, "system declares no group");
    const auto w = qvars::is_related(lookup(system, theta), lookup(system, eta), *group, to_mode(mode));
    *related = w ? 1 : 0;
    if (w && element) *element = *w;
    return QV_OK;
  });
}

qv_status qv_system_theorem3(const qv_system* system, const char* theta, const char* eta,
                             const char* lambda, qv_relatedness mode, qv_theorem3_status* out) {
  if (!system) return null_arg("system");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = qvars::check_theorem3(system->doc.system, lookup(system, theta),
                                         lookup(system, eta), lookup(system, lambda), to_mode(mode));
    switch (r.status) {
      case qvars::Theorem3Report::Status::Confirmed: *out = QV_THEOREM3_CONFIRMED; break;
      case qvars::Theorem3Report::Status::PreconditionFailed: *out = QV_THEOREM3_PRECONDITION_FAILED; break;
      case qvars::Theorem3Report::Status::Counterexample: *out = QV_THEOREM3_COUNTEREXAMPLE; break;
    }
    return QV_OK;
  });
}

qv_status qv_system_to_json(const qv_system* system, char* buffer, size_t capacity,
                            size_t* needed) {
  if (!system) return null_arg("system");
  if (!needed) return null_arg("needed");
  return guarded([&] {
    const std::string text = qvars::serialize_system(system->doc).dump(2);
    *needed = text.size() + 1;
    if (capacity < *needed) return fail(QV_ERR_BUFFER_TOO_SMALL, "buffer too small");
    if (!buffer) return null_arg("buffer");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return QV_OK;
  });
}

// --- CHSH --------------------------------------------------------------------

qv_chsh_setting qv_chsh_default_setting(void) {
  const qvars::ChshSetting s;
  return {s.a, s.a_prime, s.b, s.b_prime};
}

qv_status qv_chsh_quantum(const qv_chsh_setting* setting, double terms[4], double* s) {
  if (!setting) return null_arg("setting");
  if (!terms || !s) return null_arg("output");
  return guarded([&] {
    const auto r = qvars::chsh_quantum(to_setting(setting));
    for (int k = 0; k < 4; ++k) terms[k] = r.terms[k];
    *s = r.s;
    return QV_OK;
  });
}

qv_status qv_chsh_lhv(const qv_chsh_setting* setting, uint64_t samples, uint64_t seed,
                      uint64_t stream, unsigned workers, double terms[4], double* s,
                      double* s_stderr) {
  if (!setting) return null_arg("setting");
  if (!terms || !s) return null_arg("output");
  return guarded([&] {
    const auto r = qvars::chsh_lhv(to_setting(setting), samples, qvars::RngStream(seed, stream),
                                   workers);
    for (int k = 0; k < 4; ++k) terms[k] = r.terms[k];
    *s = r.s;
    if (s_stderr) *s_stderr = r.s_stderr;
    return QV_OK;
  });
}

// --- runner ------------------------------------------------------------------

qv_status qv_runner_create(const char* config_path, qv_runner** out) {
  if (!config_path) return null_arg("config_path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new qv_runner{config_path, {}, {}, {}};
    return QV_OK;
  });
}

void qv_runner_destroy(qv_runner* runner) { delete runner; }

qv_status qv_runner_set_seed(qv_runner* runner, uint64_t seed) {
  if (!runner) return null_arg("runner");
  runner->overrides.seed = seed;
  return QV_OK;
}

qv_status qv_runner_set_samples(qv_runner* runner, uint64_t samples) {
  if (!runner) return null_arg("runner");
  runner->overrides.samples = samples;
  return QV_OK;
}

qv_status qv_runner_set_output_dir(qv_runner* runner, const char* dir) {
  if (!runner) return null_arg("runner");
  if (!dir) return null_arg("dir");
  runner->overrides.output_dir = dir;
  return QV_OK;
}

qv_status qv_runner_set_format(qv_runner* runner, const char* format) {
  if (!runner) return null_arg("runner");
  if (!format) return null_arg("format");
  const std::string f = format;
  if (f != "structured" && f != "csv") {
    return fail(QV_ERR_INVALID_ARGUMENT, "format must be 'structured' or 'csv'");
  }
  runner->overrides.format = f;
  return QV_OK;
}

qv_status qv_runner_set_workers(qv_runner* runner, unsigned workers) {
  if (!runner) return null_arg("runner");
  if (workers == 0) return fail(QV_ERR_INVALID_ARGUMENT, "workers must be at least 1");
  runner->overrides.workers = workers;
  return QV_OK;
}

qv_status qv_runner_validate(qv_runner* runner, int* exit_code) {
  return finish_runner(runner, exit_code, [&] {
    const auto v = qvars::validate_config_file(runner->config_path, runner->overrides);
    runner->messages = v.violations;
    *exit_code = v.exit_code;
  });
}

qv_status qv_runner_run(qv_runner* runner, int* exit_code) {
  return finish_runner(runner, exit_code, [&] {
    const auto r = qvars::run_config_file(runner->config_path, runner->overrides);
    runner->messages = r.diagnostics;
    for (const auto& p : r.written) runner->outputs.push_back(p.string());
    *exit_code = r.exit_code;
  });
}

size_t qv_runner_message_count(const qv_runner* runner) {
  return runner ? runner->messages.size() : 0;
}

const char* qv_runner_message(const qv_runner* runner, size_t index) {
  if (!runner || index >= runner->messages.size()) return nullptr;
  return runner->messages[index].c_str();
}

size_t qv_runner_output_count(const qv_runner* runner) {
  return runner ? runner->outputs.size() : 0;
}

const char* qv_runner_output(const qv_runner* runner, size_t index) {
  if (!runner || index >= runner->outputs.size()) return nullptr;
  return runner->outputs[index].c_str();
}

}  // extern "C"
