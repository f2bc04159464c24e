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


/* C interface to the qvars library.
 *
 * Every object is an opaque handle created by a *_create / *_load function
 * and released by the matching *_destroy (which accepts NULL). Functions
 * return a qv_status; on failure qv_last_error_message() describes the
 * problem for the calling thread until its next failing call.
 *
 * Complex arrays are interleaved (re, im) pairs; matrices are row-major.
 * Functions filling a caller buffer take its capacity and report the
 * required size through `count`/`needed`, returning
 * QV_ERR_BUFFER_TOO_SMALL when it does not fit.
 */

#ifndef QVARS_QVARS_H_
#define QVARS_QVARS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QV_BUILDING_LIBRARY)
#define QV_API __declspec(dllexport)
#else
#define QV_API __declspec(dllimport)
#endif
#else
#define QV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qv_status {
  QV_OK = 0,
  QV_ERR_INVALID_ARGUMENT = 1,
  QV_ERR_DOMAIN_MISMATCH = 2,
  QV_ERR_NOT_ACCESSIBLE = 3,
  QV_ERR_NOT_CLOSED = 4,
  QV_ERR_MISSING_IDENTITY = 5,
  QV_ERR_NOT_A_BIJECTION = 6,
  QV_ERR_GROUP_TOO_LARGE = 7,
  QV_ERR_NOT_ORTHONORMAL = 8,
  QV_ERR_DUPLICATE_VALUES = 9,
  QV_ERR_NOT_UNITARY = 10,
  QV_ERR_NOT_HERMITIAN = 11,
  QV_ERR_NOT_A_PROJECTION = 12,
  QV_ERR_NOT_CONVERGED = 13,
  QV_ERR_DIMENSION_MISMATCH = 14,
  QV_ERR_NOT_NORMALIZED = 15,
  QV_ERR_SUPPORT_MISMATCH = 16,
  QV_ERR_PROBABILITY_OUT_OF_RANGE = 17,
  QV_ERR_CONFIG = 18,
  QV_ERR_IO = 19,
  QV_ERR_NULL_ARGUMENT = 100,
  QV_ERR_BUFFER_TOO_SMALL = 101,
  QV_ERR_INTERNAL = 102
} qv_status;

typedef enum qv_relatedness {
  QV_RELATED_STRICT = 0,
  QV_RELATED_UP_TO_RELABELING = 1
} qv_relatedness;

typedef enum qv_theorem3_status {
  QV_THEOREM3_CONFIRMED = 0,
  QV_THEOREM3_PRECONDITION_FAILED = 1,
  QV_THEOREM3_COUNTEREXAMPLE = 2
} qv_theorem3_status;

typedef struct qv_operator qv_operator;
typedef struct qv_state qv_state;
typedef struct qv_density qv_density;
typedef struct qv_system qv_system;
typedef struct qv_runner qv_runner;

QV_API const char* qv_version(void);
QV_API const char* qv_status_string(qv_status status);
QV_API const char* qv_last_error_message(void);

/* Hermitian operators. */
QV_API qv_status qv_operator_create(const double* re_im, size_t dim, qv_operator** out);
/* cos(angle) sigma_z + sin(angle) sigma_x. */
QV_API qv_status qv_operator_spin_in_plane(double angle_rad, qv_operator** out);
/* sigma_x⊗sigma_x + sigma_y⊗sigma_y + sigma_z⊗sigma_z. */
QV_API qv_status qv_operator_dot_product(qv_operator** out);
/* Eigenspace projection for the k-th distinct eigenvalue (ascending). */
QV_API qv_status qv_operator_projection(const qv_operator* op, size_t k, qv_operator** out);
QV_API void qv_operator_destroy(qv_operator* op);
QV_API qv_status qv_operator_dim(const qv_operator* op, size_t* dim);
QV_API qv_status qv_operator_matrix(const qv_operator* op, double* re_im, size_t capacity,
                                    size_t* count);
/* Distinct eigenvalues ascending; `multiplicities` may be NULL. */
QV_API qv_status qv_operator_spectrum(const qv_operator* op, double* values,
                                      size_t* multiplicities, size_t capacity, size_t* count);
QV_API qv_status qv_operator_is_maximal(const qv_operator* op, int* out);

/* Pure states. */
QV_API qv_status qv_state_create(const double* re_im, size_t dim, qv_state** out);
QV_API qv_status qv_state_singlet(qv_state** out);
QV_API void qv_state_destroy(qv_state* state);
QV_API qv_status qv_state_amplitudes(const qv_state* state, double* re_im, size_t capacity,
                                     size_t* count);

/* Density operators. */
QV_API qv_status qv_density_create(const double* re_im, size_t dim, qv_density** out);
QV_API qv_status qv_density_pure(const qv_state* state, qv_density** out);
QV_API void qv_density_destroy(qv_density* rho);

/* Born rule. */
QV_API qv_status qv_born_simple(const qv_state* prepared, const qv_state* outcome, double* out);
QV_API qv_status qv_born_trace(const qv_density* rho, const qv_operator* projection, double* out);
QV_API qv_status qv_expectation(const qv_density* rho, const qv_operator* op, double* out);

/* Variable systems, read from the JSON document format. */
QV_API qv_status qv_system_load(const char* path, qv_system** out);
QV_API qv_status qv_system_parse(const char* json, qv_system** out);
QV_API void qv_system_destroy(qv_system* system);
QV_API qv_status qv_system_less_or_equal(const qv_system* system, const char* alpha,
                                         const char* beta, int* out);
QV_API qv_status qv_system_equivalent(const qv_system* system, const char* alpha,
                                      const char* beta, int* out);
QV_API qv_status qv_system_is_accessible(const qv_system* system, const char* name, int* out);
QV_API qv_status qv_system_is_maximal(const qv_system* system, const char* name, int* out);
/* `related` is 0 or 1; `element` receives the group element index when 1. */
QV_API qv_status qv_system_is_related(const qv_system* system, const char* theta,
                                      const char* eta, qv_relatedness mode, int* related,
                                      size_t* element);
QV_API qv_status qv_system_theorem3(const qv_system* system, const char* theta,
                                    const char* eta, const char* lambda, qv_relatedness mode,
                                    qv_theorem3_status* out);
/* NUL-terminated JSON; `needed` includes the terminator. */
QV_API qv_status qv_system_to_json(const qv_system* system, char* buffer, size_t capacity,
                                   size_t* needed);

/* CHSH. Angles in degrees; terms are ordered AB, A'B, AB', A'B'. */
typedef struct qv_chsh_setting {
  double a;
  double a_prime;
  double b;
  double b_prime;
} qv_chsh_setting;

QV_API qv_chsh_setting qv_chsh_default_setting(void);
QV_API qv_status qv_chsh_quantum(const qv_chsh_setting* setting, double terms[4], double* s);
QV_API qv_status qv_chsh_lhv(const qv_chsh_setting* setting, uint64_t samples, uint64_t seed,
                             uint64_t stream, unsigned workers, double terms[4], double* s,
                             double* s_stderr);

/* Experiment runner driven by a JSON config file. Exit codes are 0 (all
 * checks passed), 1 (a check failed) and 2 (config error). */
QV_API qv_status qv_runner_create(const char* config_path, qv_runner** out);
QV_API void qv_runner_destroy(qv_runner* runner);
QV_API qv_status qv_runner_set_seed(qv_runner* runner, uint64_t seed);
QV_API qv_status qv_runner_set_samples(qv_runner* runner, uint64_t samples);
QV_API qv_status qv_runner_set_output_dir(qv_runner* runner, const char* dir);
/* "structured" or "csv". */
QV_API qv_status qv_runner_set_format(qv_runner* runner, const char* format);
QV_API qv_status qv_runner_set_workers(qv_runner* runner, unsigned workers);
QV_API qv_status qv_runner_validate(qv_runner* runner, int* exit_code);
QV_API qv_status qv_runner_run(qv_runner* runner, int* exit_code);
/* Diagnostics and written files from the last validate/run. Strings stay
 * valid until the next call on the runner. */
QV_API size_t qv_runner_message_count(const qv_runner* runner);
QV_API const char* qv_runner_message(const qv_runner* runner, size_t index);
QV_API size_t qv_runner_output_count(const qv_runner* runner);
QV_API const char* qv_runner_output(const qv_runner* runner, size_t index);

#ifdef __cplusplus
}
#endif

#endif  /* QVARS_QVARS_H_ */
