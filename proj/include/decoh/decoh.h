/* Copyright 2026 The decoh authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the decoh library. Handles are opaque; every function that
 * can fail returns a decoh_status and leaves a message readable through
 * decoh_last_error() on the calling thread. Strings returned through char**
 * out-parameters are owned by the caller and released with
 * decoh_string_free().
 */

#ifndef DECOH_DECOH_H_
#define DECOH_DECOH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DECOH_API __declspec(dllexport)
#else
#define DECOH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum decoh_status {
  DECOH_OK = 0,
  DECOH_ERR_INVALID_ARGUMENT = 1,
  DECOH_ERR_DIMENSION_MISMATCH = 2,
  DECOH_ERR_UNSUPPORTED = 3,
  DECOH_ERR_PARSE = 4,
  DECOH_ERR_IO = 5,
  DECOH_ERR_INTERNAL = 6
} decoh_status;

typedef struct decoh_state decoh_state;
typedef struct decoh_model decoh_model;

DECOH_API const char* decoh_version(void);

/* Message from the most recent failing call on this thread; empty string
 * when the last call succeeded. */
DECOH_API const char* decoh_last_error(void);

DECOH_API decoh_status decoh_state_create(const double* probs, const double* phases, size_t dim,
                                          decoh_state** out);
DECOH_API void decoh_state_destroy(decoh_state* state);
DECOH_API size_t decoh_state_dim(const decoh_state* state);

/* Rank-one density matrix of the state, row-major with re/im interleaved:
 * out_reim must hold 2*dim*dim doubles. */
DECOH_API decoh_status decoh_state_density(const decoh_state* state, double* out_reim);

DECOH_API decoh_status decoh_shannon_entropy(const double* probs, size_t dim, double* out);

/* Von Neumann entropy of a Hermitian density matrix given as 2*dim*dim
 * doubles, row-major, re/im interleaved. */
DECOH_API decoh_status decoh_vn_entropy(const double* rho_reim, size_t dim, double* out);

/* model_json uses the same schema as the "model" object of an experiment
 * config, e.g. {"variant":"dirichlet_martingale","concentration":4.0}. The
 * model is bound to the given state. */
DECOH_API decoh_status decoh_model_create_json(const decoh_state* state, const char* model_json,
                                               decoh_model** out);

DECOH_API void decoh_model_destroy(decoh_model* model);

/* One draw of the random transformation: trial trial_index of stream seed.
 * pi_out and phi_out must hold dim doubles each. The draw is a pure function
 * of (seed, trial_index). */
DECOH_API decoh_status decoh_sample(const decoh_model* model, uint64_t seed, uint64_t trial_index,
                                    double* pi_out, double* phi_out);

/* request_json: {"quantities":["average_density",...],
 *                "mode":{"kind":"exact"} |
 *                       {"kind":"monte_carlo","trials":N,"seed":S},
 *                "observable":{"eigenvalues":[...]}}   (needed for variance)
 * The result JSON mirrors the "estimates" object of experiment reports. */
DECOH_API decoh_status decoh_estimate_json(const decoh_model* model, const char* request_json,
                                           char** result_json);

/* request_json: {"check":"P1chain",
 *                "mode":{"kind":"exact"} |
 *                       {"kind":"monte_carlo","trials":N,"seeds":[...]},
 *                "observable":{"eigenvalues":[...]}}   (needed for P3)
 * Checks: mean_condition, P1chain, P3, P4, vN, equality. The result is one
 * proposition report ("equality": an array of them). */
DECOH_API decoh_status decoh_verify_json(const decoh_model* model, const char* request_json,
                                         char** report_json);

/* Runs a full experiment from a config JSON string and returns the report
 * JSON; no files are touched. */
DECOH_API decoh_status decoh_run_experiment_json(const char* config_json, char** report_json);

typedef struct decoh_run_options {
  const char* output_dir;   /* NULL: write outputs as configured */
  int has_seed_override;
  uint64_t seed_override;   /* replaces the seed list with {s, s+1, s+2} */
  const char* mode_override; /* NULL, "exact" or "mc" */
  int has_trials_override;
  uint64_t trials_override;
  int quiet;                /* nonzero: suppress progress lines on stderr */
} decoh_run_options;

/* File pipeline behind the command-line runner. Returns the runner's exit
 * status: 0 when every requested check passes or is inapplicable, 1 when a
 * check fails, 2 for configuration, dimension, parse, or IO errors. options
 * may be NULL. */
DECOH_API int decoh_run_experiment_file(const char* config_path,
                                        const decoh_run_options* options);

DECOH_API void decoh_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DECOH_DECOH_H_ */
