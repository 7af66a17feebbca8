/*
 * Copyright 2026 The fbauction Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the fictitious bidding solver.
 *
 * Every object is an opaque handle created by an fba_*_create / load / solve
 * call and released with the matching fba_*_destroy. Functions that can fail
 * return an fba_status; on failure fba_last_error() describes the problem
 * (the message is per thread and valid until the next failing call on that
 * thread). Instances are immutable: the fba_instance_with_* functions return
 * new handles. Strings returned through char** must be released with
 * fba_string_free.
 */

#ifndef FBAUCTION_FBAUCTION_H_
#define FBAUCTION_FBAUCTION_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FBAUCTION_BUILDING)
#    define FBA_API __declspec(dllexport)
#  else
#    define FBA_API __declspec(dllimport)
#  endif
#else
#  define FBA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fba_status {
  FBA_OK = 0,
  FBA_ERR_INVALID_ARGUMENT = 1, /* null handle, bad index, bad option */
  FBA_ERR_PARSE = 2,            /* malformed JSON or unreadable file */
  FBA_ERR_VALIDATION = 3,       /* instance or strategy violates an invariant */
  FBA_ERR_DIMENSION = 4,        /* buffer or profile size mismatch */
  FBA_ERR_INTERNAL = 99
} fba_status;

typedef enum fba_schedule_kind { FBA_SCHEDULE_HARMONIC = 0, FBA_SCHEDULE_CONSTANT = 1 } fba_schedule_kind;

typedef enum fba_init_kind {
  FBA_INIT_UNIFORM = 0,
  FBA_INIT_ZERO = 1,
  FBA_INIT_RANDOM = 2
} fba_init_kind;

typedef struct fba_instance fba_instance;
typedef struct fba_config fba_config;
typedef struct fba_result fba_result;
typedef struct fba_certificate fba_certificate;

FBA_API const char* fba_version(void);
FBA_API const char* fba_last_error(void);
FBA_API void fba_string_free(char* s);

/* Instances */
FBA_API fba_status fba_instance_example(int number, fba_instance** out);
FBA_API fba_status fba_instance_random(uint64_t seed, size_t n_agents, size_t n_scenarios,
                                       fba_instance** out);
FBA_API fba_status fba_instance_load_file(const char* path, fba_instance** out);
FBA_API fba_status fba_instance_load_json(const char* text, fba_instance** out);
FBA_API void fba_instance_destroy(fba_instance* instance);

FBA_API fba_status fba_instance_with_grid(const fba_instance* instance, double max,
                                          size_t steps, fba_instance** out);
FBA_API fba_status fba_instance_with_alpha(const fba_instance* instance, double alpha,
                                           fba_instance** out);

FBA_API const char* fba_instance_name(const fba_instance* instance);
FBA_API size_t fba_instance_num_agents(const fba_instance* instance);
FBA_API size_t fba_instance_grid_size(const fba_instance* instance);
FBA_API double fba_instance_alpha(const fba_instance* instance);
FBA_API fba_status fba_instance_grid(const fba_instance* instance, double* out, size_t len);
FBA_API fba_status fba_instance_values(const fba_instance* instance, double* out, size_t len);
/* Notes attached at construction (e.g. agents pruned from random instances). */
FBA_API size_t fba_instance_num_notes(const fba_instance* instance);
FBA_API const char* fba_instance_note(const fba_instance* instance, size_t index);
FBA_API fba_status fba_instance_to_json(const fba_instance* instance, char** out);

/* Solver configuration. fba_config_recommended copies the settings shipped
 * with the instance (or the defaults for file instances without a "solver"
 * block). */
FBA_API fba_config* fba_config_create(void);
FBA_API fba_status fba_config_recommended(const fba_instance* instance, fba_config** out);
FBA_API void fba_config_destroy(fba_config* config);
FBA_API fba_status fba_config_set_schedule(fba_config* config, fba_schedule_kind kind, double c);
FBA_API fba_status fba_config_set_max_iterations(fba_config* config, uint64_t iterations);
FBA_API fba_status fba_config_set_epsilon_target(fba_config* config, double target);
FBA_API fba_status fba_config_clear_epsilon_target(fba_config* config);
FBA_API fba_status fba_config_set_check_interval(fba_config* config, uint64_t interval);
FBA_API fba_status fba_config_set_init(fba_config* config, fba_init_kind init);
FBA_API fba_status fba_config_set_seed(fba_config* config, uint64_t seed);
FBA_API fba_status fba_config_set_independent_player_cache(fba_config* config, int enabled);
FBA_API int fba_config_has_epsilon_target(const fba_config* config);
FBA_API fba_status fba_config_to_json(const fba_config* config, char** out);

/* Solving */
FBA_API fba_status fba_solve(const fba_instance* instance, const fba_config* config,
                             fba_result** out);
FBA_API void fba_result_destroy(fba_result* result);
FBA_API uint64_t fba_result_iterations(const fba_result* result);
FBA_API uint64_t fba_result_renormalizations(const fba_result* result);
FBA_API int fba_result_target_reached(const fba_result* result);
FBA_API double fba_result_epsilon(const fba_result* result);
/* Borrowed; lives as long as the result. */
FBA_API const fba_certificate* fba_result_certificate(const fba_result* result);
/* Weights of one agent's final mixed strategy; len must equal the grid size. */
FBA_API fba_status fba_result_strategy(const fba_result* result, size_t agent, double* out,
                                       size_t len);
/* Expected payoff of every grid bid for one agent against the final profile. */
FBA_API fba_status fba_result_payoff_curve(const fba_result* result, size_t agent,
                                           double* out, size_t len);
FBA_API size_t fba_result_trajectory_size(const fba_result* result);
FBA_API fba_status fba_result_trajectory(const fba_result* result, uint64_t* iterations,
                                         double* epsilons, size_t len);

/* Certification of an arbitrary profile given as agent-major weights
 * (num_agents * grid_size entries). */
FBA_API fba_status fba_certify(const fba_instance* instance, const double* weights,
                               size_t len, fba_certificate** out);
FBA_API void fba_certificate_destroy(fba_certificate* certificate);
FBA_API double fba_certificate_epsilon(const fba_certificate* certificate);
FBA_API size_t fba_certificate_num_agents(const fba_certificate* certificate);
FBA_API fba_status fba_certificate_gaps(const fba_certificate* certificate, double* out,
                                        size_t len);
FBA_API fba_status fba_certificate_payoffs(const fba_certificate* certificate, double* out,
                                           size_t len);
FBA_API fba_status fba_certificate_best_responses(const fba_certificate* certificate,
                                                  size_t* out, size_t len);
/* iterations < 0 and config == NULL serialize as null. */
FBA_API fba_status fba_certificate_to_json(const fba_certificate* certificate,
                                           int64_t iterations, const fba_config* config,
                                           char** out);

#ifdef __cplusplus
}
#endif

#endif /* FBAUCTION_FBAUCTION_H_ */
