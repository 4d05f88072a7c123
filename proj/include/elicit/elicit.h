// Copyright 2026 The elicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * elicit: requirements-elicitation interview training engine.
 *
 * C interface over the C++ core. Objects are opaque handles created and
 * released through this API. Every fallible call returns an elicit_status;
 * on failure elicit_last_error() describes the problem for the calling
 * thread. Strings returned through char** out-parameters are heap-allocated
 * UTF-8 and must be released with elicit_string_free(). Structured results
 * are returned as JSON documents.
 */
#ifndef ELICIT_ELICIT_H
#define ELICIT_ELICIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(ELICIT_BUILDING_LIBRARY)
#define ELICIT_API __attribute__((visibility("default")))
#else
#define ELICIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum elicit_status {
  ELICIT_OK = 0,
  ELICIT_E_INVALID_ARGUMENT = 1,
  ELICIT_E_PARSE = 2,
  ELICIT_E_MISSING_FIELD = 3,
  ELICIT_E_DUPLICATE_ID = 4,
  ELICIT_E_INVALID_SCENARIO = 5,
  ELICIT_E_UNKNOWN_SCENARIO = 6,
  ELICIT_E_UNKNOWN_SESSION = 7,
  ELICIT_E_WRONG_PHASE = 8,
  ELICIT_E_UNKNOWN_OPTION = 9,
  ELICIT_E_NON_MONOTONIC_TIME = 10,
  ELICIT_E_ALREADY_ATTEMPTED = 11,
  ELICIT_E_QUEUE_EXHAUSTED = 12,
  ELICIT_E_NO_MATCH = 13,
  ELICIT_E_MALFORMED_LOG = 14,
  ELICIT_E_CYCLE = 15,
  ELICIT_E_EMPTY_SAMPLE = 16,
  ELICIT_E_ZERO_VARIANCE = 17,
  ELICIT_E_IO = 18,
  ELICIT_E_CONFLICT = 19,
  ELICIT_E_INTERNAL = 100
} elicit_status;

typedef enum elicit_mode { ELICIT_MODE_SPOKEN = 0, ELICIT_MODE_TEXT = 1 } elicit_mode;

typedef enum elicit_phase {
  ELICIT_PHASE_GREETING = 0,
  ELICIT_PHASE_INTERVIEW = 1,
  ELICIT_PHASE_FEEDBACK = 2,
  ELICIT_PHASE_SUMMARY = 3,
  ELICIT_PHASE_ENDED = 4
} elicit_phase;

typedef enum elicit_alternative {
  ELICIT_ALT_LESS = 0,
  ELICIT_ALT_GREATER = 1,
  ELICIT_ALT_TWO_SIDED = 2
} elicit_alternative;

typedef struct elicit_scenario elicit_scenario;
typedef struct elicit_catalog elicit_catalog;
typedef struct elicit_session elicit_session;
typedef struct elicit_server elicit_server;

/* Pluggable similarity: must be symmetric and return a value in [0, 1]. */
typedef double (*elicit_similarity_fn)(const char* a, const char* b, void* user_data);

typedef struct elicit_path_bounds {
  int64_t min_turns;
  int64_t max_turns;
  uint64_t path_count; /* saturates at UINT64_MAX */
} elicit_path_bounds;

typedef struct elicit_stat_result {
  double u_a;
  double u_b;
  double p_value;
  int exact; /* 1 when p came from the exact permutation distribution */
} elicit_stat_result;

ELICIT_API const char* elicit_version(void);
ELICIT_API const char* elicit_last_error(void);
ELICIT_API const char* elicit_status_name(elicit_status status);
ELICIT_API void elicit_string_free(char* s);

/* Catalogs */
ELICIT_API elicit_status elicit_catalog_builtin(elicit_catalog** out);
ELICIT_API elicit_status elicit_catalog_load(const char* path, elicit_catalog** out);
ELICIT_API void elicit_catalog_free(elicit_catalog* catalog);

/* Scenarios */
ELICIT_API elicit_status elicit_scenario_parse(const char* data, size_t len, elicit_scenario** out);
ELICIT_API elicit_status elicit_scenario_load(const char* path, elicit_scenario** out);
ELICIT_API void elicit_scenario_free(elicit_scenario* scenario);
ELICIT_API elicit_status elicit_scenario_info_json(const elicit_scenario* scenario, char** out_json);
/* Sets *out_ok to 1 when the scenario has no error findings. */
ELICIT_API elicit_status elicit_scenario_validate_json(const elicit_scenario* scenario,
                                                       const elicit_catalog* catalog, int* out_ok,
                                                       char** out_json);
ELICIT_API elicit_status elicit_scenario_tally_json(const elicit_scenario* scenario,
                                                    const elicit_catalog* catalog, char** out_json);
ELICIT_API elicit_status elicit_scenario_path_bounds(const elicit_scenario* scenario,
                                                     elicit_path_bounds* out);

/* Sessions. The scenario and catalog may be freed after the session starts. */
ELICIT_API elicit_status elicit_session_start(const elicit_scenario* scenario,
                                              const elicit_catalog* catalog, elicit_mode mode,
                                              uint64_t seed, int64_t now_ms, const char* session_id,
                                              elicit_session** out, char** out_greeting);
ELICIT_API void elicit_session_free(elicit_session* session);
ELICIT_API elicit_phase elicit_session_phase(const elicit_session* session);
/* Phase-dependent snapshot: prompt, feedback item or summary. */
ELICIT_API elicit_status elicit_session_state_json(const elicit_session* session, char** out_json);
/* client_rt_ms < 0 means not measured. */
ELICIT_API elicit_status elicit_session_submit_choice(elicit_session* session, const char* option_id,
                                                      int64_t now_ms, int64_t client_rt_ms,
                                                      char** out_json);
/* NULL similarity selects the default token cosine. ELICIT_E_NO_MATCH when no
 * option clears the threshold uniquely. */
ELICIT_API elicit_status elicit_session_match_utterance(const elicit_session* session,
                                                        const char* utterance, double threshold,
                                                        elicit_similarity_fn similarity,
                                                        void* user_data, char** out_option_id);
ELICIT_API elicit_status elicit_session_submit_second_attempt(elicit_session* session,
                                                              const char* option_id, int64_t now_ms,
                                                              char** out_json);
ELICIT_API elicit_status elicit_session_summary_json(const elicit_session* session, char** out_json);
ELICIT_API elicit_status elicit_session_end(elicit_session* session, int64_t now_ms, char** out_text);
ELICIT_API elicit_status elicit_session_log_jsonl(const elicit_session* session, char** out_jsonl);

/* Analytics over session log files. catalog may be NULL (builtin). */
ELICIT_API elicit_status elicit_analyze_logs_json(const char* const* log_paths, size_t count,
                                                  const elicit_catalog* catalog, char** out_json);
/* metric: ps | ps_mistake | ps_no_mistake | mistaken_turns | corrected_turns */
ELICIT_API elicit_status elicit_compare_logs_json(const char* const* paths_a, size_t count_a,
                                                  const char* const* paths_b, size_t count_b,
                                                  const char* metric, elicit_alternative alt,
                                                  char** out_json);
ELICIT_API elicit_status elicit_replay_log_json(const char* log_path, const elicit_scenario* scenario,
                                                const elicit_catalog* catalog, char** out_json);

/* Statistics and text measures. */
ELICIT_API double elicit_similarity(const char* a, const char* b);
ELICIT_API size_t elicit_word_count(const char* text);
ELICIT_API elicit_status elicit_median_iqr(const double* values, size_t count, double* out_median,
                                           double* out_iqr);
ELICIT_API elicit_status elicit_mann_whitney_u(const double* a, size_t count_a, const double* b,
                                               size_t count_b, elicit_alternative alt,
                                               elicit_stat_result* out);
/* values is row-major: respondents x items. */
ELICIT_API elicit_status elicit_cronbach_alpha(const double* values, size_t respondents, size_t items,
                                               double* out_alpha);

/* HTTP service. scenario_paths are preloaded scenario files. */
typedef struct elicit_server_config {
  const char* host;
  int port; /* 0 picks a free port */
  const char* data_dir;
  double match_threshold;
  const char* catalog_path; /* NULL: builtin */
  const char* const* scenario_paths;
  size_t scenario_count;
} elicit_server_config;

ELICIT_API elicit_status elicit_server_create(const elicit_server_config* config, elicit_server** out);
/* Binds the socket; writes the bound port. */
ELICIT_API elicit_status elicit_server_bind(elicit_server* server, int* out_port);
/* Blocks until elicit_server_stop() is called from another thread. */
ELICIT_API elicit_status elicit_server_run(elicit_server* server);
ELICIT_API void elicit_server_stop(elicit_server* server);
ELICIT_API elicit_status elicit_server_recovery_json(const elicit_server* server, char** out_json);
ELICIT_API void elicit_server_free(elicit_server* server);

#ifdef __cplusplus
}
#endif

#endif /* ELICIT_ELICIT_H */
