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

#include "elicit/elicit.h"

#include <cstring>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "elicit/engine.hpp"
#include "elicit/error.hpp"
#include "elicit/views.hpp"
#include "elicit/report.hpp"
#include "elicit/scenario.hpp"
#include "elicit/service.hpp"
#include "elicit/session_log.hpp"
#include "elicit/stats.hpp"

using namespace elicit;
using ojson = nlohmann::ordered_json;

struct elicit_scenario {
  std::shared_ptr<const Scenario> value;
};

struct elicit_catalog {
  std::shared_ptr<const FeedbackCatalog> value;
};

struct elicit_session {
  Session value;
};

struct elicit_server {
  std::string host;
  int port = 0;
  std::unique_ptr<service::Service> service;
  std::unique_ptr<service::HttpServer> http;
};

namespace {

thread_local std::string g_last_error;

elicit_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return ELICIT_E_INVALID_ARGUMENT;
    case ErrorCode::kParse: return ELICIT_E_PARSE;
    case ErrorCode::kMissingField: return ELICIT_E_MISSING_FIELD;
    case ErrorCode::kDuplicateId: return ELICIT_E_DUPLICATE_ID;
    case ErrorCode::kInvalidScenario: return ELICIT_E_INVALID_SCENARIO;
    case ErrorCode::kUnknownScenario: return ELICIT_E_UNKNOWN_SCENARIO;
    case ErrorCode::kUnknownSession: return ELICIT_E_UNKNOWN_SESSION;
    case ErrorCode::kWrongPhase: return ELICIT_E_WRONG_PHASE;
    case ErrorCode::kUnknownOption: return ELICIT_E_UNKNOWN_OPTION;
    case ErrorCode::kNonMonotonicTime: return ELICIT_E_NON_MONOTONIC_TIME;
    case ErrorCode::kAlreadyAttempted: return ELICIT_E_ALREADY_ATTEMPTED;
    case ErrorCode::kQueueExhausted: return ELICIT_E_QUEUE_EXHAUSTED;
    case ErrorCode::kNoMatch: return ELICIT_E_NO_MATCH;
    case ErrorCode::kMalformedLog: return ELICIT_E_MALFORMED_LOG;
    case ErrorCode::kCycle: return ELICIT_E_CYCLE;
    case ErrorCode::kEmptySample: return ELICIT_E_EMPTY_SAMPLE;
    case ErrorCode::kZeroVariance: return ELICIT_E_ZERO_VARIANCE;
    case ErrorCode::kIo: return ELICIT_E_IO;
    case ErrorCode::kConflict: return ELICIT_E_CONFLICT;
  }
  return ELICIT_E_INTERNAL;
}

elicit_status fail(elicit_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
elicit_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ELICIT_OK;
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(ELICIT_E_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(ELICIT_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ELICIT_E_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

std::shared_ptr<const FeedbackCatalog> catalog_or_builtin(const elicit_catalog* c) {
  if (c) return c->value;
  return std::shared_ptr<const FeedbackCatalog>(&FeedbackCatalog::builtin(), [](auto*) {});
}




std::vector<SessionLog> load_logs(const char* const* paths, size_t count) {
  require(paths || count == 0, "null path list");
  std::vector<SessionLog> logs;
  for (size_t i = 0; i < count; ++i) {
    require(paths[i] != nullptr, "null log path");
    logs.push_back(load_log(paths[i]));
  }
  return logs;
}

stats::Alternative to_alternative(elicit_alternative alt) {
  switch (alt) {
    case ELICIT_ALT_LESS: return stats::Alternative::kLess;
    case ELICIT_ALT_GREATER: return stats::Alternative::kGreater;
    case ELICIT_ALT_TWO_SIDED: return stats::Alternative::kTwoSided;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown alternative");
}

}  // namespace

extern "C" {

const char* elicit_version(void) { return "0.1.0"; }

const char* elicit_last_error(void) { return g_last_error.c_str(); }

const char* elicit_status_name(elicit_status status) {
  switch (status) {
    case ELICIT_OK: return "ok";
    case ELICIT_E_INTERNAL: return "internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::kConflict); ++c) {
    if (to_status(static_cast<ErrorCode>(c)) == status) {
      return to_string(static_cast<ErrorCode>(c)).data();
    }
  }
  return "unknown";
}

void elicit_string_free(char* s) { std::free(s); }

elicit_status elicit_catalog_builtin(elicit_catalog** out) {
  return guarded([&] {
    require(out, "null out");
    *out = new elicit_catalog{std::make_shared<const FeedbackCatalog>(FeedbackCatalog::builtin())};
  });
}

elicit_status elicit_catalog_load(const char* path, elicit_catalog** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new elicit_catalog{std::make_shared<const FeedbackCatalog>(FeedbackCatalog::load(path))};
  });
}

void elicit_catalog_free(elicit_catalog* catalog) { delete catalog; }

elicit_status elicit_scenario_parse(const char* data, size_t len, elicit_scenario** out) {
  return guarded([&] {
    require((data || len == 0) && out, "null argument");
    *out = new elicit_scenario{
        std::make_shared<const Scenario>(parse_scenario(std::string_view(data ? data : "", len)))};
  });
}

elicit_status elicit_scenario_load(const char* path, elicit_scenario** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new elicit_scenario{std::make_shared<const Scenario>(load_scenario(path))};
  });
}

void elicit_scenario_free(elicit_scenario* scenario) { delete scenario; }

elicit_status elicit_scenario_info_json(const elicit_scenario* scenario, char** out_json) {
  return guarded([&] {
    require(scenario && out_json, "null argument");
    const Scenario& s = *scenario->value;
    ojson j = {{"id", s.id},
               {"title", s.title},
               {"intro", s.intro},
               {"start_turn", s.start_turn},
               {"turns", s.turns.size()}};
    *out_json = dup_string(j.dump());
  });
}

elicit_status elicit_scenario_validate_json(const elicit_scenario* scenario,
                                            const elicit_catalog* catalog, int* out_ok,
                                            char** out_json) {
  return guarded([&] {
    require(scenario && out_json, "null argument");
    const ValidationReport report = validate(*scenario->value, *catalog_or_builtin(catalog));
    if (out_ok) *out_ok = report.ok ? 1 : 0;
    *out_json = dup_string(to_json(report).dump());
  });
}

elicit_status elicit_scenario_tally_json(const elicit_scenario* scenario,
                                         const elicit_catalog* catalog, char** out_json) {
  return guarded([&] {
    require(scenario && out_json, "null argument");
    const auto cat = catalog_or_builtin(catalog);
    const auto tally = tally_mistakes(*scenario->value);
    ojson rows = ojson::array();
    std::map<MistakeClass, std::int64_t> per_class;
    for (MistakeClass c : kAllMistakeClasses) per_class[c] = 0;
    std::int64_t total = 0;
    for (const auto& [id, e] : cat->entries()) {
      const auto it = tally.find(id);
      const std::int64_t n = it == tally.end() ? 0 : it->second;
      rows.push_back({{"id", id},
                      {"type", e.type.name},
                      {"class", std::string(to_string(e.type.mistake_class))},
                      {"occurrences", n}});
      per_class[e.type.mistake_class] += n;
      total += n;
    }
    ojson unknown = ojson::array();
    for (const auto& [id, n] : tally) {
      if (!cat->contains(id)) unknown.push_back({{"id", id}, {"occurrences", n}});
    }
    ojson classes = ojson::array();
    for (const auto& [c, n] : per_class) {
      classes.push_back({{"class", std::string(to_string(c))}, {"occurrences", n}});
    }
    ojson j = {{"scenario_id", scenario->value->id},
               {"types", rows},
               {"classes", classes},
               {"unknown", unknown},
               {"total", total}};
    *out_json = dup_string(j.dump());
  });
}

elicit_status elicit_scenario_path_bounds(const elicit_scenario* scenario, elicit_path_bounds* out) {
  return guarded([&] {
    require(scenario && out, "null argument");
    const PathBounds b = path_bounds(*scenario->value);
    *out = {b.min_turns, b.max_turns, b.path_count};
  });
}

elicit_status elicit_session_start(const elicit_scenario* scenario, const elicit_catalog* catalog,
                                   elicit_mode mode, uint64_t seed, int64_t now_ms,
                                   const char* session_id, elicit_session** out,
                                   char** out_greeting) {
  return guarded([&] {
    require(scenario && out, "null argument");
    require(mode == ELICIT_MODE_SPOKEN || mode == ELICIT_MODE_TEXT, "unknown mode");
    auto [session, greeting] =
        Session::start(scenario->value, catalog_or_builtin(catalog),
                       mode == ELICIT_MODE_TEXT ? SessionMode::kText : SessionMode::kSpoken, seed,
                       now_ms, session_id ? session_id : "local");
    char* g = out_greeting ? dup_string(greeting) : nullptr;
    *out = new elicit_session{std::move(session)};
    if (out_greeting) *out_greeting = g;
  });
}

void elicit_session_free(elicit_session* session) { delete session; }

elicit_phase elicit_session_phase(const elicit_session* session) {
  if (!session) return ELICIT_PHASE_ENDED;
  return static_cast<elicit_phase>(session->value.phase());
}

elicit_status elicit_session_state_json(const elicit_session* session, char** out_json) {
  return guarded([&] {
    require(session && out_json, "null argument");
    *out_json = dup_string(state_json(session->value).dump());
  });
}

elicit_status elicit_session_submit_choice(elicit_session* session, const char* option_id,
                                           int64_t now_ms, int64_t client_rt_ms, char** out_json) {
  return guarded([&] {
    require(session && option_id, "null argument");
    std::optional<std::int64_t> rt;
    if (client_rt_ms >= 0) rt = client_rt_ms;
    const ChoiceResult r = session->value.submit_choice(option_id, now_ms, rt);
    if (out_json) {
      ojson j = {{"option_id", option_id},
                 {"stakeholder_reply", r.stakeholder_reply ? ojson(*r.stakeholder_reply) : ojson()},
                 {"end", !r.stakeholder_reply.has_value()},
                 {"phase", std::string(to_string(r.next_phase))}};
      *out_json = dup_string(j.dump());
    }
  });
}

elicit_status elicit_session_match_utterance(const elicit_session* session, const char* utterance,
                                             double threshold, elicit_similarity_fn similarity,
                                             void* user_data, char** out_option_id) {
  return guarded([&] {
    require(session && utterance && out_option_id, "null argument");
    SimilarityProvider provider = default_similarity();
    if (similarity) {
      provider = [similarity, user_data](std::string_view a, std::string_view b) {
        return similarity(std::string(a).c_str(), std::string(b).c_str(), user_data);
      };
    }
    auto matched = session->value.match_utterance(utterance, provider, threshold);
    if (!matched) throw Error(ErrorCode::kNoMatch, "utterance does not match any option");
    *out_option_id = dup_string(*matched);
  });
}

elicit_status elicit_session_submit_second_attempt(elicit_session* session, const char* option_id,
                                                   int64_t now_ms, char** out_json) {
  return guarded([&] {
    require(session && option_id, "null argument");
    const AttemptResult r = session->value.submit_second_attempt(option_id, now_ms);
    if (out_json) {
      ojson j = {{"verdict", std::string(to_string(r.verdict))},
                 {"phase", std::string(to_string(r.next_phase))}};
      if (r.correct_option_id) j["correct_option_id"] = *r.correct_option_id;
      *out_json = dup_string(j.dump());
    }
  });
}

elicit_status elicit_session_summary_json(const elicit_session* session, char** out_json) {
  return guarded([&] {
    require(session && out_json, "null argument");
    *out_json = dup_string(to_json(session->value.summary()).dump());
  });
}

elicit_status elicit_session_end(elicit_session* session, int64_t now_ms, char** out_text) {
  return guarded([&] {
    require(session, "null argument");
    const std::string text = session->value.end(now_ms);
    if (out_text) *out_text = dup_string(text);
  });
}

elicit_status elicit_session_log_jsonl(const elicit_session* session, char** out_jsonl) {
  return guarded([&] {
    require(session && out_jsonl, "null argument");
    *out_jsonl = dup_string(to_jsonl(log_of(session->value)));
  });
}

elicit_status elicit_analyze_logs_json(const char* const* log_paths, size_t count,
                                       const elicit_catalog* catalog, char** out_json) {
  return guarded([&] {
    require(out_json, "null argument");
    const auto logs = load_logs(log_paths, count);
    const auto report = report::analyze(logs, *catalog_or_builtin(catalog));
    *out_json = dup_string(report::to_json(report).dump());
  });
}

elicit_status elicit_compare_logs_json(const char* const* paths_a, size_t count_a,
                                       const char* const* paths_b, size_t count_b,
                                       const char* metric, elicit_alternative alt,
                                       char** out_json) {
  return guarded([&] {
    require(metric && out_json, "null argument");
    auto m = report::parse_metric(metric);
    if (!m) throw Error(ErrorCode::kInvalidArgument, std::string("unknown metric '") + metric + "'");
    const auto a = load_logs(paths_a, count_a);
    const auto b = load_logs(paths_b, count_b);
    const auto report = report::compare_logs(a, b, *m, to_alternative(alt));
    *out_json = dup_string(report::to_json(report).dump());
  });
}

elicit_status elicit_replay_log_json(const char* log_path, const elicit_scenario* scenario,
                                     const elicit_catalog* catalog, char** out_json) {
  return guarded([&] {
    require(log_path && scenario && out_json, "null argument");
    const SessionLog log = load_log(log_path);
    const ReplayResult r = replay(log, scenario->value, catalog_or_builtin(catalog));
    ojson j = {{"session_id", log.session_id},
               {"closed", log.closed()},
               {"regenerated_events", r.regenerated_events},
               {"phase", std::string(to_string(r.session.phase()))}};
    if (r.session.phase() == Phase::kSummary || r.session.phase() == Phase::kEnded) {
      j["summary"] = to_json(r.session.summary());
    }
    *out_json = dup_string(j.dump());
  });
}

double elicit_similarity(const char* a, const char* b) {
  if (!a || !b) return 0.0;
  return token_cosine_similarity(a, b);
}

size_t elicit_word_count(const char* text) { return text ? word_count(text) : 0; }

elicit_status elicit_median_iqr(const double* values, size_t count, double* out_median,
                                double* out_iqr) {
  return guarded([&] {
    require((values || count == 0) && out_median && out_iqr, "null argument");
    const auto r = stats::median_iqr(std::span<const double>(values, count));
    *out_median = r.median;
    *out_iqr = r.iqr;
  });
}

elicit_status elicit_mann_whitney_u(const double* a, size_t count_a, const double* b, size_t count_b,
                                    elicit_alternative alt, elicit_stat_result* out) {
  return guarded([&] {
    require((a || count_a == 0) && (b || count_b == 0) && out, "null argument");
    const auto r = stats::mann_whitney_u(std::span<const double>(a, count_a),
                                         std::span<const double>(b, count_b), to_alternative(alt));
    *out = {r.statistic, r.u_b, r.p_value, r.method == stats::PValueMethod::kExact ? 1 : 0};
  });
}

elicit_status elicit_cronbach_alpha(const double* values, size_t respondents, size_t items,
                                    double* out_alpha) {
  return guarded([&] {
    require((values || respondents * items == 0) && out_alpha, "null argument");
    std::vector<std::vector<double>> rows(respondents, std::vector<double>(items));
    for (size_t i = 0; i < respondents; ++i) {
      for (size_t j = 0; j < items; ++j) rows[i][j] = values[i * items + j];
    }
    *out_alpha = stats::cronbach_alpha(rows);
  });
}

elicit_status elicit_server_create(const elicit_server_config* config, elicit_server** out) {
  return guarded([&] {
    require(config && out, "null argument");
    service::ServiceConfig sc;
    if (config->data_dir) sc.data_dir = config->data_dir;
    if (config->match_threshold > 0.0) sc.match_threshold = config->match_threshold;
    if (config->catalog_path) {
      sc.catalog = std::make_shared<const FeedbackCatalog>(FeedbackCatalog::load(config->catalog_path));
    }
    for (size_t i = 0; i < config->scenario_count; ++i) {
      require(config->scenario_paths && config->scenario_paths[i], "null scenario path");
      sc.scenario_files.emplace_back(config->scenario_paths[i]);
    }
    auto server = std::make_unique<elicit_server>();
    server->host = config->host ? config->host : "127.0.0.1";
    server->port = config->port;
    server->service = std::make_unique<service::Service>(std::move(sc));
    server->http = std::make_unique<service::HttpServer>(*server->service);
    *out = server.release();
  });
}

elicit_status elicit_server_bind(elicit_server* server, int* out_port) {
  return guarded([&] {
    require(server, "null argument");
    const int port = server->http->bind(server->host, server->port);
    if (port < 0) {
      throw Error(ErrorCode::kIo, "cannot bind " + server->host + ":" + std::to_string(server->port));
    }
    server->port = port;
    if (out_port) *out_port = port;
  });
}

elicit_status elicit_server_run(elicit_server* server) {
  return guarded([&] {
    require(server, "null argument");
    if (!server->http->listen_after_bind()) throw Error(ErrorCode::kIo, "server socket failed");
  });
}

void elicit_server_stop(elicit_server* server) {
  if (server && server->http) server->http->stop();
}

elicit_status elicit_server_recovery_json(const elicit_server* server, char** out_json) {
  return guarded([&] {
    require(server && out_json, "null argument");
    ojson notes = ojson::array();
    for (const auto& n : server->service->recovery_notes()) {
      notes.push_back({{"session_id", n.session_id},
                       {"resumed", n.resumed},
                       {"repaired_events", n.repaired_events},
                       {"message", n.message}});
    }
    *out_json = dup_string(notes.dump());
  });
}

void elicit_server_free(elicit_server* server) { delete server; }

}  // extern "C"
