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

#include "elicit/service.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>

#include "elicit/error.hpp"
#include "elicit/views.hpp"
#include "file_util.hpp"
#include "httplib.h"

namespace elicit::service {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using nlohmann::json;

struct Service::Entry {
  std::mutex mutex;
  std::optional<Session> session;
  std::size_t persisted = 0;
  std::string path;
};

namespace {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession:
    case ErrorCode::kUnknownScenario: return 404;
    case ErrorCode::kWrongPhase:
    case ErrorCode::kAlreadyAttempted:
    case ErrorCode::kQueueExhausted:
    case ErrorCode::kNonMonotonicTime:
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kUnknownOption:
    case ErrorCode::kNoMatch:
    case ErrorCode::kInvalidScenario: return 422;
    case ErrorCode::kIo:
    case ErrorCode::kMalformedLog: return 500;
    default: return 400;
  }
}

std::string api_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kMissingField:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kCycle:
    case ErrorCode::kEmptySample:
    case ErrorCode::kZeroVariance: return "malformed_request";
    case ErrorCode::kIo:
    case ErrorCode::kMalformedLog: return "internal";
    default: return std::string(to_string(code));
  }
}

Response json_response(int status, const ojson& body) { return {status, body.dump(), "application/json"}; }

Response error_response(ErrorCode code, const std::string& message, ojson extra = nullptr) {
  ojson err = {{"code", api_code(code)}, {"message", message}};
  if (!extra.is_null()) {
    for (auto& [k, v] : extra.items()) err[k] = v;
  }
  return json_response(http_status(code), {{"error", err}});
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw Error(ErrorCode::kParse, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("request body is not valid JSON: ") + e.what());
  }
}




bool safe_id(const std::string& id) {
  static const std::regex pattern("[A-Za-z0-9_.-]{1,128}");
  return std::regex_match(id, pattern) && id != "." && id != "..";
}

std::vector<std::string> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    std::size_t next = path.find('/', pos);
    if (next == std::string_view::npos) next = path.size();
    if (next > pos) parts.emplace_back(path.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

void write_file_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.catalog) {
    config_.catalog = std::make_shared<const FeedbackCatalog>(FeedbackCatalog::builtin());
  }
  if (!config_.similarity) config_.similarity = default_similarity();
  if (!config_.clock) {
    config_.clock = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
  fs::create_directories(fs::path(config_.data_dir) / "sessions");
  fs::create_directories(fs::path(config_.data_dir) / "scenarios");

  for (const auto& file : config_.scenario_files) {
    auto s = std::make_shared<const Scenario>(load_scenario(file));
    const auto report = validate(*s, *config_.catalog);
    if (!report.ok) throw Error(ErrorCode::kInvalidScenario, "scenario file " + file + " is invalid");
    scenarios_[s->id] = std::move(s);
  }
  std::vector<fs::path> stored;
  for (const auto& f : fs::directory_iterator(fs::path(config_.data_dir) / "scenarios")) {
    if (f.path().extension() == ".json") stored.push_back(f.path());
  }
  std::sort(stored.begin(), stored.end());
  for (const auto& p : stored) {
    auto s = std::make_shared<const Scenario>(load_scenario(p.string()));
    if (validate(*s, *config_.catalog).ok && !scenarios_.count(s->id)) scenarios_[s->id] = std::move(s);
  }
  recover_sessions();
}

Service::~Service() = default;

void Service::recover_sessions() {
  std::vector<fs::path> logs;
  for (const auto& f : fs::directory_iterator(fs::path(config_.data_dir) / "sessions")) {
    if (f.path().extension() == ".jsonl") logs.push_back(f.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const auto& path : logs) {
    RecoveryNote note;
    note.session_id = path.stem().string();
    try {
      const std::string raw = detail::read_text_file(path.string());
      SessionLog log = parse_jsonl(raw);
      auto it = scenarios_.find(log.header.scenario_id);
      if (it == scenarios_.end()) {
        throw Error(ErrorCode::kUnknownScenario, "scenario '" + log.header.scenario_id + "' not loaded");
      }
      ReplayResult replayed = replay(log, it->second, config_.catalog);
      note.session_id = log.session_id;
      note.repaired_events = replayed.regenerated_events;
      const std::string canonical = to_jsonl(log_of(replayed.session));
      if (canonical != raw) write_file_atomically(path, canonical);

      auto entry = std::make_shared<Entry>();
      entry->path = path.string();
      entry->persisted = replayed.session.events().size();
      entry->session.emplace(std::move(replayed.session));
      sessions_[log.session_id] = entry;
      note.resumed = true;
      note.message = replayed.regenerated_events ? "resumed after completing a torn write" : "resumed";
      if (log.session_id.size() > 1 && log.session_id[0] == 's') {
        try {
          next_session_number_ =
              std::max<std::uint64_t>(next_session_number_, std::stoull(log.session_id.substr(1)) + 1);
        } catch (const std::exception&) {
        }
      }
    } catch (const Error& e) {
      note.resumed = false;
      note.message = e.what();
    }
    recovery_.push_back(std::move(note));
  }
}

Response Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  try {
    const auto parts = split_path(path);
    if (parts.size() == 1 && parts[0] == "scenarios") {
      if (method == "POST") return upload_scenario(body);
      if (method == "GET") return list_scenarios();
    } else if (parts.size() == 1 && parts[0] == "sessions") {
      if (method == "POST") return create_session(body);
    } else if (parts.size() >= 3 && parts[0] == "sessions") {
      const std::string& id = parts[1];
      const std::string& leaf = parts[2];
      if (parts.size() == 3 && method == "GET" && leaf == "state") return get_state(id);
      if (parts.size() == 3 && method == "POST" && leaf == "choice") return post_choice(id, body);
      if (parts.size() == 4 && method == "POST" && leaf == "feedback" && parts[3] == "attempt") {
        return post_attempt(id, body);
      }
      if (parts.size() == 3 && method == "GET" && leaf == "summary") return get_summary(id);
      if (parts.size() == 3 && method == "POST" && leaf == "end") return end_session(id);
      if (parts.size() == 3 && method == "GET" && leaf == "log") return get_log(id);
    }
    return json_response(404, {{"error", {{"code", "not_found"},
                                          {"message", "no route for " + std::string(method) + " " +
                                                          std::string(path)}}}});
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    return json_response(500, {{"error", {{"code", "internal"}, {"message", e.what()}}}});
  }
}

Response Service::upload_scenario(std::string_view body) {
  Scenario parsed;
  try {
    parsed = parse_scenario(body);
  } catch (const ParseError& e) {
    return error_response(ErrorCode::kParse, e.what(), {{"line", e.line()}, {"column", e.column()}});
  }
  if (!safe_id(parsed.id)) {
    throw Error(ErrorCode::kInvalidArgument, "scenario id must match [A-Za-z0-9_.-]+");
  }
  const ValidationReport report = validate(parsed, *config_.catalog);
  if (!report.ok) {
    return error_response(ErrorCode::kInvalidScenario, "scenario failed validation",
                          {{"report", to_json(report)}});
  }
  std::unique_lock lock(scenarios_mutex_);
  if (auto it = scenarios_.find(parsed.id); it != scenarios_.end()) {
    if (*it->second == parsed) {
      return json_response(200, {{"id", parsed.id}, {"report", to_json(report)}});
    }
    return error_response(ErrorCode::kConflict,
                          "a different scenario with id '" + parsed.id + "' already exists");
  }
  write_file_atomically(fs::path(config_.data_dir) / "scenarios" / (parsed.id + ".json"),
                        serialize_scenario(parsed));
  const std::string id = parsed.id;
  scenarios_[id] = std::make_shared<const Scenario>(std::move(parsed));
  return json_response(201, {{"id", id}, {"report", to_json(report)}});
}

Response Service::list_scenarios() const {
  std::shared_lock lock(scenarios_mutex_);
  ojson list = ojson::array();
  for (const auto& [id, s] : scenarios_) {
    const PathBounds b = path_bounds(*s);
    list.push_back({{"id", id},
                    {"title", s->title},
                    {"turns", s->turns.size()},
                    {"path_bounds",
                     {{"min_turns", b.min_turns},
                      {"max_turns", b.max_turns},
                      {"path_count", b.path_count}}}});
  }
  return json_response(200, {{"scenarios", list}});
}

Response Service::create_session(std::string_view body) {
  const json req = parse_body(body);
  if (!req.contains("scenario_id") || !req["scenario_id"].is_string()) {
    throw Error(ErrorCode::kMissingField, "scenario_id is required");
  }
  const std::string scenario_id = req["scenario_id"].get<std::string>();
  SessionMode mode = SessionMode::kSpoken;
  if (req.contains("mode")) {
    auto m = req["mode"].is_string() ? parse_session_mode(req["mode"].get<std::string>()) : std::nullopt;
    if (!m) throw Error(ErrorCode::kInvalidArgument, "mode must be SPOKEN or TEXT");
    mode = *m;
  }
  std::uint64_t seed = 0;
  if (req.contains("seed")) {
    if (!req["seed"].is_number_unsigned()) throw Error(ErrorCode::kInvalidArgument, "seed must be a non-negative integer");
    seed = req["seed"].get<std::uint64_t>();
  }

  std::shared_ptr<const Scenario> scenario;
  {
    std::shared_lock lock(scenarios_mutex_);
    auto it = scenarios_.find(scenario_id);
    if (it == scenarios_.end()) {
      throw Error(ErrorCode::kUnknownScenario, "unknown scenario '" + scenario_id + "'");
    }
    scenario = it->second;
  }

  std::unique_lock lock(sessions_mutex_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%06llu", static_cast<unsigned long long>(next_session_number_++));
  const std::string id = buf;
  auto [session, greeting] = Session::start(scenario, config_.catalog, mode, seed, config_.clock(), id);

  auto entry = std::make_shared<Entry>();
  entry->path = (fs::path(config_.data_dir) / "sessions" / (id + ".jsonl")).string();
  {
    std::ofstream out(entry->path, std::ios::binary | std::ios::trunc);
    out << header_line(log_of(session));
    if (!out) throw Error(ErrorCode::kIo, "cannot create " + entry->path);
  }
  entry->session.emplace(std::move(session));
  persist(*entry);
  sessions_[id] = entry;
  return json_response(201, {{"session_id", id},
                             {"greeting", greeting},
                             {"state", state_json(*entry->session)}});
}

std::shared_ptr<Service::Entry> Service::find_session(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "unknown session '" + id + "'");
  return it->second;
}

void Service::persist(Entry& entry) {
  const auto& events = entry.session->events();
  if (entry.persisted == events.size()) return;
  std::string chunk;
  for (std::size_t i = entry.persisted; i < events.size(); ++i) chunk += event_line(events[i]);
  std::ofstream out(entry.path, std::ios::binary | std::ios::app);
  out << chunk;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + entry.path);
  entry.persisted = events.size();
}

Timestamp Service::now_for(const Session& session) const {
  const Timestamp now = config_.clock();
  const Timestamp last = session.events().empty() ? now : session.events().back().ts_ms;
  return std::max(now, last);
}

Response Service::get_state(const std::string& id) {
  auto entry = find_session(id);
  std::lock_guard lock(entry->mutex);
  return json_response(200, state_json(*entry->session));
}

Response Service::post_choice(const std::string& id, std::string_view body) {
  const json req = parse_body(body);
  auto entry = find_session(id);
  std::unique_lock lock(entry->mutex, std::try_to_lock);
  if (!lock) throw Error(ErrorCode::kConflict, "another request is modifying this session");
  Session& s = *entry->session;
  if (s.phase() != Phase::kInterview) {
    throw Error(ErrorCode::kWrongPhase, "choices are accepted only in INTERVIEW, session is in " +
                                            std::string(to_string(s.phase())));
  }

  std::string option_id;
  if (req.contains("option_id")) {
    if (!req["option_id"].is_string()) throw Error(ErrorCode::kInvalidArgument, "option_id must be a string");
    option_id = req["option_id"].get<std::string>();
  } else if (req.contains("utterance") && req["utterance"].is_string()) {
    auto matched = s.match_utterance(req["utterance"].get<std::string>(), config_.similarity,
                                     config_.match_threshold);
    if (!matched) throw Error(ErrorCode::kNoMatch, "utterance does not match any option");
    option_id = *matched;
  } else {
    throw Error(ErrorCode::kMissingField, "option_id or utterance is required");
  }
  std::optional<std::int64_t> client_rt;
  if (req.contains("client_rt_ms") && !req["client_rt_ms"].is_null()) {
    if (!req["client_rt_ms"].is_number_integer()) {
      throw Error(ErrorCode::kInvalidArgument, "client_rt_ms must be an integer");
    }
    client_rt = req["client_rt_ms"].get<std::int64_t>();
  }

  const ChoiceResult r = s.submit_choice(option_id, now_for(s), client_rt);
  persist(*entry);
  return json_response(200, {{"option_id", option_id},
                             {"stakeholder_reply", r.stakeholder_reply ? ojson(*r.stakeholder_reply) : ojson()},
                             {"end", !r.stakeholder_reply.has_value()},
                             {"phase", std::string(to_string(r.next_phase))}});
}

Response Service::post_attempt(const std::string& id, std::string_view body) {
  const json req = parse_body(body);
  auto entry = find_session(id);
  std::unique_lock lock(entry->mutex, std::try_to_lock);
  if (!lock) throw Error(ErrorCode::kConflict, "another request is modifying this session");
  Session& s = *entry->session;
  if (s.phase() != Phase::kFeedback) {
    throw Error(ErrorCode::kWrongPhase, "second attempts are accepted only in FEEDBACK, session is in " +
                                            std::string(to_string(s.phase())));
  }
  std::string option_id;
  if (req.contains("option_id") && req["option_id"].is_string()) {
    option_id = req["option_id"].get<std::string>();
  } else if (req.contains("utterance") && req["utterance"].is_string()) {
    auto matched = s.match_utterance(req["utterance"].get<std::string>(), config_.similarity,
                                     config_.match_threshold);
    if (!matched) throw Error(ErrorCode::kNoMatch, "utterance does not match any option");
    option_id = *matched;
  } else {
    throw Error(ErrorCode::kMissingField, "option_id or utterance is required");
  }

  const AttemptResult r = s.submit_second_attempt(option_id, now_for(s));
  persist(*entry);
  ojson out = {{"option_id", option_id},
               {"verdict", std::string(to_string(r.verdict))},
               {"phase", std::string(to_string(r.next_phase))}};
  if (r.correct_option_id) out["correct_option_id"] = *r.correct_option_id;
  return json_response(200, out);
}

Response Service::get_summary(const std::string& id) {
  auto entry = find_session(id);
  std::lock_guard lock(entry->mutex);
  return json_response(200, to_json(entry->session->summary()));
}

Response Service::end_session(const std::string& id) {
  auto entry = find_session(id);
  std::unique_lock lock(entry->mutex, std::try_to_lock);
  if (!lock) throw Error(ErrorCode::kConflict, "another request is modifying this session");
  Session& s = *entry->session;
  const std::string text = s.end(now_for(s));
  persist(*entry);
  return json_response(200, {{"text", text}, {"phase", std::string(to_string(s.phase()))}});
}

Response Service::get_log(const std::string& id) {
  auto entry = find_session(id);
  std::lock_guard lock(entry->mutex);
  return {200, to_jsonl(log_of(*entry->session)), "application/x-ndjson"};
}

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  auto& svr = impl_->server;
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  svr.Get(R"(/.*)", handler);
  svr.Post(R"(/.*)", handler);
  svr.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

bool HttpServer::wait_until_ready() const {
  impl_->server.wait_until_ready();
  return impl_->server.is_running();
}

}  // namespace elicit::service
