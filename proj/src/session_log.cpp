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

#include "elicit/session_log.hpp"

#include "elicit/error.hpp"
#include "file_util.hpp"

namespace elicit {

using ojson = nlohmann::ordered_json;

SessionLog log_of(const Session& session) {
  return {session.id(),
          {session.scenario_id(), session.mode(), session.seed(), session.created_at()},
          session.events()};
}

std::string header_line(const SessionLog& log) {
  ojson j = {{"session_id", log.session_id},
             {"header",
              {{"scenario_id", log.header.scenario_id},
               {"mode", std::string(to_string(log.header.mode))},
               {"seed", log.header.seed},
               {"created_at", log.header.created_at}}}};
  return j.dump() + "\n";
}

std::string event_line(const EngineEvent& e) {
  ojson j = {{"seq", e.seq},
             {"ts_ms", e.ts_ms},
             {"type", std::string(to_string(e.type))},
             {"payload", e.payload}};
  return j.dump() + "\n";
}

std::string to_jsonl(const SessionLog& log) {
  std::string out = header_line(log);
  for (const auto& e : log.events) out += event_line(e);
  return out;
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kMalformedLog, "log line " + std::to_string(line) + ": " + what);
}

}  // namespace

SessionLog parse_jsonl(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) break;  // torn final write
    if (nl > pos) lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::kMalformedLog, "log has no header line");

  SessionLog log;
  try {
    const ojson h = ojson::parse(lines[0]);
    log.session_id = h.at("session_id").get<std::string>();
    const auto& hh = h.at("header");
    log.header.scenario_id = hh.at("scenario_id").get<std::string>();
    auto mode = parse_session_mode(hh.at("mode").get<std::string>());
    if (!mode) malformed(1, "unknown mode");
    log.header.mode = *mode;
    log.header.seed = hh.at("seed").get<std::uint64_t>();
    log.header.created_at = hh.at("created_at").get<Timestamp>();
  } catch (const nlohmann::json::exception& e) {
    malformed(1, std::string("bad header: ") + e.what());
  }

  for (std::size_t i = 1; i < lines.size(); ++i) {
    EngineEvent ev;
    try {
      ojson j = ojson::parse(lines[i]);
      ev.seq = j.at("seq").get<std::int64_t>();
      ev.ts_ms = j.at("ts_ms").get<Timestamp>();
      auto type = parse_event_type(j.at("type").get<std::string>());
      if (!type) malformed(i + 1, "unknown event type");
      ev.type = *type;
      ev.payload = std::move(j.at("payload"));
    } catch (const nlohmann::json::exception& e) {
      malformed(i + 1, e.what());
    }
    if (ev.seq != static_cast<std::int64_t>(log.events.size()) + 1) {
      malformed(i + 1, "sequence number " + std::to_string(ev.seq) + " out of order");
    }
    if (!log.events.empty() && ev.ts_ms < log.events.back().ts_ms) {
      malformed(i + 1, "timestamp goes backwards");
    }
    log.events.push_back(std::move(ev));
  }
  if (!log.events.empty() && log.events.front().type != EventType::kSessionStarted) {
    malformed(2, "first event must be session_started");
  }
  return log;
}

SessionLog load_log(const std::string& path) {
  return parse_jsonl(detail::read_text_file(path));
}

ReplayResult replay(const SessionLog& log, std::shared_ptr<const Scenario> scenario,
                    std::shared_ptr<const FeedbackCatalog> catalog) {
  if (log.events.empty()) throw Error(ErrorCode::kMalformedLog, "log has no events");
  if (!scenario || scenario->id != log.header.scenario_id) {
    throw Error(ErrorCode::kMalformedLog, "log was recorded against scenario '" +
                                              log.header.scenario_id + "'");
  }
  auto [session, greeting] =
      Session::start(std::move(scenario), std::move(catalog), log.header.mode, log.header.seed,
                     log.header.created_at, log.session_id);
  (void)greeting;

  try {
    for (const auto& ev : log.events) {
      const auto& p = ev.payload;
      switch (ev.type) {
        case EventType::kChoiceSubmitted: {
          std::optional<std::int64_t> rt;
          if (p.contains("client_rt_ms")) rt = p.at("client_rt_ms").get<std::int64_t>();
          session.submit_choice(p.at("option_id").get<std::string>(), ev.ts_ms, rt);
          break;
        }
        case EventType::kSecondAttemptSubmitted:
          session.submit_second_attempt(p.at("option_id").get<std::string>(), ev.ts_ms);
          break;
        case EventType::kSessionEnded:
          session.end(ev.ts_ms);
          break;
        default:
          break;
      }
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedLog, std::string("log does not replay: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLog, std::string("log does not replay: ") + e.what());
  }

  const auto& regenerated = session.events();
  if (regenerated.size() < log.events.size()) {
    throw Error(ErrorCode::kMalformedLog, "log holds events the engine did not produce");
  }
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    if (!(regenerated[i] == log.events[i])) {
      throw Error(ErrorCode::kMalformedLog,
                  "event " + std::to_string(i + 1) + " differs from engine replay");
    }
  }
  const std::size_t extra = regenerated.size() - log.events.size();
  return {std::move(session), extra};
}

}  // namespace elicit
