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

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "elicit/engine.hpp"

namespace elicit {

struct SessionLogHeader {
  std::string scenario_id;
  SessionMode mode = SessionMode::kSpoken;
  std::uint64_t seed = 0;
  Timestamp created_at = 0;

  friend bool operator==(const SessionLogHeader&, const SessionLogHeader&) = default;
};

// Append-only record of one session. On disk: one JSON object per line, the
// first line holding session_id and header, each following line one event.
struct SessionLog {
  std::string session_id;
  SessionLogHeader header;
  std::vector<EngineEvent> events;

  bool closed() const {
    return !events.empty() && events.back().type == EventType::kSessionEnded;
  }

  friend bool operator==(const SessionLog&, const SessionLog&) = default;
};

SessionLog log_of(const Session& session);

std::string header_line(const SessionLog& log);
std::string event_line(const EngineEvent& event);
std::string to_jsonl(const SessionLog& log);

// Checks seq strictly increasing from 1, ts non-decreasing and a leading
// session_started event. A final line without its newline is treated as a
// torn write and dropped. Throws Error(kMalformedLog).
SessionLog parse_jsonl(std::string_view text);
SessionLog load_log(const std::string& path);

struct ReplayResult {
  Session session;
  // Events the engine produced beyond the end of the log. Non-zero when the
  // log was cut between an input event and the events it triggers.
  std::size_t regenerated_events = 0;
};

// Drives a fresh session with the inputs recorded in the log and checks every
// regenerated event against the recorded one. Throws Error(kMalformedLog) on
// any divergence.
ReplayResult replay(const SessionLog& log, std::shared_ptr<const Scenario> scenario,
                    std::shared_ptr<const FeedbackCatalog> catalog);

}  // namespace elicit
