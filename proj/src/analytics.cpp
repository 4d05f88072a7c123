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

#include "elicit/analytics.hpp"

#include <algorithm>
#include <limits>

#include "elicit/error.hpp"

namespace elicit::analytics {

namespace {

void require_three(std::span<const std::string> options) {
  if (options.size() != kOptionsPerTurn) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected 3 options, got " + std::to_string(options.size()));
  }
}

[[noreturn]] void malformed(const SessionLog& log, const std::string& what) {
  throw Error(ErrorCode::kMalformedLog, "session " + log.session_id + ": " + what);
}

}  // namespace

double option_set_similarity(std::span<const std::string> options, const SimilarityProvider& sim) {
  require_three(options);
  double best = 0.0;
  for (std::size_t i = 0; i < options.size(); ++i) {
    for (std::size_t j = i + 1; j < options.size(); ++j) {
      best = std::max(best, sim(options[i], options[j]));
    }
  }
  return best;
}

double eval_options(std::span<const std::string> options, const SimilarityProvider& sim) {
  require_three(options);
  std::size_t words = 0;
  for (const auto& o : options) words += word_count(o);
  return (1.0 + option_set_similarity(options, sim)) * static_cast<double>(words);
}

double cognitive_load(const TurnTiming& t, const SimilarityProvider& sim) {
  const double options_load = eval_options(t.option_texts, sim);
  if (t.mode == SessionMode::kSpoken) return options_load;
  return options_load + static_cast<double>(word_count(t.stakeholder_text));
}

double processing_speed_turn(const TurnTiming& t, const SimilarityProvider& sim) {
  if (!(t.rt_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "response time must be positive");
  }
  return cognitive_load(t, sim) / t.rt_seconds;
}

double session_processing_speed(std::span<const TurnTiming> timings, TurnSubset subset,
                                const SimilarityProvider& sim) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& t : timings) {
    if (subset == TurnSubset::kMistake && !t.is_mistake) continue;
    if (subset == TurnSubset::kNoMistake && t.is_mistake) continue;
    sum += processing_speed_turn(t, sim);
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::kEmptySample, "no turns in the selected subset");
  return sum / static_cast<double>(count);
}

std::vector<TurnTiming> extract_timings(const SessionLog& log) {
  std::vector<TurnTiming> timings;
  std::optional<TurnTiming> pending;
  Timestamp presented_at = 0;
  Timestamp last_ts = std::numeric_limits<Timestamp>::min();
  bool interview_over = false;

  for (const auto& ev : log.events) {
    if (ev.ts_ms < last_ts) malformed(log, "timestamps go backwards at seq " + std::to_string(ev.seq));
    last_ts = ev.ts_ms;
    const auto& p = ev.payload;
    try {
      if (ev.type == EventType::kOptionsPresented) {
        if (pending) malformed(log, "turn " + pending->turn_id + " presented without a choice");
        TurnTiming t;
        t.turn_id = p.at("turn_id").get<std::string>();
        t.stakeholder_text = p.at("stakeholder_text").get<std::string>();
        for (const auto& o : p.at("options")) t.option_texts.push_back(o.at("text").get<std::string>());
        t.mode = log.header.mode;
        pending = std::move(t);
        presented_at = ev.ts_ms;
      } else if (ev.type == EventType::kChoiceSubmitted) {
        const std::string turn_id = p.at("turn_id").get<std::string>();
        if (!pending || pending->turn_id != turn_id) {
          malformed(log, "choice for turn " + turn_id + " without matching options_presented");
        }
        TurnTiming t = std::move(*pending);
        pending.reset();
        t.is_mistake = p.at("is_mistake").get<bool>();
        if (p.contains("client_rt_ms") && p.at("client_rt_ms").get<std::int64_t>() > 0) {
          t.rt_seconds = static_cast<double>(p.at("client_rt_ms").get<std::int64_t>()) / 1000.0;
        } else {
          t.rt_seconds = static_cast<double>(ev.ts_ms - presented_at) / 1000.0;
        }
        if (!(t.rt_seconds > 0.0)) malformed(log, "non-positive response time in turn " + turn_id);
        timings.push_back(std::move(t));
      } else if (ev.type == EventType::kStakeholderReply && p.contains("end")) {
        interview_over = true;
      }
    } catch (const nlohmann::json::exception& e) {
      malformed(log, std::string("bad event payload: ") + e.what());
    }
  }
  if (pending) malformed(log, "turn " + pending->turn_id + " has no choice event");
  if (!interview_over) malformed(log, "interview phase is not complete");
  return timings;
}

std::map<MistakeClass, CorrectionTally> correction_stats(std::span<const SessionLog> logs,
                                                         const FeedbackCatalog& catalog) {
  std::map<MistakeClass, CorrectionTally> out;
  for (MistakeClass c : kAllMistakeClasses) out[c] = {};
  for (const auto& log : logs) {
    std::vector<std::pair<TurnId, std::vector<MistakeId>>> mistaken;
    std::map<TurnId, bool> corrected;
    for (const auto& ev : log.events) {
      const auto& p = ev.payload;
      if (ev.type == EventType::kChoiceSubmitted && p.value("is_mistake", false)) {
        mistaken.emplace_back(p.at("turn_id").get<std::string>(),
                              p.at("mistake_ids").get<std::vector<MistakeId>>());
      } else if (ev.type == EventType::kAttemptEvaluated) {
        corrected[p.at("turn_id").get<std::string>()] =
            p.at("verdict").get<std::string>() == to_string(Verdict::kCorrected);
      }
    }
    for (const auto& [turn_id, ids] : mistaken) {
      const bool fixed = corrected.count(turn_id) && corrected.at(turn_id);
      for (MistakeId m : ids) {
        auto& t = out[catalog.class_of(m)];
        (fixed ? t.corrected : t.uncorrected) += 1;
      }
    }
  }
  return out;
}

}  // namespace elicit::analytics
