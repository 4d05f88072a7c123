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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "elicit/scenario.hpp"
#include "elicit/taxonomy.hpp"
#include "elicit/text.hpp"
#include "json.hpp"

namespace elicit {

using Timestamp = std::int64_t;  // milliseconds, caller-supplied clock

// SPOKEN: the stakeholder utterance is delivered before the options appear.
// TEXT: utterance and options are shown together.
enum class SessionMode { kSpoken, kText };

enum class Phase { kGreeting, kInterview, kFeedback, kSummary, kEnded };

std::string_view to_string(SessionMode mode);
std::string_view to_string(Phase phase);
std::optional<SessionMode> parse_session_mode(std::string_view text);
std::optional<Phase> parse_phase(std::string_view text);

enum class EventType {
  kSessionStarted,
  kGreetingEmitted,
  kOptionsPresented,
  kChoiceSubmitted,
  kStakeholderReply,
  kFeedbackPhaseStarted,
  kFeedbackItemPresented,
  kSecondAttemptSubmitted,
  kAttemptEvaluated,
  kSummaryEmitted,
  kSessionEnded,
};

std::string_view to_string(EventType type);
std::optional<EventType> parse_event_type(std::string_view text);

struct EngineEvent {
  std::int64_t seq = 0;
  Timestamp ts_ms = 0;
  EventType type = EventType::kSessionStarted;
  nlohmann::ordered_json payload;

  friend bool operator==(const EngineEvent&, const EngineEvent&) = default;
};

struct TurnRecord {
  TurnId turn_id;
  std::vector<OptionId> options_presented;  // display order
  OptionId chosen_option_id;
  Timestamp presented_at = 0;
  Timestamp chosen_at = 0;
  bool is_mistake = false;
  std::optional<std::int64_t> client_rt_ms;

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

enum class Verdict { kCorrected, kStillIncorrect };
std::string_view to_string(Verdict v);

struct FeedbackItem {
  TurnRecord original;
  std::vector<MistakeId> mistake_ids;  // ascending
  std::vector<std::string> feedback_texts;
  std::optional<OptionId> second_attempt_option_id;
  std::optional<bool> second_attempt_correct;
  std::optional<OptionId> correct_option_id;  // revealed only after a failed attempt

  friend bool operator==(const FeedbackItem&, const FeedbackItem&) = default;
};

struct OptionView {
  OptionId id;
  std::string text;

  friend bool operator==(const OptionView&, const OptionView&) = default;
};

struct Prompt {
  TurnId turn_id;
  std::string stakeholder_text;
  std::vector<OptionView> options;

  friend bool operator==(const Prompt&, const Prompt&) = default;
};

struct FeedbackView {
  std::size_t index = 0;
  std::size_t total = 0;
  Prompt prompt;
  OptionId incorrect_chosen_option_id;
  std::vector<MistakeId> mistake_ids;
  std::vector<std::string> feedback_texts;

  friend bool operator==(const FeedbackView&, const FeedbackView&) = default;
};

struct ChoiceResult {
  std::optional<std::string> stakeholder_reply;  // nullopt: interview ended
  Phase next_phase = Phase::kInterview;
};

struct AttemptResult {
  Verdict verdict = Verdict::kCorrected;
  std::optional<OptionId> correct_option_id;
  Phase next_phase = Phase::kFeedback;
};

struct ClassTally {
  std::int64_t occurred = 0;
  std::int64_t corrected = 0;

  friend bool operator==(const ClassTally&, const ClassTally&) = default;
};

struct PerformanceSummary {
  std::int64_t total_turns = 0;
  std::int64_t mistaken_turns = 0;
  std::int64_t corrected_turns = 0;
  std::map<MistakeClass, ClassTally> per_class;  // all six classes present
  std::int64_t corrected_total = 0;              // sum of per_class corrected

  friend bool operator==(const PerformanceSummary&, const PerformanceSummary&) = default;
};

nlohmann::ordered_json to_json(const PerformanceSummary& s);
PerformanceSummary summary_from_json(const nlohmann::json& j);

inline constexpr double kDefaultMatchThreshold = 0.8;
inline constexpr std::string_view kWelcomeText =
    "Hello, and welcome to this requirements elicitation interview practice session. "
    "You will play the requirements engineer and I will play the stakeholder. "
    "In each turn, choose one of three questions to ask me. Afterwards we will go "
    "through the turns that could have gone better.";
inline constexpr std::string_view kFeedbackStartText =
    "The interview is over. Let's look at the responses that could be improved.";
inline constexpr std::string_view kClosingText =
    "Thank you for participating in this training session. Goodbye!";

// Deterministic option display order for a turn. Seed 0 is the authored
// order.
std::vector<std::size_t> option_display_order(std::uint64_t seed, std::string_view turn_id,
                                              std::size_t option_count);

// One training session over a scenario. Mutating calls must be externally
// serialized; the value itself may move across threads.
class Session {
 public:
  // Validates the scenario first (Error(kInvalidScenario) on failure). The
  // returned text is the greeting: welcome text followed by the scenario
  // introduction.
  static std::pair<Session, std::string> start(std::shared_ptr<const Scenario> scenario,
                                               std::shared_ptr<const FeedbackCatalog> catalog,
                                               SessionMode mode, std::uint64_t seed,
                                               Timestamp now, std::string session_id = "local");

  Prompt current_prompt() const;

  ChoiceResult submit_choice(std::string_view option_id, Timestamp now,
                             std::optional<std::int64_t> client_rt_ms = std::nullopt);

  // Resolves free text to one of the options currently on screen (interview
  // turn, or the feedback item awaiting its second attempt).
  std::optional<OptionId> match_utterance(
      std::string_view free_text, const SimilarityProvider& similarity = default_similarity(),
      double threshold = kDefaultMatchThreshold) const;

  FeedbackView current_feedback_item() const;
  AttemptResult submit_second_attempt(std::string_view option_id, Timestamp now);

  PerformanceSummary summary() const;

  std::string end(Timestamp now);

  const std::string& id() const { return id_; }
  const std::string& scenario_id() const { return scenario_->id; }
  const Scenario& scenario() const { return *scenario_; }
  const FeedbackCatalog& catalog() const { return *catalog_; }
  SessionMode mode() const { return mode_; }
  Phase phase() const { return phase_; }
  std::uint64_t seed() const { return seed_; }
  Timestamp created_at() const { return created_at_; }
  const std::optional<TurnId>& current_turn_id() const { return current_turn_; }
  const std::vector<TurnRecord>& transcript() const { return transcript_; }
  const std::vector<FeedbackItem>& feedback_queue() const { return feedback_queue_; }
  std::size_t feedback_cursor() const { return feedback_cursor_; }
  const std::vector<EngineEvent>& events() const { return events_; }

 private:
  Session(std::shared_ptr<const Scenario> scenario, std::shared_ptr<const FeedbackCatalog> catalog,
          SessionMode mode, std::uint64_t seed, Timestamp now, std::string session_id);

  void require_phase(Phase expected, std::string_view op) const;
  void advance_clock(Timestamp now);
  void emit(Timestamp ts, EventType type, nlohmann::ordered_json payload);
  Prompt prompt_for(const Turn& turn) const;
  void present_turn(const Turn& turn, Timestamp now);
  void enter_feedback_or_summary(Timestamp now);
  void present_feedback_item(Timestamp now);
  void enter_summary(Timestamp now);
  const Turn& turn_of(const TurnRecord& record) const;

  std::shared_ptr<const Scenario> scenario_;
  std::shared_ptr<const FeedbackCatalog> catalog_;
  std::string id_;
  SessionMode mode_;
  std::uint64_t seed_;
  Timestamp created_at_;
  Timestamp last_ts_;
  Phase phase_ = Phase::kGreeting;
  std::optional<TurnId> current_turn_;
  Timestamp presented_at_ = 0;
  std::vector<TurnRecord> transcript_;
  std::vector<FeedbackItem> feedback_queue_;
  std::size_t feedback_cursor_ = 0;
  std::vector<EngineEvent> events_;
};

}  // namespace elicit
