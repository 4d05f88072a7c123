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

#include "elicit/engine.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "elicit/error.hpp"

namespace elicit {

using ojson = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 11> kEventNames = {
    "session_started",       "greeting_emitted",         "options_presented",
    "choice_submitted",      "stakeholder_reply",        "feedback_phase_started",
    "feedback_item_presented", "second_attempt_submitted", "attempt_evaluated",
    "summary_emitted",       "session_ended",
};

constexpr std::array<std::string_view, 5> kPhaseNames = {"GREETING", "INTERVIEW", "FEEDBACK",
                                                         "SUMMARY", "ENDED"};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string_view to_string(SessionMode mode) {
  return mode == SessionMode::kSpoken ? "SPOKEN" : "TEXT";
}

std::string_view to_string(Phase phase) { return kPhaseNames[static_cast<std::size_t>(phase)]; }

std::optional<SessionMode> parse_session_mode(std::string_view text) {
  std::string up(text);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "SPOKEN") return SessionMode::kSpoken;
  if (up == "TEXT") return SessionMode::kText;
  return std::nullopt;
}

std::optional<Phase> parse_phase(std::string_view text) {
  for (std::size_t i = 0; i < kPhaseNames.size(); ++i) {
    if (kPhaseNames[i] == text) return static_cast<Phase>(i);
  }
  return std::nullopt;
}

std::string_view to_string(EventType type) { return kEventNames[static_cast<std::size_t>(type)]; }

std::optional<EventType> parse_event_type(std::string_view text) {
  for (std::size_t i = 0; i < kEventNames.size(); ++i) {
    if (kEventNames[i] == text) return static_cast<EventType>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kCorrected ? "CORRECTED" : "STILL_INCORRECT";
}

ojson to_json(const PerformanceSummary& s) {
  ojson classes = ojson::array();
  for (MistakeClass c : kAllMistakeClasses) {
    const auto it = s.per_class.find(c);
    const ClassTally t = it == s.per_class.end() ? ClassTally{} : it->second;
    classes.push_back(
        {{"class", std::string(to_string(c))}, {"occurred", t.occurred}, {"corrected", t.corrected}});
  }
  return {{"total_turns", s.total_turns},         {"mistaken_turns", s.mistaken_turns},
          {"corrected_turns", s.corrected_turns}, {"per_class", std::move(classes)},
          {"corrected_total", s.corrected_total}};
}

PerformanceSummary summary_from_json(const nlohmann::json& j) {
  PerformanceSummary s;
  s.total_turns = j.at("total_turns").get<std::int64_t>();
  s.mistaken_turns = j.at("mistaken_turns").get<std::int64_t>();
  s.corrected_turns = j.at("corrected_turns").get<std::int64_t>();
  s.corrected_total = j.at("corrected_total").get<std::int64_t>();
  for (const auto& c : j.at("per_class")) {
    auto cls = parse_mistake_class(c.at("class").get<std::string>());
    if (!cls) throw Error(ErrorCode::kParse, "unknown mistake class in summary");
    s.per_class[*cls] = {c.at("occurred").get<std::int64_t>(), c.at("corrected").get<std::int64_t>()};
  }
  return s;
}

std::vector<std::size_t> option_display_order(std::uint64_t seed, std::string_view turn_id,
                                              std::size_t option_count) {
  std::vector<std::size_t> order(option_count);
  for (std::size_t i = 0; i < option_count; ++i) order[i] = i;
  if (seed == 0 || option_count < 2) return order;
  // mt19937_64 output is fully specified, unlike std::shuffle's use of it.
  std::mt19937_64 rng(seed ^ fnv1a(turn_id));
  for (std::size_t i = option_count - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

Session::Session(std::shared_ptr<const Scenario> scenario,
                 std::shared_ptr<const FeedbackCatalog> catalog, SessionMode mode,
                 std::uint64_t seed, Timestamp now, std::string session_id)
    : scenario_(std::move(scenario)),
      catalog_(std::move(catalog)),
      id_(std::move(session_id)),
      mode_(mode),
      seed_(seed),
      created_at_(now),
      last_ts_(now) {}

std::pair<Session, std::string> Session::start(std::shared_ptr<const Scenario> scenario,
                                               std::shared_ptr<const FeedbackCatalog> catalog,
                                               SessionMode mode, std::uint64_t seed, Timestamp now,
                                               std::string session_id) {
  if (!scenario || !catalog) throw Error(ErrorCode::kInvalidArgument, "null scenario or catalog");
  const ValidationReport report = validate(*scenario, *catalog);
  if (!report.ok) {
    std::string msg = "scenario '" + scenario->id + "' is invalid";
    for (const auto& f : report.findings) {
      if (f.severity == Severity::kError) {
        msg += "; " + f.code + " at " + f.location;
      }
    }
    throw Error(ErrorCode::kInvalidScenario, msg);
  }

  Session s(std::move(scenario), std::move(catalog), mode, seed, now, std::move(session_id));
  s.emit(now, EventType::kSessionStarted,
         {{"session_id", s.id_},
          {"scenario_id", s.scenario_->id},
          {"mode", std::string(to_string(mode))},
          {"seed", seed}});

  std::string greeting(kWelcomeText);
  if (!s.scenario_->intro.empty()) greeting += "\n\n" + s.scenario_->intro;
  s.emit(now, EventType::kGreetingEmitted, {{"text", greeting}});

  s.phase_ = Phase::kInterview;
  s.present_turn(*s.scenario_->find_turn(s.scenario_->start_turn), now);
  return {std::move(s), std::move(greeting)};
}

void Session::require_phase(Phase expected, std::string_view op) const {
  if (phase_ != expected) {
    throw Error(ErrorCode::kWrongPhase, std::string(op) + " requires phase " +
                                            std::string(to_string(expected)) + ", session is in " +
                                            std::string(to_string(phase_)));
  }
}

void Session::advance_clock(Timestamp now) {
  if (now < last_ts_) {
    throw Error(ErrorCode::kNonMonotonicTime, "timestamp " + std::to_string(now) +
                                                  " precedes last event at " +
                                                  std::to_string(last_ts_));
  }
  last_ts_ = now;
}

void Session::emit(Timestamp ts, EventType type, ojson payload) {
  events_.push_back({static_cast<std::int64_t>(events_.size()) + 1, ts, type, std::move(payload)});
}

Prompt Session::prompt_for(const Turn& turn) const {
  Prompt p{turn.id, turn.stakeholder_text, {}};
  for (std::size_t i : option_display_order(seed_, turn.id, turn.options.size())) {
    p.options.push_back({turn.options[i].id, turn.options[i].text});
  }
  return p;
}

void Session::present_turn(const Turn& turn, Timestamp now) {
  current_turn_ = turn.id;
  presented_at_ = now;
  const Prompt p = prompt_for(turn);
  ojson options = ojson::array();
  for (const auto& o : p.options) options.push_back({{"id", o.id}, {"text", o.text}});
  emit(now, EventType::kOptionsPresented,
       {{"turn_id", turn.id}, {"stakeholder_text", turn.stakeholder_text}, {"options", options}});
}

Prompt Session::current_prompt() const {
  require_phase(Phase::kInterview, "current_prompt");
  return prompt_for(*scenario_->find_turn(*current_turn_));
}

ChoiceResult Session::submit_choice(std::string_view option_id, Timestamp now,
                                    std::optional<std::int64_t> client_rt_ms) {
  require_phase(Phase::kInterview, "submit_choice");
  const Turn& turn = *scenario_->find_turn(*current_turn_);
  const DialogueOption* chosen = turn.find_option(option_id);
  if (!chosen) {
    throw Error(ErrorCode::kUnknownOption,
                "option '" + std::string(option_id) + "' is not offered in turn '" + turn.id + "'");
  }
  if (client_rt_ms && *client_rt_ms < 0) {
    throw Error(ErrorCode::kInvalidArgument, "client_rt_ms must be non-negative");
  }
  advance_clock(now);

  TurnRecord record;
  record.turn_id = turn.id;
  for (const auto& o : prompt_for(turn).options) record.options_presented.push_back(o.id);
  record.chosen_option_id = chosen->id;
  record.presented_at = presented_at_;
  record.chosen_at = now;
  record.is_mistake = !chosen->is_correct();
  record.client_rt_ms = client_rt_ms;
  transcript_.push_back(record);

  std::vector<MistakeId> ids = chosen->mistake_ids;
  std::sort(ids.begin(), ids.end());
  ojson payload = {{"turn_id", turn.id},
                   {"option_id", chosen->id},
                   {"is_mistake", record.is_mistake},
                   {"mistake_ids", ids}};
  if (client_rt_ms) payload["client_rt_ms"] = *client_rt_ms;
  emit(now, EventType::kChoiceSubmitted, std::move(payload));

  if (chosen->is_terminal()) {
    current_turn_.reset();
    emit(now, EventType::kStakeholderReply, {{"end", true}});
    enter_feedback_or_summary(now);
    return {std::nullopt, phase_};
  }
  const Turn& next = *scenario_->find_turn(*chosen->next_turn);
  emit(now, EventType::kStakeholderReply,
       {{"turn_id", next.id}, {"text", next.stakeholder_text}});
  present_turn(next, now);
  return {next.stakeholder_text, phase_};
}

void Session::enter_feedback_or_summary(Timestamp now) {
  for (const auto& record : transcript_) {
    if (!record.is_mistake) continue;
    const DialogueOption& chosen = *turn_of(record).find_option(record.chosen_option_id);
    FeedbackItem item;
    item.original = record;
    item.mistake_ids = chosen.mistake_ids;
    std::sort(item.mistake_ids.begin(), item.mistake_ids.end());
    for (MistakeId m : item.mistake_ids) item.feedback_texts.push_back(catalog_->feedback(m));
    feedback_queue_.push_back(std::move(item));
  }
  if (feedback_queue_.empty()) {
    enter_summary(now);
    return;
  }
  phase_ = Phase::kFeedback;
  feedback_cursor_ = 0;
  emit(now, EventType::kFeedbackPhaseStarted,
       {{"items", feedback_queue_.size()}, {"text", std::string(kFeedbackStartText)}});
  present_feedback_item(now);
}

void Session::present_feedback_item(Timestamp now) {
  const FeedbackItem& item = feedback_queue_[feedback_cursor_];
  emit(now, EventType::kFeedbackItemPresented,
       {{"index", feedback_cursor_},
        {"turn_id", item.original.turn_id},
        {"chosen_option_id", item.original.chosen_option_id},
        {"mistake_ids", item.mistake_ids},
        {"feedback", item.feedback_texts}});
}

void Session::enter_summary(Timestamp now) {
  phase_ = Phase::kSummary;
  emit(now, EventType::kSummaryEmitted, to_json(summary()));
}

const Turn& Session::turn_of(const TurnRecord& record) const {
  return *scenario_->find_turn(record.turn_id);
}

std::optional<OptionId> Session::match_utterance(std::string_view free_text,
                                                 const SimilarityProvider& similarity,
                                                 double threshold) const {
  std::vector<OptionView> options;
  if (phase_ == Phase::kInterview) {
    options = current_prompt().options;
  } else if (phase_ == Phase::kFeedback && feedback_cursor_ < feedback_queue_.size()) {
    options = current_feedback_item().prompt.options;
  } else {
    throw Error(ErrorCode::kWrongPhase, "match_utterance requires an open interview turn or "
                                        "a pending second attempt");
  }

  const std::string wanted = normalize_utterance(free_text);
  std::optional<OptionId> exact;
  int exact_hits = 0;
  for (const auto& o : options) {
    if (!wanted.empty() && normalize_utterance(o.text) == wanted) {
      exact = o.id;
      ++exact_hits;
    }
  }
  if (exact_hits == 1) return exact;
  if (exact_hits > 1) return std::nullopt;

  double best = -1.0;
  double runner_up = -1.0;
  std::optional<OptionId> best_id;
  for (const auto& o : options) {
    const double sim = similarity(free_text, o.text);
    if (sim > best) {
      runner_up = best;
      best = sim;
      best_id = o.id;
    } else if (sim > runner_up) {
      runner_up = sim;
    }
  }
  if (best >= threshold && best > runner_up) return best_id;
  return std::nullopt;
}

FeedbackView Session::current_feedback_item() const {
  require_phase(Phase::kFeedback, "current_feedback_item");
  if (feedback_cursor_ >= feedback_queue_.size()) {
    throw Error(ErrorCode::kQueueExhausted, "no feedback items remain");
  }
  const FeedbackItem& item = feedback_queue_[feedback_cursor_];
  const Turn& turn = turn_of(item.original);
  FeedbackView view;
  view.index = feedback_cursor_;
  view.total = feedback_queue_.size();
  view.prompt = {turn.id, turn.stakeholder_text, {}};
  for (const auto& oid : item.original.options_presented) {
    view.prompt.options.push_back({oid, turn.find_option(oid)->text});
  }
  view.incorrect_chosen_option_id = item.original.chosen_option_id;
  view.mistake_ids = item.mistake_ids;
  view.feedback_texts = item.feedback_texts;
  return view;
}

AttemptResult Session::submit_second_attempt(std::string_view option_id, Timestamp now) {
  require_phase(Phase::kFeedback, "submit_second_attempt");
  if (feedback_cursor_ >= feedback_queue_.size()) {
    throw Error(ErrorCode::kQueueExhausted, "no feedback items remain");
  }
  FeedbackItem& item = feedback_queue_[feedback_cursor_];
  if (item.second_attempt_option_id) {
    throw Error(ErrorCode::kAlreadyAttempted, "second attempt already recorded");
  }
  const Turn& turn = turn_of(item.original);
  const DialogueOption* chosen = turn.find_option(option_id);
  if (!chosen) {
    throw Error(ErrorCode::kUnknownOption,
                "option '" + std::string(option_id) + "' is not offered in turn '" + turn.id + "'");
  }
  advance_clock(now);

  const std::size_t index = feedback_cursor_;
  item.second_attempt_option_id = chosen->id;
  item.second_attempt_correct = chosen->is_correct();
  AttemptResult result;
  result.verdict = chosen->is_correct() ? Verdict::kCorrected : Verdict::kStillIncorrect;
  if (!chosen->is_correct()) {
    item.correct_option_id = turn.correct_option()->id;
    result.correct_option_id = item.correct_option_id;
  }

  emit(now, EventType::kSecondAttemptSubmitted,
       {{"index", index}, {"turn_id", turn.id}, {"option_id", chosen->id}});
  ojson evaluated = {{"index", index},
                     {"turn_id", turn.id},
                     {"verdict", std::string(to_string(result.verdict))}};
  if (result.correct_option_id) evaluated["correct_option_id"] = *result.correct_option_id;
  emit(now, EventType::kAttemptEvaluated, std::move(evaluated));

  ++feedback_cursor_;
  if (feedback_cursor_ == feedback_queue_.size()) {
    enter_summary(now);
  } else {
    present_feedback_item(now);
  }
  result.next_phase = phase_;
  return result;
}

PerformanceSummary Session::summary() const {
  if (phase_ != Phase::kSummary && phase_ != Phase::kEnded) {
    throw Error(ErrorCode::kWrongPhase, "summary requires phase SUMMARY or ENDED, session is in " +
                                            std::string(to_string(phase_)));
  }
  PerformanceSummary s;
  for (MistakeClass c : kAllMistakeClasses) s.per_class[c] = {};
  s.total_turns = static_cast<std::int64_t>(transcript_.size());
  for (const auto& item : feedback_queue_) {
    ++s.mistaken_turns;
    const bool corrected = item.second_attempt_correct.value_or(false);
    if (corrected) ++s.corrected_turns;
    for (MistakeId m : item.mistake_ids) {
      ClassTally& t = s.per_class[catalog_->class_of(m)];
      ++t.occurred;
      if (corrected) {
        ++t.corrected;
        ++s.corrected_total;
      }
    }
  }
  return s;
}

std::string Session::end(Timestamp now) {
  require_phase(Phase::kSummary, "end_session");
  advance_clock(now);
  phase_ = Phase::kEnded;
  emit(now, EventType::kSessionEnded, {{"text", std::string(kClosingText)}});
  return std::string(kClosingText);
}

}  // namespace elicit
