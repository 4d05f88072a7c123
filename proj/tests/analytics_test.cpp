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


#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "elicit/analytics.hpp"
#include "elicit/error.hpp"
#include "elicit/session_log.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace elicit::analytics {
namespace {

using testing::builtin_catalog;
using Options = std::array<std::string, 3>;

// Punctuation-only tokens count as words but carry no similarity weight,
// which lets word counts and similarity be set independently.
const Options kDisjoint567 = {"alpha beta gamma delta epsilon", "one two three four five six",
                              "red orange yellow green blue indigo violet"};
const Options kHalf567 = {"north south ? ! .", "north west ? ! . ,",
                          "red orange yellow green blue indigo violet"};
const Options kSame567 = {"apple pear plum fig kiwi", "apple pear plum fig kiwi ?",
                          "one two three four five six seven"};

TurnTiming timing(const Options& o, double rt, SessionMode mode = SessionMode::kSpoken,
                  std::string stakeholder = "", bool mistake = false) {
  TurnTiming t;
  t.turn_id = "t";
  t.rt_seconds = rt;
  t.option_texts.assign(o.begin(), o.end());
  t.stakeholder_text = std::move(stakeholder);
  t.mode = mode;
  t.is_mistake = mistake;
  return t;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(OptionSimilarity, Examples) {
  const Options same = {"the system", "the system", "the system"};
  EXPECT_DOUBLE_EQ(option_set_similarity(same), 1.0);
  const Options disjoint = {"alpha", "beta", "gamma"};
  EXPECT_DOUBLE_EQ(option_set_similarity(disjoint), 0.0);
  EXPECT_DOUBLE_EQ(option_set_similarity(kHalf567), 0.5);
}

TEST(OptionSimilarity, MaxOfThreePairsWithCustomProvider) {
  const Options o = {"x", "y", "z"};
  auto table = [](std::string_view a, std::string_view b) {
    const std::string key = std::string(a) + std::string(b);
    if (key == "xy" || key == "yx") return 0.0;
    if (key == "xz" || key == "zx") return 0.5;
    return 2.0 / 3.0;
  };
  EXPECT_DOUBLE_EQ(option_set_similarity(o, table), 2.0 / 3.0);
}

TEST(OptionSimilarity, WrongArity) {
  const std::array<std::string, 2> two = {"a", "b"};
  EXPECT_EQ(code_of([&] { option_set_similarity(two); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { eval_options(two); }), ErrorCode::kInvalidArgument);
}

TEST(EvalOptions, Examples) {
  EXPECT_DOUBLE_EQ(eval_options(kDisjoint567), 18.0);
  EXPECT_DOUBLE_EQ(eval_options(kHalf567), 27.0);
  const Options four = {"who books the rooms", "who books the rooms", "who books the rooms"};
  EXPECT_DOUBLE_EQ(eval_options(four), 24.0);
  EXPECT_DOUBLE_EQ(eval_options(kSame567), 36.0);
}

TEST(EvalOptions, MonotoneInWordsAndSimilarity) {
  testing::Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    Options o;
    for (auto& t : o) {
      const int n = testing::uniform_int(rng, 0, 6);
      for (int k = 0; k < n; ++k) t += "w" + std::to_string(testing::uniform_int(rng, 0, 8)) + " ";
    }
    const double base = eval_options(o);
    Options longer = o;
    longer[testing::uniform_int(rng, 0, 2)] += " ;";  // one more word, same tokens
    EXPECT_GE(eval_options(longer), base);
    const double s = testing::uniform_real(rng, 0, 1);
    auto low = [s](std::string_view, std::string_view) { return s; };
    auto high = [s](std::string_view, std::string_view) { return std::min(1.0, s + 0.1); };
    EXPECT_LE(eval_options(o, low), eval_options(o, high));
  }
}

TEST(CognitiveLoad, ModeSplit) {
  EXPECT_DOUBLE_EQ(cognitive_load(timing(kDisjoint567, 1)), 18.0);
  const std::string ten = "we need a way to stop groups booking the same";
  ASSERT_EQ(testing::whitespace_words(ten), 10u);
  EXPECT_DOUBLE_EQ(cognitive_load(timing(kDisjoint567, 1, SessionMode::kText, ten)), 28.0);
  EXPECT_DOUBLE_EQ(cognitive_load(timing(kDisjoint567, 1, SessionMode::kText, "")), 18.0);
  // SPOKEN ignores the stakeholder text.
  EXPECT_DOUBLE_EQ(cognitive_load(timing(kDisjoint567, 1, SessionMode::kSpoken, ten)), 18.0);
}

TEST(ProcessingSpeed, PerTurn) {
  EXPECT_DOUBLE_EQ(processing_speed_turn(timing(kHalf567, 3.0)), 9.0);
  EXPECT_DOUBLE_EQ(processing_speed_turn(timing({"", "", ""}, 2.0)), 0.0);
  EXPECT_EQ(code_of([] { processing_speed_turn(timing(kHalf567, 0.0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { processing_speed_turn(timing(kHalf567, -1.0)); }),
            ErrorCode::kInvalidArgument);
}

TEST(ProcessingSpeed, SessionMeanAndSubsets) {
  // PS 4 (18 / 4.5) on a mistaken turn and 6 (18 / 3) on a correct one.
  const std::vector<TurnTiming> t = {timing(kDisjoint567, 4.5, SessionMode::kSpoken, "", true),
                                     timing(kDisjoint567, 3.0)};
  EXPECT_DOUBLE_EQ(session_processing_speed(t, TurnSubset::kAll), 5.0);
  EXPECT_DOUBLE_EQ(session_processing_speed(t, TurnSubset::kMistake), 4.0);
  EXPECT_DOUBLE_EQ(session_processing_speed(t, TurnSubset::kNoMistake), 6.0);
  const std::vector<TurnTiming> clean = {timing(kDisjoint567, 3.0)};
  EXPECT_EQ(code_of([&] { session_processing_speed(clean, TurnSubset::kMistake); }),
            ErrorCode::kEmptySample);
  EXPECT_EQ(code_of([] { session_processing_speed({}, TurnSubset::kAll); }),
            ErrorCode::kEmptySample);
}

// Independent pass over the per-turn formulas with the reference cosine.
double reference_ps(const TurnTiming& t) {
  double s = 0;
  std::size_t words = 0;
  for (int i = 0; i < 3; ++i) {
    words += testing::whitespace_words(t.option_texts[i]);
    for (int j = i + 1; j < 3; ++j) {
      s = std::max(s, testing::reference_cosine(t.option_texts[i], t.option_texts[j]));
    }
  }
  double cl = (1 + s) * static_cast<double>(words);
  if (t.mode == SessionMode::kText) cl += static_cast<double>(testing::whitespace_words(t.stakeholder_text));
  return cl / t.rt_seconds;
}

TEST(ProcessingSpeed, SeventeenTurnRecomputation) {
  testing::Rng rng(17);
  static const char* vocab[] = {"room", "book", "fee", "desk", "who", "when", "the", "a", "?"};
  for (SessionMode mode : {SessionMode::kSpoken, SessionMode::kText}) {
    std::vector<TurnTiming> turns;
    for (int i = 0; i < 17; ++i) {
      Options o;
      for (auto& text : o) {
        const int n = testing::uniform_int(rng, 1, 9);
        for (int k = 0; k < n; ++k) text += std::string(k ? " " : "") + vocab[testing::uniform_int(rng, 0, 8)];
      }
      std::string st;
      for (int k = testing::uniform_int(rng, 0, 12); k > 0; --k) st += "word ";
      turns.push_back(timing(o, testing::uniform_real(rng, 0.5, 12.0), mode, st, i % 3 == 0));
    }
    double sum = 0;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& t : turns) {
      const double ps = reference_ps(t);
      EXPECT_NEAR(processing_speed_turn(t), ps, 1e-9);
      sum += ps;
      lo = std::min(lo, ps);
      hi = std::max(hi, ps);
    }
    const double all = session_processing_speed(turns, TurnSubset::kAll);
    EXPECT_NEAR(all, sum / 17.0, 1e-9);
    EXPECT_GE(all, lo - 1e-12);
    EXPECT_LE(all, hi + 1e-12);
  }
}

TEST(CognitiveLoad, TextNeverBelowSpoken) {
  testing::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    std::string st;
    for (int k = testing::uniform_int(rng, 0, 5); k > 0; --k) st += "x ";
    const TurnTiming spoken = timing(kHalf567, 1, SessionMode::kSpoken, st);
    const TurnTiming text = timing(kHalf567, 1, SessionMode::kText, st);
    const double diff = cognitive_load(text) - cognitive_load(spoken);
    EXPECT_DOUBLE_EQ(diff, static_cast<double>(testing::whitespace_words(st)));
    EXPECT_EQ(diff == 0.0, st.empty());
  }
}

// ---- log extraction -----------------------------------------------------------

std::shared_ptr<const Scenario> toy() {
  static const auto s = std::make_shared<const Scenario>(testing::toy_scenario());
  return s;
}

SessionLog toy_log(SessionMode mode = SessionMode::kSpoken) {
  auto s = Session::start(toy(), builtin_catalog(), mode, 0, 1000).first;
  s.submit_choice("b", 4000);        // rt 3.0, mistake {8}
  s.submit_choice("a", 6000, 1500);  // client rt wins: 1.5, mistake {11, 12}
  s.submit_choice("a", 10000);       // rt 4.0
  s.submit_second_attempt("a", 11000);  // corrected
  s.submit_second_attempt("c", 12000);  // still incorrect
  s.end(13000);
  return log_of(s);
}

TEST(ExtractTimings, ResponseTimes) {
  const auto t = extract_timings(toy_log());
  ASSERT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t[0].rt_seconds, 3.0);
  EXPECT_DOUBLE_EQ(t[1].rt_seconds, 1.5);
  EXPECT_DOUBLE_EQ(t[2].rt_seconds, 4.0);
  EXPECT_TRUE(t[0].is_mistake);
  EXPECT_FALSE(t[2].is_mistake);
  EXPECT_EQ(t[1].stakeholder_text, toy()->turns.at("t2").stakeholder_text);
  EXPECT_EQ(t[0].option_texts.size(), 3u);
}

TEST(ExtractTimings, MissingChoiceIsMalformed) {
  SessionLog log = toy_log();
  std::vector<EngineEvent> kept;
  bool dropped = false;
  for (auto ev : log.events) {
    if (!dropped && ev.type == EventType::kChoiceSubmitted) {
      dropped = true;
      continue;
    }
    ev.seq = static_cast<std::int64_t>(kept.size()) + 1;
    kept.push_back(ev);
  }
  log.events = kept;
  EXPECT_EQ(code_of([&] { extract_timings(log); }), ErrorCode::kMalformedLog);
}

TEST(ExtractTimings, UnfinishedInterviewIsMalformed) {
  auto s = Session::start(toy(), builtin_catalog(), SessionMode::kSpoken, 0, 1000).first;
  s.submit_choice("a", 2000);
  EXPECT_EQ(code_of([&] { extract_timings(log_of(s)); }), ErrorCode::kMalformedLog);
}

TEST(ExtractTimings, ZeroResponseTimeIsMalformed) {
  auto s = Session::start(toy(), builtin_catalog(), SessionMode::kSpoken, 0, 1000).first;
  s.submit_choice("a", 1000);
  s.submit_choice("b", 2000);
  s.submit_choice("a", 3000);
  EXPECT_EQ(code_of([&] { extract_timings(log_of(s)); }), ErrorCode::kMalformedLog);
}

TEST(ExtractTimings, CountEqualsTranscriptOnReplayedSessions) {
  testing::Rng rng(55);
  for (int i = 0; i < 50; ++i) {
    const auto scenario = std::make_shared<const Scenario>(testing::random_scenario(rng));
    const auto mode = i % 2 ? SessionMode::kText : SessionMode::kSpoken;
    const auto script = testing::random_script(scenario, builtin_catalog(), mode, 5, rng);
    const Session s = testing::run_script(scenario, builtin_catalog(), mode, 5, script);
    const auto replayed = replay(log_of(s), scenario, builtin_catalog()).session;
    const auto t = extract_timings(log_of(replayed));
    ASSERT_EQ(t.size(), replayed.transcript().size());
    for (std::size_t k = 0; k < t.size(); ++k) {
      const auto& rec = replayed.transcript()[k];
      const double expected = rec.client_rt_ms && *rec.client_rt_ms > 0
                                  ? *rec.client_rt_ms / 1000.0
                                  : (rec.chosen_at - rec.presented_at) / 1000.0;
      ASSERT_DOUBLE_EQ(t[k].rt_seconds, expected);
      ASSERT_EQ(t[k].is_mistake, rec.is_mistake);
      ASSERT_EQ(t[k].mode, mode);
    }
  }
}

// ---- corrections ----------------------------------------------------------------

TEST(Corrections, ToyLog) {
  const std::vector<SessionLog> logs = {toy_log()};
  const auto c = correction_stats(logs, *builtin_catalog());
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(c.at(MistakeClass::kQuestionFormulation), (CorrectionTally{1, 0}));
  EXPECT_EQ(c.at(MistakeClass::kStakeholderInteraction), (CorrectionTally{0, 2}));
  EXPECT_EQ(c.at(MistakeClass::kOrderOfInterview), (CorrectionTally{0, 0}));
}

TEST(Corrections, BatchMatchesEventStreamFilter) {
  testing::Rng rng(91);
  std::vector<SessionLog> logs;
  for (int i = 0; i < 40; ++i) {
    const auto scenario = std::make_shared<const Scenario>(testing::random_scenario(rng));
    const auto script = testing::random_script(scenario, builtin_catalog(), SessionMode::kText, 3, rng);
    logs.push_back(log_of(testing::run_script(scenario, builtin_catalog(), SessionMode::kText, 3, script)));
  }
  // Oracle: pair each feedback item with the verdict of the same index.
  std::map<MistakeClass, CorrectionTally> expected;
  for (MistakeClass c : kAllMistakeClasses) expected[c] = {};
  std::int64_t occurrences = 0;
  for (const auto& log : logs) {
    std::map<std::int64_t, std::vector<int>> items;
    std::map<std::int64_t, bool> verdicts;
    for (const auto& ev : log.events) {
      if (ev.type == EventType::kFeedbackItemPresented) {
        items[ev.payload["index"].get<std::int64_t>()] = ev.payload["mistake_ids"].get<std::vector<int>>();
      } else if (ev.type == EventType::kAttemptEvaluated) {
        verdicts[ev.payload["index"].get<std::int64_t>()] = ev.payload["verdict"] == "CORRECTED";
      }
    }
    for (const auto& [index, ids] : items) {
      for (int m : ids) {
        ++occurrences;
        auto& cell = expected[builtin_catalog()->class_of(m)];
        (verdicts.at(index) ? cell.corrected : cell.uncorrected) += 1;
      }
    }
  }
  const auto got = correction_stats(logs, *builtin_catalog());
  EXPECT_EQ(got, expected);
  std::int64_t total = 0;
  for (const auto& [c, t] : got) total += t.corrected + t.uncorrected;
  EXPECT_EQ(total, occurrences);
}

}  // namespace
}  // namespace elicit::analytics
