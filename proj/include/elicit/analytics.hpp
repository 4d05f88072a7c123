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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elicit/engine.hpp"
#include "elicit/session_log.hpp"
#include "elicit/taxonomy.hpp"
#include "elicit/text.hpp"

namespace elicit::analytics {

// What the trainee had to process in one interview turn and how long it took.
struct TurnTiming {
  TurnId turn_id;
  double rt_seconds = 0.0;
  std::vector<std::string> option_texts;  // exactly 3
  std::string stakeholder_text;
  SessionMode mode = SessionMode::kSpoken;
  bool is_mistake = false;
};

enum class TurnSubset { kAll, kMistake, kNoMistake };

// Maximum pairwise similarity among the three options of a turn.
double option_set_similarity(std::span<const std::string> options,
                             const SimilarityProvider& sim = default_similarity());

// Words the trainee reads across all options, weighted up by how alike the
// options are: (1 + S) * total words.
double eval_options(std::span<const std::string> options,
                    const SimilarityProvider& sim = default_similarity());

// TEXT mode adds the stakeholder utterance, read on screen together with the
// options.
double cognitive_load(const TurnTiming& timing,
                      const SimilarityProvider& sim = default_similarity());

// Cognitive load per second. Throws Error(kInvalidArgument) for rt <= 0.
double processing_speed_turn(const TurnTiming& timing,
                             const SimilarityProvider& sim = default_similarity());

// Mean per-turn processing speed over the selected turns. Throws
// Error(kEmptySample) when no turn qualifies.
double session_processing_speed(std::span<const TurnTiming> timings, TurnSubset subset,
                                const SimilarityProvider& sim = default_similarity());

// One timing per answered interview turn. RT runs from options_presented to
// choice_submitted; a client-measured client_rt_ms takes precedence when
// recorded. Throws Error(kMalformedLog) for unpaired events, an unfinished
// interview or a non-positive RT.
std::vector<TurnTiming> extract_timings(const SessionLog& log);

struct CorrectionTally {
  std::int64_t corrected = 0;
  std::int64_t uncorrected = 0;

  friend bool operator==(const CorrectionTally&, const CorrectionTally&) = default;
};

// Every mistake-id occurrence on an originally chosen option counts once, as
// corrected iff that turn's second attempt was judged CORRECTED. All six
// classes are present in the result.
std::map<MistakeClass, CorrectionTally> correction_stats(std::span<const SessionLog> logs,
                                                         const FeedbackCatalog& catalog);

}  // namespace elicit::analytics
