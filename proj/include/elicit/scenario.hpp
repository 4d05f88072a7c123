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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elicit/taxonomy.hpp"

namespace elicit {

using TurnId = std::string;
using OptionId = std::string;

inline constexpr std::size_t kOptionsPerTurn = 3;

struct DialogueOption {
  OptionId id;
  std::string text;
  std::vector<MistakeId> mistake_ids;
  std::optional<TurnId> next_turn;  // nullopt ends the interview

  bool is_correct() const { return mistake_ids.empty(); }
  bool is_terminal() const { return !next_turn.has_value(); }

  friend bool operator==(const DialogueOption&, const DialogueOption&) = default;
};

struct Turn {
  TurnId id;
  std::string stakeholder_text;
  std::vector<DialogueOption> options;

  const DialogueOption* find_option(std::string_view option_id) const;
  // First option without mistakes, or nullptr.
  const DialogueOption* correct_option() const;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Scenario {
  std::string id;
  std::string title;
  std::string intro;
  TurnId start_turn;
  std::map<TurnId, Turn> turns;

  const Turn* find_turn(std::string_view turn_id) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class Severity { kError, kWarning };

struct Finding {
  Severity severity = Severity::kError;
  std::string code;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Finding> findings;

  bool has(std::string_view code) const;
};

struct PathBounds {
  std::int64_t min_turns = 0;
  std::int64_t max_turns = 0;
  // Number of distinct root-to-terminal option sequences; saturates at
  // UINT64_MAX.
  std::uint64_t path_count = 0;

  friend bool operator==(const PathBounds&, const PathBounds&) = default;
};

// Structural parse only. Throws ParseError on malformed text (with line and
// column), Error(kMissingField) and Error(kDuplicateId) for repeated turn ids.
Scenario parse_scenario(std::string_view document);
Scenario load_scenario(const std::string& path);

// Canonical text form; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

// Never throws for scenario content problems; every violation is a finding.
ValidationReport validate(const Scenario& scenario, const FeedbackCatalog& catalog);

// Occurrences of each mistake id over every (turn, option) pair, reachable or
// not.
std::map<MistakeId, std::int64_t> tally_mistakes(const Scenario& scenario);

// Turn-count bounds and path count over the graph reachable from start_turn.
// Throws Error(kCycle) on cycles, Error(kInvalidScenario) on dangling
// references.
PathBounds path_bounds(const Scenario& scenario);

}  // namespace elicit
