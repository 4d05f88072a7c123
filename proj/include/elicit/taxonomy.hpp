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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace elicit {

enum class MistakeClass {
  kTeamworkAndPlanning,
  kQuestionOmission,
  kQuestionFormulation,
  kOrderOfInterview,
  kStakeholderInteraction,
  kCommunicationSkills,
};

inline constexpr std::array<MistakeClass, 6> kAllMistakeClasses = {
    MistakeClass::kTeamworkAndPlanning,   MistakeClass::kQuestionOmission,
    MistakeClass::kQuestionFormulation,   MistakeClass::kOrderOfInterview,
    MistakeClass::kStakeholderInteraction, MistakeClass::kCommunicationSkills,
};

std::string_view to_string(MistakeClass c);

// Case-insensitive; surrounding whitespace ignored.
std::optional<MistakeClass> parse_mistake_class(std::string_view name);

using MistakeId = int;

struct MistakeType {
  MistakeId id = 0;
  std::string name;
  MistakeClass mistake_class = MistakeClass::kTeamworkAndPlanning;

  friend bool operator==(const MistakeType&, const MistakeType&) = default;
};

struct CatalogEntry {
  MistakeType type;
  std::string feedback;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// Mistake taxonomy plus the instructional text shown for each mistake type
// during feedback replay. Immutable once built.
class FeedbackCatalog {
 public:
  FeedbackCatalog() = default;

  // Throws Error(kDuplicateId) on repeated ids and Error(kInvalidArgument) on
  // empty feedback text or ids outside 1..999.
  explicit FeedbackCatalog(std::vector<CatalogEntry> entries);

  // The thirteen canonical interviewer mistake types in six classes.
  static const FeedbackCatalog& builtin();

  // {"mistakes":[{"id","name","class","feedback"}]}
  static FeedbackCatalog parse(std::string_view document);
  static FeedbackCatalog load(const std::string& path);
  std::string serialize() const;

  bool contains(MistakeId id) const { return entries_.count(id) != 0; }
  const CatalogEntry& at(MistakeId id) const;
  const std::map<MistakeId, CatalogEntry>& entries() const { return entries_; }

  MistakeClass class_of(MistakeId id) const { return at(id).type.mistake_class; }
  const std::string& feedback(MistakeId id) const { return at(id).feedback; }

  friend bool operator==(const FeedbackCatalog&, const FeedbackCatalog&) = default;

 private:
  std::map<MistakeId, CatalogEntry> entries_;
};

}  // namespace elicit
