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


#include <set>

#include <gtest/gtest.h>

#include "elicit/error.hpp"
#include "elicit/taxonomy.hpp"
#include "fixtures.hpp"

namespace elicit {
namespace {

TEST(Taxonomy, BuiltinHasThirteenTypesInSixClasses) {
  const auto& catalog = FeedbackCatalog::builtin();
  ASSERT_EQ(catalog.entries().size(), 13u);
  std::set<MistakeClass> classes;
  int expected_id = 1;
  for (const auto& [id, entry] : catalog.entries()) {
    EXPECT_EQ(id, expected_id++);
    EXPECT_FALSE(entry.feedback.empty());
    classes.insert(entry.type.mistake_class);
  }
  EXPECT_EQ(classes.size(), 6u);
}

TEST(Taxonomy, CanonicalTriples) {
  const auto& c = FeedbackCatalog::builtin();
  EXPECT_EQ(c.at(1).type.name, "Lack of preparation");
  EXPECT_EQ(c.class_of(2), MistakeClass::kTeamworkAndPlanning);
  EXPECT_EQ(c.class_of(4), MistakeClass::kQuestionOmission);
  EXPECT_EQ(c.at(8).type.name, "Asking vague question");
  EXPECT_EQ(c.class_of(9), MistakeClass::kQuestionFormulation);
  EXPECT_EQ(c.class_of(10), MistakeClass::kOrderOfInterview);
  EXPECT_EQ(c.class_of(12), MistakeClass::kStakeholderInteraction);
  EXPECT_EQ(c.at(13).type.name, "Unnatural dialogue style");
  EXPECT_EQ(c.class_of(13), MistakeClass::kCommunicationSkills);
}

TEST(Taxonomy, ClassNamesParseCaseInsensitively) {
  for (MistakeClass c : kAllMistakeClasses) {
    EXPECT_EQ(parse_mistake_class(to_string(c)), c);
  }
  EXPECT_EQ(parse_mistake_class("  order OF interview "), MistakeClass::kOrderOfInterview);
  EXPECT_FALSE(parse_mistake_class("Spelling").has_value());
}

TEST(Taxonomy, SerializeParseRoundTrip) {
  const auto& builtin = FeedbackCatalog::builtin();
  const FeedbackCatalog again = FeedbackCatalog::parse(builtin.serialize());
  ASSERT_EQ(again.entries().size(), builtin.entries().size());
  for (const auto& [id, e] : builtin.entries()) {
    EXPECT_EQ(again.at(id).type.name, e.type.name);
    EXPECT_EQ(again.class_of(id), e.type.mistake_class);
    EXPECT_EQ(again.feedback(id), e.feedback);
  }
}

TEST(Taxonomy, BundledCatalogFileMatchesBuiltin) {
  const FeedbackCatalog file = FeedbackCatalog::load(testing::data_path("catalog.json"));
  EXPECT_EQ(file.serialize(), FeedbackCatalog::builtin().serialize());
}

TEST(Taxonomy, RejectsBadCatalogs) {
  try {
    FeedbackCatalog::parse(R"({"mistakes": [
      {"id": 1, "name": "x", "class": "Question Omission", "feedback": "f"},
      {"id": 1, "name": "y", "class": "Question Omission", "feedback": "g"}]})");
    FAIL() << "duplicate id accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateId);
  }
  EXPECT_THROW(FeedbackCatalog::parse(R"({"mistakes": [{"id": 1, "name": "x", "class": "Nope", "feedback": "f"}]})"),
               Error);
  EXPECT_THROW(FeedbackCatalog::parse(R"({"mistakes": [{"id": 1, "name": "x", "class": "Question Omission", "feedback": ""}]})"),
               Error);
  EXPECT_THROW(FeedbackCatalog::parse(R"({"mistakes": [{"id": 1}]})"), Error);
  try {
    FeedbackCatalog::parse("{\n  \"mistakes\": [,]\n}");
    FAIL() << "syntax error accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Taxonomy, UnknownIdLookupThrows) {
  EXPECT_FALSE(FeedbackCatalog::builtin().contains(14));
  EXPECT_THROW(FeedbackCatalog::builtin().at(14), Error);
}

}  // namespace
}  // namespace elicit
