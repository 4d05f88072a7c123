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

#include "elicit/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "elicit/error.hpp"
#include "file_util.hpp"
#include "json.hpp"

namespace elicit {
namespace detail {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

namespace {

std::string lower_trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<CatalogEntry> builtin_entries() {
  using C = MistakeClass;
  return {
      {{1, "Lack of preparation", C::kTeamworkAndPlanning},
       "Study the domain and the stakeholder's organisation before the interview. Questions that "
       "reveal you have not read the available background waste the stakeholder's time and erode "
       "their trust in the project team."},
      {{2, "Lack of planning", C::kTeamworkAndPlanning},
       "Plan the interview agenda in advance: know which topics you need to cover and in what "
       "order. Improvised, scattered questions make it easy to miss requirements."},
      {{3, "Not identifying stakeholders", C::kQuestionOmission},
       "Ask who else uses or is affected by the system. Other user groups often have needs the "
       "current stakeholder will not mention unprompted."},
      {{4, "Not asking about existing system", C::kQuestionOmission},
       "Ask how the work is done today. The current system, even a manual one, shows what must be "
       "preserved and which pain points the new system should remove."},
      {{5, "Asking long question", C::kQuestionFormulation},
       "Keep each question short and focused on a single topic. Long, compound questions are hard "
       "to follow and usually get a partial answer."},
      {{6, "Asking unnecessary question", C::kQuestionFormulation},
       "Every question should help you elicit a requirement. Avoid questions whose answer you "
       "already have or that do not affect the system."},
      {{7, "Asking stakeholder for solution", C::kQuestionFormulation},
       "Ask about the problem and the goals, not about how to build the solution. Stakeholders "
       "know their needs; design decisions belong to the development team."},
      {{8, "Asking vague question", C::kQuestionFormulation},
       "Make your question specific enough that the stakeholder knows what kind of answer you "
       "need. Vague questions get vague answers."},
      {{9, "Asking technical question", C::kQuestionFormulation},
       "Use the stakeholder's vocabulary, not technical jargon. Questions about databases, "
       "frameworks or protocols confuse non-technical stakeholders."},
      {{10, "Incorrect ending of the interview", C::kOrderOfInterview},
       "Close the interview properly: summarise what you heard, ask whether anything was missed "
       "and agree on the next steps before thanking the stakeholder."},
      {{11, "Influencing stakeholder", C::kStakeholderInteraction},
       "Do not lead the stakeholder towards the answer you expect. Neutral questions let their "
       "real needs surface instead of your assumptions."},
      {{12, "No rapport with stakeholder", C::kStakeholderInteraction},
       "Build rapport: acknowledge the stakeholder's answers and show interest in their concerns. "
       "A stakeholder who feels heard shares more."},
      {{13, "Unnatural dialogue style", C::kCommunicationSkills},
       "Keep the conversation natural: follow up on what the stakeholder just said rather than "
       "reading questions from a list regardless of the answers."},
  };
}

}  // namespace

std::string_view to_string(MistakeClass c) {
  switch (c) {
    case MistakeClass::kTeamworkAndPlanning: return "Teamwork and Planning";
    case MistakeClass::kQuestionOmission: return "Question Omission";
    case MistakeClass::kQuestionFormulation: return "Question Formulation";
    case MistakeClass::kOrderOfInterview: return "Order of interview";
    case MistakeClass::kStakeholderInteraction: return "Stakeholder interaction";
    case MistakeClass::kCommunicationSkills: return "Communication skills";
  }
  return "";
}

std::optional<MistakeClass> parse_mistake_class(std::string_view name) {
  const std::string key = lower_trim(name);
  for (MistakeClass c : kAllMistakeClasses) {
    if (lower_trim(to_string(c)) == key) return c;
  }
  return std::nullopt;
}

FeedbackCatalog::FeedbackCatalog(std::vector<CatalogEntry> entries) {
  for (auto& e : entries) {
    const MistakeId id = e.type.id;
    if (id < 1 || id > 999) {
      throw Error(ErrorCode::kInvalidArgument, "mistake id out of range: " + std::to_string(id));
    }
    if (e.feedback.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty feedback text for mistake id " + std::to_string(id));
    }
    if (!entries_.emplace(id, std::move(e)).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate mistake id " + std::to_string(id));
    }
  }
}

const FeedbackCatalog& FeedbackCatalog::builtin() {
  static const FeedbackCatalog catalog(builtin_entries());
  return catalog;
}

const CatalogEntry& FeedbackCatalog::at(MistakeId id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "mistake id not in catalog: " + std::to_string(id));
  }
  return it->second;
}

FeedbackCatalog FeedbackCatalog::parse(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(document, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("catalog syntax error: ") + e.what(), line, col);
  }
  if (!doc.is_object() || !doc.contains("mistakes") || !doc["mistakes"].is_array()) {
    throw Error(ErrorCode::kMissingField, "catalog: missing array field 'mistakes'");
  }
  std::vector<CatalogEntry> entries;
  for (const auto& m : doc["mistakes"]) {
    for (const char* field : {"id", "name", "class", "feedback"}) {
      if (!m.is_object() || !m.contains(field)) {
        throw Error(ErrorCode::kMissingField, std::string("catalog entry: missing field '") +
                                                  field + "'");
      }
    }
    if (!m["id"].is_number_integer() || !m["name"].is_string() || !m["class"].is_string() ||
        !m["feedback"].is_string()) {
      throw Error(ErrorCode::kParse, "catalog entry: field has wrong type");
    }
    auto cls = parse_mistake_class(m["class"].get<std::string>());
    if (!cls) {
      throw Error(ErrorCode::kInvalidArgument,
                  "catalog entry: unknown mistake class '" + m["class"].get<std::string>() + "'");
    }
    entries.push_back({{m["id"].get<int>(), m["name"].get<std::string>(), *cls},
                       m["feedback"].get<std::string>()});
  }
  return FeedbackCatalog(std::move(entries));
}

FeedbackCatalog FeedbackCatalog::load(const std::string& path) {
  return parse(detail::read_text_file(path));
}

std::string FeedbackCatalog::serialize() const {
  nlohmann::ordered_json doc;
  doc["mistakes"] = nlohmann::ordered_json::array();
  for (const auto& [id, e] : entries_) {
    doc["mistakes"].push_back({{"id", id},
                               {"name", e.type.name},
                               {"class", std::string(to_string(e.type.mistake_class))},
                               {"feedback", e.feedback}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace elicit
