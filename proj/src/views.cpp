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

#include "elicit/views.hpp"

namespace elicit {

using ojson = nlohmann::ordered_json;

ojson to_json(const ValidationReport& report) {
  ojson findings = ojson::array();
  for (const auto& f : report.findings) {
    findings.push_back({{"severity", f.severity == Severity::kError ? "error" : "warning"},
                        {"code", f.code},
                        {"location", f.location},
                        {"message", f.message}});
  }
  return {{"ok", report.ok}, {"findings", findings}};
}

ojson to_json(const Prompt& p) {
  ojson options = ojson::array();
  for (const auto& o : p.options) options.push_back({{"id", o.id}, {"text", o.text}});
  return {{"turn_id", p.turn_id}, {"stakeholder_text", p.stakeholder_text}, {"options", options}};
}

ojson state_json(const Session& s) {
  ojson state = {{"session_id", s.id()},
                 {"scenario_id", s.scenario_id()},
                 {"mode", std::string(to_string(s.mode()))},
                 {"phase", std::string(to_string(s.phase()))},
                 {"turns_answered", s.transcript().size()}};
  switch (s.phase()) {
    case Phase::kInterview:
      state["prompt"] = to_json(s.current_prompt());
      break;
    case Phase::kFeedback: {
      const FeedbackView v = s.current_feedback_item();
      ojson mistakes = ojson::array();
      for (MistakeId m : v.mistake_ids) {
        const auto& e = s.catalog().at(m);
        mistakes.push_back({{"id", m},
                            {"name", e.type.name},
                            {"class", std::string(to_string(e.type.mistake_class))}});
      }
      state["feedback"] = {{"index", v.index},
                           {"total", v.total},
                           {"prompt", to_json(v.prompt)},
                           {"incorrect_chosen_option_id", v.incorrect_chosen_option_id},
                           {"mistakes", mistakes},
                           {"feedback_texts", v.feedback_texts}};
      break;
    }
    case Phase::kSummary:
    case Phase::kEnded:
      state["summary"] = to_json(s.summary());
      break;
    case Phase::kGreeting:
      break;
  }
  return state;
}

}  // namespace elicit
