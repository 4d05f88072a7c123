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

#include "elicit/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "elicit/error.hpp"
#include "file_util.hpp"
#include "json.hpp"

namespace elicit {

using nlohmann::json;

const DialogueOption* Turn::find_option(std::string_view option_id) const {
  for (const auto& o : options) {
    if (o.id == option_id) return &o;
  }
  return nullptr;
}

const DialogueOption* Turn::correct_option() const {
  for (const auto& o : options) {
    if (o.is_correct()) return &o;
  }
  return nullptr;
}

const Turn* Scenario::find_turn(std::string_view turn_id) const {
  auto it = turns.find(std::string(turn_id));
  return it == turns.end() ? nullptr : &it->second;
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding& f) { return f.code == code; });
}

namespace {

struct DuplicateTurnId {
  std::string id;
};

// Line of the n-th (0-based) occurrence of "key" used as an object key.
std::size_t key_line(std::string_view text, const std::string& key, int nth) {
  const std::string needle = "\"" + key + "\"";
  std::size_t pos = 0;
  int seen = 0;
  while ((pos = text.find(needle, pos)) != std::string_view::npos) {
    std::size_t after = pos + needle.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') {
      if (seen++ == nth) return detail::line_column(text, pos).first;
    }
    pos += needle.size();
  }
  return 0;
}

json parse_rejecting_duplicate_turns(std::string_view document) {
  struct Frame {
    std::set<std::string> keys;
    std::string last_key;
    std::string owner;
  };
  std::vector<Frame> stack;
  auto callback = [&](int /*depth*/, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        stack.push_back({{}, {}, stack.empty() ? std::string() : stack.back().last_key});
        break;
      case json::parse_event_t::key: {
        auto& frame = stack.back();
        std::string key = parsed.get<std::string>();
        if (!frame.keys.insert(key).second) {
          if (stack.size() == 2 && frame.owner == "turns") throw DuplicateTurnId{key};
          throw Error(ErrorCode::kParse, "duplicate object key '" + key + "'");
        }
        frame.last_key = std::move(key);
        break;
      }
      case json::parse_event_t::object_end:
        stack.pop_back();
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(document, callback);
  } catch (const json::parse_error& e) {
    auto [line, col] = detail::line_column(document, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("scenario syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  } catch (const DuplicateTurnId& dup) {
    const std::size_t line = key_line(document, dup.id, 1);
    throw Error(ErrorCode::kDuplicateId, "duplicate turn id '" + dup.id + "'" +
                                             (line ? " at line " + std::to_string(line) : ""));
  }
}

const json& require(const json& obj, const char* field, const std::string& where) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw Error(ErrorCode::kMissingField, where + ": missing required field '" + field + "'");
  }
  return obj.at(field);
}

std::string require_string(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_string()) {
    throw Error(ErrorCode::kParse, where + ": field '" + field + "' must be a string");
  }
  return v.get<std::string>();
}

DialogueOption parse_option(const json& j, const std::string& where) {
  DialogueOption opt;
  opt.id = require_string(j, "id", where);
  const std::string here = where + "/" + opt.id;
  opt.text = require_string(j, "text", here);
  const json& mistakes = require(j, "mistakes", here);
  if (!mistakes.is_array()) throw Error(ErrorCode::kParse, here + ": 'mistakes' must be an array");
  for (const auto& m : mistakes) {
    if (!m.is_number_integer()) {
      throw Error(ErrorCode::kParse, here + ": mistake ids must be integers");
    }
    opt.mistake_ids.push_back(m.get<MistakeId>());
  }
  if (j.contains("next") && !j["next"].is_null()) {
    if (!j["next"].is_string()) {
      throw Error(ErrorCode::kParse, here + ": 'next' must be a turn id or null");
    }
    opt.next_turn = j["next"].get<std::string>();
  }
  return opt;
}

}  // namespace

Scenario parse_scenario(std::string_view document) {
  const json doc = parse_rejecting_duplicate_turns(document);
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "scenario document must be an object");

  Scenario s;
  s.id = require_string(doc, "id", "scenario");
  s.title = require_string(doc, "title", "scenario");
  s.intro = require_string(doc, "intro", "scenario");
  s.start_turn = require_string(doc, "start_turn", "scenario");
  const json& turns = require(doc, "turns", "scenario");
  if (!turns.is_object()) throw Error(ErrorCode::kParse, "scenario: 'turns' must be an object");

  for (const auto& [turn_id, tj] : turns.items()) {
    const std::string where = "turn " + turn_id;
    Turn turn;
    turn.id = turn_id;
    turn.stakeholder_text = require_string(tj, "stakeholder_text", where);
    const json& options = require(tj, "options", where);
    if (!options.is_array()) throw Error(ErrorCode::kParse, where + ": 'options' must be an array");
    for (const auto& oj : options) turn.options.push_back(parse_option(oj, where));
    s.turns.emplace(turn_id, std::move(turn));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(detail::read_text_file(path));
}

std::string serialize_scenario(const Scenario& s) {
  nlohmann::ordered_json doc;
  doc["id"] = s.id;
  doc["title"] = s.title;
  doc["intro"] = s.intro;
  doc["start_turn"] = s.start_turn;
  doc["turns"] = nlohmann::ordered_json::object();
  for (const auto& [id, turn] : s.turns) {
    nlohmann::ordered_json tj;
    tj["stakeholder_text"] = turn.stakeholder_text;
    tj["options"] = nlohmann::ordered_json::array();
    for (const auto& o : turn.options) {
      nlohmann::ordered_json oj;
      oj["id"] = o.id;
      oj["text"] = o.text;
      oj["mistakes"] = o.mistake_ids;
      oj["next"] = o.next_turn ? nlohmann::ordered_json(*o.next_turn) : nlohmann::ordered_json();
      tj["options"].push_back(std::move(oj));
    }
    doc["turns"][id] = std::move(tj);
  }
  return doc.dump(2) + "\n";
}

ValidationReport validate(const Scenario& s, const FeedbackCatalog& catalog) {
  ValidationReport report;
  auto add = [&](Severity sev, std::string code, std::string location, std::string message) {
    report.findings.push_back({sev, std::move(code), std::move(location), std::move(message)});
  };

  if (s.turns.empty()) add(Severity::kError, "no-turns", s.id, "scenario defines no turns");
  if (!s.find_turn(s.start_turn)) {
    add(Severity::kError, "missing-start-turn", s.start_turn,
        "start_turn '" + s.start_turn + "' is not defined");
  }

  std::set<std::string> reported_dangling;
  for (const auto& [tid, turn] : s.turns) {
    if (turn.options.size() != kOptionsPerTurn) {
      add(Severity::kError, "wrong-option-count", tid,
          "turn has " + std::to_string(turn.options.size()) + " options, expected 3");
    }
    const auto correct = std::count_if(turn.options.begin(), turn.options.end(),
                                       [](const DialogueOption& o) { return o.is_correct(); });
    if (correct == 0) {
      add(Severity::kError, "no-correct-option", tid, "turn has no option without mistakes");
    } else if (correct > 1) {
      add(Severity::kError, "multiple-correct-options", tid,
          "turn has " + std::to_string(correct) + " options without mistakes");
    }
    std::set<std::string> option_ids;
    for (const auto& o : turn.options) {
      const std::string loc = tid + "/" + o.id;
      if (!option_ids.insert(o.id).second) {
        add(Severity::kError, "duplicate-option-id", loc, "option id repeated within turn");
      }
      std::set<MistakeId> seen;
      for (MistakeId m : o.mistake_ids) {
        if (!seen.insert(m).second) {
          add(Severity::kError, "duplicate-mistake-id", loc,
              "mistake id " + std::to_string(m) + " listed twice");
        }
        if (!catalog.contains(m)) {
          add(Severity::kError, "unknown-mistake-id", loc,
              "mistake id " + std::to_string(m) + " has no catalog entry");
        }
      }
      if (o.next_turn && !s.find_turn(*o.next_turn) && reported_dangling.insert(*o.next_turn).second) {
        add(Severity::kError, "dangling-reference", *o.next_turn,
            "turn '" + *o.next_turn + "' referenced from " + loc + " is not defined");
      }
    }
    if (turn.stakeholder_text.empty()) {
      add(Severity::kWarning, "empty-stakeholder-text", tid, "turn has no stakeholder text");
    }
  }

  // Reachability and cycle search from the start turn.
  enum class Mark { kNone, kActive, kDone };
  std::unordered_map<std::string, Mark> mark;
  std::set<std::string> cycle_turns;
  if (const Turn* start = s.find_turn(s.start_turn)) {
    std::vector<std::pair<const Turn*, std::size_t>> stack{{start, 0}};
    mark[start->id] = Mark::kActive;
    while (!stack.empty()) {
      auto& [turn, next_index] = stack.back();
      if (next_index == turn->options.size()) {
        mark[turn->id] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      const DialogueOption& o = turn->options[next_index++];
      if (!o.next_turn) continue;
      const Turn* child = s.find_turn(*o.next_turn);
      if (!child) continue;
      Mark& m = mark[child->id];
      if (m == Mark::kActive) {
        if (cycle_turns.insert(child->id).second) {
          add(Severity::kError, "cycle", child->id,
              "turn '" + child->id + "' is reachable from itself via " + turn->id + "/" + o.id);
        }
      } else if (m == Mark::kNone) {
        m = Mark::kActive;
        stack.emplace_back(child, 0);
      }
    }
  }
  for (const auto& [tid, turn] : s.turns) {
    if (s.find_turn(s.start_turn) && mark[tid] == Mark::kNone) {
      add(Severity::kWarning, "unreachable-turn", tid, "turn is not reachable from start_turn");
    }
  }

  // Turns from which no terminal option is reachable: backward closure from
  // turns holding a terminal option.
  std::map<std::string, std::vector<std::string>> parents;
  std::vector<std::string> frontier;
  std::set<std::string> can_finish;
  for (const auto& [tid, turn] : s.turns) {
    for (const auto& o : turn.options) {
      if (o.is_terminal()) {
        if (can_finish.insert(tid).second) frontier.push_back(tid);
      } else if (s.find_turn(*o.next_turn)) {
        parents[*o.next_turn].push_back(tid);
      }
    }
  }
  while (!frontier.empty()) {
    std::string t = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& p : parents[t]) {
      if (can_finish.insert(p).second) frontier.push_back(p);
    }
  }
  for (const auto& [tid, turn] : s.turns) {
    if (!can_finish.count(tid)) {
      add(Severity::kError, "cannot-reach-terminal", tid,
          "no path from this turn ends the interview");
    }
  }

  report.ok = std::none_of(report.findings.begin(), report.findings.end(),
                           [](const Finding& f) { return f.severity == Severity::kError; });
  return report;
}

std::map<MistakeId, std::int64_t> tally_mistakes(const Scenario& s) {
  std::map<MistakeId, std::int64_t> tally;
  for (const auto& [tid, turn] : s.turns) {
    for (const auto& o : turn.options) {
      for (MistakeId m : o.mistake_ids) ++tally[m];
    }
  }
  return tally;
}

PathBounds path_bounds(const Scenario& s) {
  constexpr std::uint64_t kMaxCount = std::numeric_limits<std::uint64_t>::max();
  const Turn* start = s.find_turn(s.start_turn);
  if (!start) {
    throw Error(ErrorCode::kInvalidScenario, "start_turn '" + s.start_turn + "' is not defined");
  }

  struct Node {
    bool active = false;
    bool done = false;
    PathBounds bounds;
  };
  std::unordered_map<std::string, Node> memo;

  std::function<const PathBounds&(const Turn&)> visit = [&](const Turn& turn) -> const PathBounds& {
    Node& node = memo[turn.id];
    if (node.done) return node.bounds;
    if (node.active) throw Error(ErrorCode::kCycle, "cycle through turn '" + turn.id + "'");
    node.active = true;

    PathBounds b{std::numeric_limits<std::int64_t>::max(), 0, 0};
    for (const auto& o : turn.options) {
      std::int64_t sub_min = 0;
      std::int64_t sub_max = 0;
      std::uint64_t sub_count = 1;
      if (o.next_turn) {
        const Turn* child = s.find_turn(*o.next_turn);
        if (!child) {
          throw Error(ErrorCode::kInvalidScenario,
                      "dangling reference to turn '" + *o.next_turn + "'");
        }
        const PathBounds& cb = visit(*child);
        sub_min = cb.min_turns;
        sub_max = cb.max_turns;
        sub_count = cb.path_count;
      }
      b.min_turns = std::min(b.min_turns, 1 + sub_min);
      b.max_turns = std::max(b.max_turns, 1 + sub_max);
      b.path_count = (kMaxCount - b.path_count < sub_count) ? kMaxCount : b.path_count + sub_count;
    }
    if (turn.options.empty()) {
      throw Error(ErrorCode::kInvalidScenario, "turn '" + turn.id + "' has no options");
    }

    // unordered_map references survive rehashing caused by the recursion.
    node.active = false;
    node.done = true;
    node.bounds = b;
    return node.bounds;
  };
  return visit(*start);
}

}  // namespace elicit
