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

#include "elicit/report.hpp"

#include "elicit/error.hpp"

namespace elicit::report {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

SessionMetrics session_metrics(const SessionLog& log, const SimilarityProvider& sim) {
  const auto timings = analytics::extract_timings(log);
  SessionMetrics m;
  m.session_id = log.session_id;
  m.scenario_id = log.header.scenario_id;
  m.mode = log.header.mode;
  m.turns = static_cast<std::int64_t>(timings.size());
  for (const auto& t : timings) m.mistaken_turns += t.is_mistake ? 1 : 0;
  m.ps_all = analytics::session_processing_speed(timings, analytics::TurnSubset::kAll, sim);
  if (m.mistaken_turns > 0) {
    m.ps_mistake = analytics::session_processing_speed(timings, analytics::TurnSubset::kMistake, sim);
  }
  if (m.mistaken_turns < m.turns) {
    m.ps_no_mistake =
        analytics::session_processing_speed(timings, analytics::TurnSubset::kNoMistake, sim);
  }
  for (const auto& ev : log.events) {
    if (ev.type == EventType::kAttemptEvaluated &&
        ev.payload.at("verdict").get<std::string>() == to_string(Verdict::kCorrected)) {
      ++m.corrected_turns;
    } else if (ev.type == EventType::kSummaryEmitted) {
      m.summary = summary_from_json(ev.payload);
    }
  }
  m.closed = log.closed();
  return m;
}

AnalyzeReport analyze(std::span<const SessionLog> logs, const FeedbackCatalog& catalog,
                      const SimilarityProvider& sim) {
  AnalyzeReport r;
  for (const auto& log : logs) r.sessions.push_back(session_metrics(log, sim));
  r.corrections = analytics::correction_stats(logs, catalog);
  return r;
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kPs: return "ps";
    case Metric::kPsMistake: return "ps_mistake";
    case Metric::kPsNoMistake: return "ps_no_mistake";
    case Metric::kMistakenTurns: return "mistaken_turns";
    case Metric::kCorrectedTurns: return "corrected_turns";
  }
  return "";
}

std::optional<Metric> parse_metric(std::string_view text) {
  for (Metric m : {Metric::kPs, Metric::kPsMistake, Metric::kPsNoMistake, Metric::kMistakenTurns,
                   Metric::kCorrectedTurns}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::optional<double> metric_value(const SessionMetrics& m, Metric metric) {
  switch (metric) {
    case Metric::kPs: return m.ps_all;
    case Metric::kPsMistake: return m.ps_mistake;
    case Metric::kPsNoMistake: return m.ps_no_mistake;
    case Metric::kMistakenTurns: return static_cast<double>(m.mistaken_turns);
    case Metric::kCorrectedTurns: return static_cast<double>(m.corrected_turns);
  }
  return std::nullopt;
}

CompareReport compare(const std::vector<double>& a, const std::vector<double>& b, Metric metric,
                      stats::Alternative alternative, std::string label_a, std::string label_b) {
  CompareReport r;
  r.metric = metric;
  r.a = {std::move(label_a), a, stats::median_iqr(a)};
  r.b = {std::move(label_b), b, stats::median_iqr(b)};
  r.test = stats::mann_whitney_u(a, b, alternative);
  return r;
}

CompareReport compare_logs(std::span<const SessionLog> a, std::span<const SessionLog> b,
                           Metric metric, stats::Alternative alternative,
                           const SimilarityProvider& sim) {
  auto values = [&](std::span<const SessionLog> logs) {
    std::vector<double> out;
    for (const auto& log : logs) {
      if (auto v = metric_value(session_metrics(log, sim), metric)) out.push_back(*v);
    }
    return out;
  };
  return compare(values(a), values(b), metric, alternative);
}

namespace {

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

ojson group_json(const GroupStats& g) {
  return {{"label", g.label},
          {"n", g.values.size()},
          {"values", g.values},
          {"median", g.descriptive.median},
          {"q1", g.descriptive.q1},
          {"q3", g.descriptive.q3},
          {"iqr", g.descriptive.iqr}};
}

GroupStats group_from_json(const json& j) {
  GroupStats g;
  g.label = j.at("label").get<std::string>();
  g.values = j.at("values").get<std::vector<double>>();
  g.descriptive = {j.at("median").get<double>(), j.at("q1").get<double>(),
                   j.at("q3").get<double>(), j.at("iqr").get<double>()};
  return g;
}

}  // namespace

ojson to_json(const AnalyzeReport& r) {
  ojson sessions = ojson::array();
  for (const auto& m : r.sessions) {
    sessions.push_back({{"session_id", m.session_id},
                        {"scenario_id", m.scenario_id},
                        {"mode", std::string(to_string(m.mode))},
                        {"turns", m.turns},
                        {"mistaken_turns", m.mistaken_turns},
                        {"corrected_turns", m.corrected_turns},
                        {"ps_all", m.ps_all},
                        {"ps_mistake", optional_number(m.ps_mistake)},
                        {"ps_no_mistake", optional_number(m.ps_no_mistake)},
                        {"closed", m.closed},
                        {"summary", m.summary ? to_json(*m.summary) : ojson()}});
  }
  ojson corrections = ojson::array();
  for (const auto& [cls, t] : r.corrections) {
    corrections.push_back({{"class", std::string(to_string(cls))},
                           {"corrected", t.corrected},
                           {"uncorrected", t.uncorrected}});
  }
  return {{"kind", "analyze"}, {"sessions", sessions}, {"corrections", corrections}};
}

AnalyzeReport analyze_report_from_json(const json& j) {
  if (j.value("kind", "") != "analyze") throw Error(ErrorCode::kParse, "not an analyze report");
  AnalyzeReport r;
  for (const auto& s : j.at("sessions")) {
    SessionMetrics m;
    m.session_id = s.at("session_id").get<std::string>();
    m.scenario_id = s.at("scenario_id").get<std::string>();
    auto mode = parse_session_mode(s.at("mode").get<std::string>());
    if (!mode) throw Error(ErrorCode::kParse, "bad mode in report");
    m.mode = *mode;
    m.turns = s.at("turns").get<std::int64_t>();
    m.mistaken_turns = s.at("mistaken_turns").get<std::int64_t>();
    m.corrected_turns = s.at("corrected_turns").get<std::int64_t>();
    m.ps_all = s.at("ps_all").get<double>();
    m.ps_mistake = read_optional(s, "ps_mistake");
    m.ps_no_mistake = read_optional(s, "ps_no_mistake");
    m.closed = s.at("closed").get<bool>();
    if (!s.at("summary").is_null()) m.summary = summary_from_json(s.at("summary"));
    r.sessions.push_back(std::move(m));
  }
  for (const auto& c : j.at("corrections")) {
    auto cls = parse_mistake_class(c.at("class").get<std::string>());
    if (!cls) throw Error(ErrorCode::kParse, "bad class in report");
    r.corrections[*cls] = {c.at("corrected").get<std::int64_t>(),
                           c.at("uncorrected").get<std::int64_t>()};
  }
  return r;
}

ojson to_json(const CompareReport& r) {
  return {{"kind", "compare"},
          {"metric", std::string(to_string(r.metric))},
          {"a", group_json(r.a)},
          {"b", group_json(r.b)},
          {"test",
           {{"name", "mann-whitney-u"},
            {"alternative", std::string(stats::to_string(r.test.alternative))},
            {"method", std::string(stats::to_string(r.test.method))},
            {"u_a", r.test.statistic},
            {"u_b", r.test.u_b},
            {"p_value", r.test.p_value}}}};
}

CompareReport compare_report_from_json(const json& j) {
  if (j.value("kind", "") != "compare") throw Error(ErrorCode::kParse, "not a compare report");
  CompareReport r;
  auto metric = parse_metric(j.at("metric").get<std::string>());
  if (!metric) throw Error(ErrorCode::kParse, "bad metric in report");
  r.metric = *metric;
  r.a = group_from_json(j.at("a"));
  r.b = group_from_json(j.at("b"));
  const auto& t = j.at("test");
  auto alt = stats::parse_alternative(t.at("alternative").get<std::string>());
  if (!alt) throw Error(ErrorCode::kParse, "bad alternative in report");
  r.test.alternative = *alt;
  const std::string method = t.at("method").get<std::string>();
  r.test.method = method == "exact"    ? stats::PValueMethod::kExact
                  : method == "normal" ? stats::PValueMethod::kNormal
                                       : stats::PValueMethod::kAuto;
  r.test.statistic = t.at("u_a").get<double>();
  r.test.u_b = t.at("u_b").get<double>();
  r.test.p_value = t.at("p_value").get<double>();
  return r;
}

}  // namespace elicit::report
