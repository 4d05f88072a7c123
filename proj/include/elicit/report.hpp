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

#include "elicit/analytics.hpp"
#include "elicit/stats.hpp"
#include "json.hpp"

namespace elicit::report {

struct SessionMetrics {
  std::string session_id;
  std::string scenario_id;
  SessionMode mode = SessionMode::kSpoken;
  std::int64_t turns = 0;
  std::int64_t mistaken_turns = 0;
  std::int64_t corrected_turns = 0;
  double ps_all = 0.0;
  std::optional<double> ps_mistake;
  std::optional<double> ps_no_mistake;
  bool closed = false;
  std::optional<PerformanceSummary> summary;

  friend bool operator==(const SessionMetrics&, const SessionMetrics&) = default;
};

struct AnalyzeReport {
  std::vector<SessionMetrics> sessions;
  std::map<MistakeClass, analytics::CorrectionTally> corrections;

  friend bool operator==(const AnalyzeReport&, const AnalyzeReport&) = default;
};

SessionMetrics session_metrics(const SessionLog& log,
                               const SimilarityProvider& sim = default_similarity());

AnalyzeReport analyze(std::span<const SessionLog> logs, const FeedbackCatalog& catalog,
                      const SimilarityProvider& sim = default_similarity());

enum class Metric { kPs, kPsMistake, kPsNoMistake, kMistakenTurns, kCorrectedTurns };
std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view text);

// Metric value for one session; nullopt when undefined (e.g. PS over mistaken
// turns in a mistake-free session).
std::optional<double> metric_value(const SessionMetrics& m, Metric metric);

struct GroupStats {
  std::string label;
  std::vector<double> values;
  stats::MedianIqr descriptive;

  friend bool operator==(const GroupStats& x, const GroupStats& y) {
    return x.label == y.label && x.values == y.values &&
           x.descriptive.median == y.descriptive.median && x.descriptive.q1 == y.descriptive.q1 &&
           x.descriptive.q3 == y.descriptive.q3 && x.descriptive.iqr == y.descriptive.iqr;
  }
};

struct CompareReport {
  Metric metric = Metric::kPs;
  GroupStats a;
  GroupStats b;
  stats::StatResult test;

  friend bool operator==(const CompareReport& x, const CompareReport& y) {
    return x.metric == y.metric && x.a == y.a && x.b == y.b &&
           x.test.statistic == y.test.statistic && x.test.u_b == y.test.u_b &&
           x.test.p_value == y.test.p_value && x.test.alternative == y.test.alternative &&
           x.test.method == y.test.method;
  }
};

CompareReport compare(const std::vector<double>& a, const std::vector<double>& b, Metric metric,
                      stats::Alternative alternative, std::string label_a = "a",
                      std::string label_b = "b");

// Sessions whose metric is undefined are left out of their group.
CompareReport compare_logs(std::span<const SessionLog> a, std::span<const SessionLog> b,
                           Metric metric, stats::Alternative alternative,
                           const SimilarityProvider& sim = default_similarity());

nlohmann::ordered_json to_json(const AnalyzeReport& r);
nlohmann::ordered_json to_json(const CompareReport& r);
AnalyzeReport analyze_report_from_json(const nlohmann::json& j);
CompareReport compare_report_from_json(const nlohmann::json& j);

}  // namespace elicit::report
