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


#include <memory>
#include <thread>

#include <gtest/gtest.h>

#include "elicit/elicit.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "oracles.hpp"

namespace {

using nlohmann::json;

struct StringFree {
  void operator()(char* s) const { elicit_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringFree>;

struct ScenarioFree {
  void operator()(elicit_scenario* s) const { elicit_scenario_free(s); }
};
struct CatalogFree {
  void operator()(elicit_catalog* c) const { elicit_catalog_free(c); }
};
struct SessionFree {
  void operator()(elicit_session* s) const { elicit_session_free(s); }
};
struct ServerFree {
  void operator()(elicit_server* s) const { elicit_server_free(s); }
};

std::unique_ptr<elicit_scenario, ScenarioFree> parse(const std::string& text) {
  elicit_scenario* s = nullptr;
  EXPECT_EQ(elicit_scenario_parse(text.data(), text.size(), &s), ELICIT_OK) << elicit_last_error();
  return std::unique_ptr<elicit_scenario, ScenarioFree>(s);
}

json take_json(char* raw) {
  OwnedString owned(raw);
  return json::parse(owned.get());
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(elicit_version(), "0.1.0");
  EXPECT_STREQ(elicit_status_name(ELICIT_OK), "ok");
  EXPECT_STREQ(elicit_status_name(ELICIT_E_NO_MATCH), "no_match");
  EXPECT_STREQ(elicit_status_name(ELICIT_E_CONFLICT), "conflict");
  elicit_string_free(nullptr);
}

TEST(CApi, ParseErrorsSetLastError) {
  elicit_scenario* s = nullptr;
  const std::string bad = "{\"id\": ";
  EXPECT_EQ(elicit_scenario_parse(bad.data(), bad.size(), &s), ELICIT_E_PARSE);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(elicit_last_error()), "");

  json doc = json::parse(elicit::testing::toy_document());
  doc["turns"]["t1"]["options"][0].erase("mistakes");
  const std::string missing = doc.dump();
  EXPECT_EQ(elicit_scenario_parse(missing.data(), missing.size(), &s), ELICIT_E_MISSING_FIELD);
  EXPECT_NE(std::string(elicit_last_error()).find("mistakes"), std::string::npos);

  EXPECT_EQ(elicit_scenario_load("/nonexistent/x.json", &s), ELICIT_E_IO);
  EXPECT_EQ(elicit_scenario_parse(nullptr, 4, &s), ELICIT_E_INVALID_ARGUMENT);
  EXPECT_EQ(elicit_scenario_parse(bad.data(), bad.size(), nullptr), ELICIT_E_INVALID_ARGUMENT);
}

TEST(CApi, LastErrorIsPerThread) {
  elicit_scenario* s = nullptr;
  EXPECT_EQ(elicit_scenario_parse("x", 1, &s), ELICIT_E_PARSE);
  const std::string mine = elicit_last_error();
  std::string theirs = "unset";
  std::thread([&] { theirs = elicit_last_error(); }).join();
  EXPECT_EQ(theirs, "");
  EXPECT_EQ(elicit_last_error(), mine);
}

TEST(CApi, ValidateTallyAndBounds) {
  elicit_scenario* raw = nullptr;
  ASSERT_EQ(elicit_scenario_load(elicit::testing::data_path("demo.scenario.json").c_str(), &raw), ELICIT_OK);
  std::unique_ptr<elicit_scenario, ScenarioFree> demo(raw);
  elicit_catalog* cat = nullptr;
  ASSERT_EQ(elicit_catalog_load(elicit::testing::data_path("catalog.json").c_str(), &cat), ELICIT_OK);
  std::unique_ptr<elicit_catalog, CatalogFree> catalog(cat);

  int ok = 0;
  char* report = nullptr;
  ASSERT_EQ(elicit_scenario_validate_json(demo.get(), catalog.get(), &ok, &report), ELICIT_OK);
  EXPECT_EQ(ok, 1);
  take_json(report);

  elicit_path_bounds bounds{};
  ASSERT_EQ(elicit_scenario_path_bounds(demo.get(), &bounds), ELICIT_OK);
  EXPECT_EQ(bounds.min_turns, 15);
  EXPECT_EQ(bounds.max_turns, 19);

  char* tally = nullptr;
  ASSERT_EQ(elicit_scenario_tally_json(demo.get(), nullptr, &tally), ELICIT_OK);
  const json t = take_json(tally);
  const auto expected =
      elicit::testing::flat_tally(json::parse(elicit::testing::read_file(elicit::testing::data_path("demo.scenario.json"))));
  std::int64_t total = 0;
  for (const auto& [id, n] : expected) total += n;
  EXPECT_EQ(t["total"], total);

  char* info = nullptr;
  ASSERT_EQ(elicit_scenario_info_json(demo.get(), &info), ELICIT_OK);
  EXPECT_EQ(take_json(info)["id"], "library-rooms");

  json doc = json::parse(elicit::testing::toy_document());
  doc["turns"]["t2"]["options"][1]["mistakes"] = {6};
  auto broken = parse(doc.dump());
  ASSERT_EQ(elicit_scenario_validate_json(broken.get(), nullptr, &ok, &report), ELICIT_OK);
  EXPECT_EQ(ok, 0);
  take_json(report);
}

TEST(CApi, FullSession) {
  auto toy = parse(elicit::testing::toy_document());
  elicit_session* raw = nullptr;
  char* greeting = nullptr;
  ASSERT_EQ(elicit_session_start(toy.get(), nullptr, ELICIT_MODE_TEXT, 0, 1000, "c1", &raw, &greeting),
            ELICIT_OK);
  std::unique_ptr<elicit_session, SessionFree> session(raw);
  OwnedString owned_greeting(greeting);
  toy.reset();  // the session keeps its own copy
  EXPECT_EQ(elicit_session_phase(session.get()), ELICIT_PHASE_INTERVIEW);

  char* out = nullptr;
  EXPECT_EQ(elicit_session_submit_choice(session.get(), "zz", 2000, -1, &out), ELICIT_E_UNKNOWN_OPTION);
  EXPECT_EQ(elicit_session_submit_choice(session.get(), "b", 500, -1, &out), ELICIT_E_NON_MONOTONIC_TIME);
  EXPECT_EQ(elicit_session_submit_second_attempt(session.get(), "a", 2000, &out), ELICIT_E_WRONG_PHASE);

  char* matched = nullptr;
  EXPECT_EQ(elicit_session_match_utterance(session.get(), "zorp flarn", 0.8, nullptr, nullptr, &matched),
            ELICIT_E_NO_MATCH);
  ASSERT_EQ(elicit_session_match_utterance(session.get(), "so, things?", 0.8, nullptr, nullptr, &matched),
            ELICIT_OK);
  EXPECT_STREQ(OwnedString(matched).get(), "b");

  // A caller-supplied similarity resolves text the default measure cannot.
  auto keyword = [](const char*, const char* option, void* calls) -> double {
    ++*static_cast<int*>(calls);
    return std::string(option).find("things") != std::string::npos ? 1.0 : 0.0;
  };
  int calls = 0;
  ASSERT_EQ(elicit_session_match_utterance(session.get(), "gimme stuff", 0.8, keyword, &calls, &matched),
            ELICIT_OK);
  EXPECT_STREQ(OwnedString(matched).get(), "b");
  EXPECT_EQ(calls, 3);

  ASSERT_EQ(elicit_session_submit_choice(session.get(), "b", 3000, 1500, &out), ELICIT_OK);
  EXPECT_EQ(take_json(out)["option_id"], "b");
  ASSERT_EQ(elicit_session_submit_choice(session.get(), "b", 5000, -1, &out), ELICIT_OK);
  take_json(out);
  ASSERT_EQ(elicit_session_submit_choice(session.get(), "a", 8000, -1, &out), ELICIT_OK);
  EXPECT_EQ(take_json(out)["end"], true);
  EXPECT_EQ(elicit_session_phase(session.get()), ELICIT_PHASE_FEEDBACK);

  ASSERT_EQ(elicit_session_state_json(session.get(), &out), ELICIT_OK);
  EXPECT_EQ(take_json(out)["feedback"]["incorrect_chosen_option_id"], "b");
  ASSERT_EQ(elicit_session_submit_second_attempt(session.get(), "a", 9000, &out), ELICIT_OK);
  EXPECT_EQ(take_json(out)["verdict"], "CORRECTED");
  EXPECT_EQ(elicit_session_phase(session.get()), ELICIT_PHASE_SUMMARY);

  ASSERT_EQ(elicit_session_summary_json(session.get(), &out), ELICIT_OK);
  const json summary = take_json(out);
  EXPECT_EQ(summary["mistaken_turns"], 1);
  EXPECT_EQ(summary["corrected_turns"], 1);
  char* text = nullptr;
  ASSERT_EQ(elicit_session_end(session.get(), 10000, &text), ELICIT_OK);
  OwnedString owned_text(text);
  EXPECT_EQ(elicit_session_phase(session.get()), ELICIT_PHASE_ENDED);

  char* jsonl = nullptr;
  ASSERT_EQ(elicit_session_log_jsonl(session.get(), &jsonl), ELICIT_OK);
  elicit::testing::TempDir dir;
  const auto path = (dir.path() / "c1.jsonl").string();
  elicit::testing::write_file(path, OwnedString(jsonl).get());

  auto again = parse(elicit::testing::toy_document());
  ASSERT_EQ(elicit_replay_log_json(path.c_str(), again.get(), nullptr, &out), ELICIT_OK);
  const json replayed = take_json(out);
  EXPECT_EQ(replayed["regenerated_events"], 0);
  EXPECT_EQ(replayed["closed"], true);
  EXPECT_EQ(replayed["summary"], summary);

  const char* paths[] = {path.c_str()};
  ASSERT_EQ(elicit_analyze_logs_json(paths, 1, nullptr, &out), ELICIT_OK);
  const json analysis = take_json(out);
  ASSERT_EQ(analysis["sessions"].size(), 1u);
  EXPECT_EQ(analysis["sessions"][0]["turns"], 3);
  EXPECT_EQ(analysis["sessions"][0]["mistaken_turns"], 1);

  ASSERT_EQ(elicit_compare_logs_json(paths, 1, paths, 1, "nope", ELICIT_ALT_LESS, &out),
            ELICIT_E_INVALID_ARGUMENT);
}

TEST(CApi, Statistics) {
  const std::vector<double> a = {1, 2, 3, 4, 5, 6};
  const std::vector<double> b = {4, 5, 6, 7, 8, 9, 10};
  elicit_stat_result r{};
  ASSERT_EQ(elicit_mann_whitney_u(a.data(), a.size(), b.data(), b.size(), ELICIT_ALT_LESS, &r), ELICIT_OK);
  const auto oracle = elicit::testing::exact_mann_whitney(a, b);
  EXPECT_DOUBLE_EQ(r.u_a, oracle.u_a);
  EXPECT_DOUBLE_EQ(r.u_a + r.u_b, 42.0);
  EXPECT_NEAR(r.p_value, oracle.p_less, 1e-12);
  EXPECT_EQ(r.exact, 1);

  const std::vector<double> same = {3, 3, 3};
  EXPECT_EQ(elicit_mann_whitney_u(same.data(), 3, same.data(), 3, ELICIT_ALT_TWO_SIDED, &r),
            ELICIT_E_ZERO_VARIANCE);
  EXPECT_EQ(elicit_mann_whitney_u(a.data(), 0, b.data(), b.size(), ELICIT_ALT_LESS, &r), ELICIT_E_EMPTY_SAMPLE);

  double median = 0;
  double iqr = 0;
  ASSERT_EQ(elicit_median_iqr(b.data(), b.size(), &median, &iqr), ELICIT_OK);
  const auto hinges = elicit::testing::tukey_hinges(b);
  EXPECT_DOUBLE_EQ(median, hinges.median);
  EXPECT_DOUBLE_EQ(iqr, hinges.q3 - hinges.q1);
  EXPECT_EQ(elicit_median_iqr(b.data(), 0, &median, &iqr), ELICIT_E_EMPTY_SAMPLE);

  // Two perfectly consistent items give alpha of 1.
  const std::vector<double> grid = {1, 1, 2, 2, 3, 3, 4, 4};
  double alpha = 0;
  ASSERT_EQ(elicit_cronbach_alpha(grid.data(), 4, 2, &alpha), ELICIT_OK);
  EXPECT_NEAR(alpha, 1.0, 1e-12);

  EXPECT_EQ(elicit_word_count("  one two\tthree\n"), 3u);
  EXPECT_NEAR(elicit_similarity("Hello, world", "world hello!"), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(elicit_similarity("apple", "pear"), 0.0);
}

TEST(CApi, Server) {
  elicit::testing::TempDir dir;
  const std::string demo = elicit::testing::data_path("demo.scenario.json");
  const char* scenarios[] = {demo.c_str()};
  const std::string data_dir = dir.path().string();
  elicit_server_config config{"127.0.0.1", 0, data_dir.c_str(), 0.8, nullptr, scenarios, 1};
  elicit_server* raw = nullptr;
  ASSERT_EQ(elicit_server_create(&config, &raw), ELICIT_OK) << elicit_last_error();
  std::unique_ptr<elicit_server, ServerFree> server(raw);
  int port = 0;
  ASSERT_EQ(elicit_server_bind(server.get(), &port), ELICIT_OK);
  ASSERT_GT(port, 0);
  std::thread loop([&] { EXPECT_EQ(elicit_server_run(server.get()), ELICIT_OK); });

  httplib::Client client("127.0.0.1", port);
  httplib::Result res;
  for (int i = 0; i < 100 && !(res = client.Get("/scenarios")); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["scenarios"][0]["id"], "library-rooms");
  res = client.Post("/sessions", R"({"scenario_id": "library-rooms"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);

  elicit_server_stop(server.get());
  loop.join();

  char* notes = nullptr;
  ASSERT_EQ(elicit_server_recovery_json(server.get(), &notes), ELICIT_OK);
  EXPECT_TRUE(take_json(notes).empty());

  elicit_server_config bad = config;
  bad.scenario_paths = nullptr;
  bad.scenario_count = 1;
  EXPECT_EQ(elicit_server_create(&bad, &raw), ELICIT_E_INVALID_ARGUMENT);
}

}  // namespace
