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

// elicit command-line tool. Talks to the library exclusively through the C
// interface in elicit/elicit.h.

#include <csignal>
#include <cstdlib>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include "CLI11.hpp"
#include "elicit/elicit.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Owning wrappers for C handles and strings.
struct StringDeleter {
  void operator()(char* s) const { elicit_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using ScenarioHandle =
    std::unique_ptr<elicit_scenario, HandleDeleter<elicit_scenario, elicit_scenario_free>>;
using CatalogHandle =
    std::unique_ptr<elicit_catalog, HandleDeleter<elicit_catalog, elicit_catalog_free>>;
using SessionHandle =
    std::unique_ptr<elicit_session, HandleDeleter<elicit_session, elicit_session_free>>;
using ServerHandle = std::unique_ptr<elicit_server, HandleDeleter<elicit_server, elicit_server_free>>;

class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(elicit_status status) {
  switch (status) {
    case ELICIT_E_IO:
    case ELICIT_E_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitDomain;
  }
}

void check(elicit_status status, const std::string& context) {
  if (status != ELICIT_OK) {
    throw CommandError(exit_code_for(status), context + ": " + elicit_last_error());
  }
}

json take_json(char* raw) {
  CString owned(raw);
  return json::parse(owned.get());
}

void require_file(const std::string& path) {
  if (path.empty()) throw CommandError(kExitUsage, "no input file given");
  if (!fs::exists(path)) throw CommandError(kExitUsage, "no such file: " + path);
}

ScenarioHandle open_scenario(const std::string& path) {
  require_file(path);
  elicit_scenario* raw = nullptr;
  check(elicit_scenario_load(path.c_str(), &raw), path);
  return ScenarioHandle(raw);
}

CatalogHandle open_catalog(const std::string& path) {
  elicit_catalog* raw = nullptr;
  if (path.empty()) {
    check(elicit_catalog_builtin(&raw), "catalog");
  } else {
    require_file(path);
    check(elicit_catalog_load(path.c_str(), &raw), path);
  }
  return CatalogHandle(raw);
}

std::vector<std::string> collect_logs(const std::vector<std::string>& inputs) {
  std::vector<std::string> files;
  for (const auto& in : inputs) {
    if (!fs::exists(in)) throw CommandError(kExitUsage, "no such file or directory: " + in);
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& e : fs::recursive_directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ".jsonl") found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(in);
    }
  }
  return files;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

std::int64_t wall_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string fixed(double v, int digits = 3) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& scenario_path, const std::string& catalog_path, bool as_json) {
  auto catalog = open_catalog(catalog_path);
  auto scenario = open_scenario(scenario_path);
  int ok = 0;
  char* raw = nullptr;
  check(elicit_scenario_validate_json(scenario.get(), catalog.get(), &ok, &raw), "validate");
  const json report = take_json(raw);
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& f : report["findings"]) {
      std::cout << f["severity"].get<std::string>() << " " << f["code"].get<std::string>() << " at "
                << f["location"].get<std::string>() << ": " << f["message"].get<std::string>()
                << "\n";
    }
    std::cout << (ok ? "OK" : "INVALID") << " " << scenario_path << "\n";
  }
  return ok ? kExitOk : kExitDomain;
}

int cmd_tally(const std::string& scenario_path, const std::string& catalog_path, bool as_json) {
  auto catalog = open_catalog(catalog_path);
  auto scenario = open_scenario(scenario_path);
  char* raw = nullptr;
  check(elicit_scenario_tally_json(scenario.get(), catalog.get(), &raw), "tally");
  const json tally = take_json(raw);
  if (as_json) {
    std::cout << tally.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << std::left << std::setw(4) << "ID" << std::setw(36) << "Mistake Type" << std::setw(28)
            << "Associated Mistake Class"
            << "Occurrence\n";
  for (const auto& r : tally["types"]) {
    std::cout << std::left << std::setw(4) << r["id"].get<int>() << std::setw(36)
              << r["type"].get<std::string>() << std::setw(28) << r["class"].get<std::string>()
              << r["occurrences"].get<std::int64_t>() << "\n";
  }
  std::cout << "\n" << std::left << std::setw(40) << "Mistake Class" << "Occurrence\n";
  for (const auto& c : tally["classes"]) {
    std::cout << std::left << std::setw(40) << c["class"].get<std::string>()
              << c["occurrences"].get<std::int64_t>() << "\n";
  }
  for (const auto& u : tally["unknown"]) {
    std::cout << "unknown mistake id " << u["id"].get<int>() << ": "
              << u["occurrences"].get<std::int64_t>() << "\n";
  }
  std::cout << "total=" << tally["total"].get<std::int64_t>() << "\n";
  return kExitOk;
}

int cmd_paths(const std::string& scenario_path, bool as_json) {
  auto scenario = open_scenario(scenario_path);
  elicit_path_bounds b{};
  check(elicit_scenario_path_bounds(scenario.get(), &b), "paths");
  if (as_json) {
    std::cout << json{{"min_turns", b.min_turns}, {"max_turns", b.max_turns},
                      {"path_count", b.path_count}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "min=" << b.min_turns << " max=" << b.max_turns << " paths=" << b.path_count
              << "\n";
  }
  return kExitOk;
}

// Terminal rendering of one interview session.
class PlayLoop {
 public:
  PlayLoop(elicit_session* session, std::istream& in, std::ostream& out)
      : session_(session), in_(in), out_(out) {}

  int run() {
    while (true) {
      switch (elicit_session_phase(session_)) {
        case ELICIT_PHASE_INTERVIEW:
          if (!interview_turn()) return kExitDomain;
          break;
        case ELICIT_PHASE_FEEDBACK:
          if (!feedback_item()) return kExitDomain;
          break;
        case ELICIT_PHASE_SUMMARY:
          show_summary();
          {
            char* text = nullptr;
            check(elicit_session_end(session_, now(), &text), "end");
            out_ << "\nStakeholder: " << CString(text).get() << "\n";
          }
          return kExitOk;
        default:
          return kExitOk;
      }
    }
  }

 private:
  std::int64_t now() {
    const std::int64_t t = wall_ms();
    last_ = std::max(last_, t);
    return last_;
  }

  json state() {
    char* raw = nullptr;
    check(elicit_session_state_json(session_, &raw), "state");
    return take_json(raw);
  }

  // Reads a line and resolves it to an option id: a number picks by
  // position, anything else goes through utterance matching.
  std::optional<std::string> read_choice(const json& options) {
    while (true) {
      out_ << "> " << std::flush;
      std::string line;
      if (!std::getline(in_, line)) {
        out_ << "\ninput closed before the session finished\n";
        return std::nullopt;
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      char* end = nullptr;
      const long n = std::strtol(line.c_str(), &end, 10);
      if (end && *end == '\0' && n >= 1 && n <= static_cast<long>(options.size())) {
        return options[n - 1]["id"].get<std::string>();
      }
      char* matched = nullptr;
      const elicit_status st =
          elicit_session_match_utterance(session_, line.c_str(), 0.0, nullptr, nullptr, &matched);
      if (st == ELICIT_OK) return std::string(CString(matched).get());
      out_ << "Sorry, I did not catch that. Type an option number or say the question again.\n";
    }
  }

  bool interview_turn() {
    const json s = state();
    const json& p = s["prompt"];
    out_ << "\nStakeholder: " << p["stakeholder_text"].get<std::string>() << "\n";
    const json& options = p["options"];
    for (std::size_t i = 0; i < options.size(); ++i) {
      out_ << "  " << (i + 1) << ") " << options[i]["text"].get<std::string>() << "\n";
    }
    const std::int64_t shown = now();
    auto choice = read_choice(options);
    if (!choice) return false;
    // Clock resolution is 1 ms; piped input can answer within the same tick.
    const std::int64_t chosen = std::max(now(), shown + 1);
    last_ = chosen;
    char* raw = nullptr;
    check(elicit_session_submit_choice(session_, choice->c_str(), chosen, chosen - shown, &raw),
          "choice");
    const json r = take_json(raw);
    if (r["end"].get<bool>() && r["phase"] == "FEEDBACK") {
      out_ << "\nThe interview is over. Let's look at the responses that could be improved.\n";
    }
    return true;
  }

  bool feedback_item() {
    const json s = state();
    const json& f = s["feedback"];
    const json& p = f["prompt"];
    const std::string wrong = f["incorrect_chosen_option_id"].get<std::string>();
    out_ << "\n--- Feedback " << (f["index"].get<int>() + 1) << " of " << f["total"].get<int>()
         << " ---\n";
    out_ << "Stakeholder: " << p["stakeholder_text"].get<std::string>() << "\n";
    const json& options = p["options"];
    for (std::size_t i = 0; i < options.size(); ++i) {
      const bool was_chosen = options[i]["id"] == wrong;
      out_ << "  " << (i + 1) << ") " << options[i]["text"].get<std::string>()
           << (was_chosen ? "   <-- your answer" : "") << "\n";
    }
    for (const auto& m : f["mistakes"]) {
      out_ << "Mistake: " << m["name"].get<std::string>() << " (" << m["class"].get<std::string>()
           << ")\n";
    }
    for (const auto& t : f["feedback_texts"]) out_ << "Feedback: " << t.get<std::string>() << "\n";
    out_ << "Which option would you choose now?\n";
    auto choice = read_choice(options);
    if (!choice) return false;
    char* raw = nullptr;
    check(elicit_session_submit_second_attempt(session_, choice->c_str(), now(), &raw), "attempt");
    const json r = take_json(raw);
    if (r["verdict"] == "CORRECTED") {
      out_ << "Correct! Well done.\n";
    } else {
      const std::string correct = r["correct_option_id"].get<std::string>();
      for (const auto& o : options) {
        if (o["id"] == correct) {
          out_ << "Not quite. The better question was: " << o["text"].get<std::string>() << "\n";
        }
      }
    }
    return true;
  }

  void show_summary() {
    char* raw = nullptr;
    check(elicit_session_summary_json(session_, &raw), "summary");
    const json s = take_json(raw);
    out_ << "\n=== Performance summary ===\n";
    out_ << "Turns: " << s["total_turns"] << "  Mistaken turns: " << s["mistaken_turns"]
         << "  Fixed on the second try: " << s["corrected_turns"] << "\n";
    out_ << std::left << std::setw(28) << "Mistake class" << std::setw(10) << "Mistakes"
         << "Corrected\n";
    for (const auto& c : s["per_class"]) {
      out_ << std::left << std::setw(28) << c["class"].get<std::string>() << std::setw(10)
           << c["occurred"].get<std::int64_t>() << c["corrected"].get<std::int64_t>() << "\n";
    }
  }

  elicit_session* session_;
  std::istream& in_;
  std::ostream& out_;
  std::int64_t last_ = 0;
};

int cmd_play(const std::string& scenario_path, const std::string& catalog_path,
             const std::string& mode, std::uint64_t seed, const std::string& data_dir) {
  auto catalog = open_catalog(catalog_path);
  auto scenario = open_scenario(scenario_path);
  const elicit_mode m = mode == "text" ? ELICIT_MODE_TEXT : ELICIT_MODE_SPOKEN;

  const std::int64_t started = wall_ms();
  const std::string session_id = "play-" + std::to_string(started);
  elicit_session* raw = nullptr;
  char* greeting = nullptr;
  check(elicit_session_start(scenario.get(), catalog.get(), m, seed, started, session_id.c_str(),
                             &raw, &greeting),
        "start");
  SessionHandle session(raw);
  std::cout << "Stakeholder: " << CString(greeting).get() << "\n";

  const int rc = PlayLoop(session.get(), std::cin, std::cout).run();

  if (!data_dir.empty()) {
    const fs::path dir = fs::path(data_dir) / "sessions";
    fs::create_directories(dir);
    char* log = nullptr;
    check(elicit_session_log_jsonl(session.get(), &log), "log");
    const fs::path file = dir / (session_id + ".jsonl");
    std::ofstream(file, std::ios::binary) << CString(log).get();
    std::cout << "session log written to " << file.string() << "\n";
  }
  return rc;
}

int cmd_serve(const std::vector<std::string>& scenario_paths, const std::string& catalog_path,
              const std::string& data_dir, const std::string& host, int port, double threshold) {
  for (const auto& p : scenario_paths) require_file(p);
  if (!catalog_path.empty()) require_file(catalog_path);

  // Route SIGINT/SIGTERM to a watcher thread so shutdown is orderly.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const auto c_paths = c_strings(scenario_paths);
  elicit_server_config config{};
  config.host = host.c_str();
  config.port = port;
  config.data_dir = data_dir.c_str();
  config.match_threshold = threshold;
  config.catalog_path = catalog_path.empty() ? nullptr : catalog_path.c_str();
  config.scenario_paths = c_paths.data();
  config.scenario_count = c_paths.size();

  elicit_server* raw = nullptr;
  check(elicit_server_create(&config, &raw), "serve");
  ServerHandle server(raw);

  char* notes_raw = nullptr;
  check(elicit_server_recovery_json(server.get(), &notes_raw), "recovery");
  for (const auto& n : take_json(notes_raw)) {
    std::cerr << "session " << n["session_id"].get<std::string>() << ": "
              << n["message"].get<std::string>() << "\n";
  }

  int bound = 0;
  check(elicit_server_bind(server.get(), &bound), "bind");
  std::cout << "listening on http://" << host << ":" << bound << " (data: " << data_dir << ")"
            << std::endl;

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    elicit_server_stop(server.get());
  });
  const elicit_status st = elicit_server_run(server.get());
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  check(st, "serve");
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, const std::string& catalog_path,
                bool as_json) {
  const auto files = collect_logs(inputs);
  if (files.empty()) throw CommandError(kExitUsage, "no session logs found");
  auto catalog = open_catalog(catalog_path);
  const auto c_files = c_strings(files);
  char* raw = nullptr;
  check(elicit_analyze_logs_json(c_files.data(), c_files.size(), catalog.get(), &raw), "analyze");
  const json report = take_json(raw);
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << std::left << std::setw(22) << "session" << std::setw(8) << "mode" << std::setw(7)
            << "turns" << std::setw(10) << "mistaken" << std::setw(11) << "corrected"
            << std::setw(10) << "PS" << std::setw(12) << "PS(mist.)" << "PS(no mist.)\n";
  auto opt = [](const json& v) { return v.is_null() ? std::string("-") : fixed(v.get<double>()); };
  for (const auto& s : report["sessions"]) {
    std::cout << std::left << std::setw(22) << s["session_id"].get<std::string>() << std::setw(8)
              << s["mode"].get<std::string>() << std::setw(7) << s["turns"].get<int>()
              << std::setw(10) << s["mistaken_turns"].get<int>() << std::setw(11)
              << s["corrected_turns"].get<int>() << std::setw(10)
              << fixed(s["ps_all"].get<double>()) << std::setw(12) << opt(s["ps_mistake"])
              << opt(s["ps_no_mistake"]) << (s["closed"].get<bool>() ? "" : "  (unclosed)")
              << "\n";
  }
  std::cout << "\n" << std::left << std::setw(28) << "Mistake class" << std::setw(11)
            << "corrected" << "uncorrected\n";
  for (const auto& c : report["corrections"]) {
    std::cout << std::left << std::setw(28) << c["class"].get<std::string>() << std::setw(11)
              << c["corrected"].get<std::int64_t>() << c["uncorrected"].get<std::int64_t>() << "\n";
  }
  return kExitOk;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, const std::string& metric,
                const std::string& alt, bool as_json) {
  const auto a = collect_logs({dir_a});
  const auto b = collect_logs({dir_b});
  const auto ca = c_strings(a);
  const auto cb = c_strings(b);
  const elicit_alternative alternative = alt == "less"      ? ELICIT_ALT_LESS
                                         : alt == "greater" ? ELICIT_ALT_GREATER
                                                            : ELICIT_ALT_TWO_SIDED;
  char* raw = nullptr;
  check(elicit_compare_logs_json(ca.data(), ca.size(), cb.data(), cb.size(), metric.c_str(),
                                 alternative, &raw),
        "compare");
  const json report = take_json(raw);
  if (as_json) {
    std::cout << report.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "metric: " << report["metric"].get<std::string>() << "\n";
  for (const char* g : {"a", "b"}) {
    const json& grp = report[g];
    std::cout << "group " << g << " (" << grp["label"].get<std::string>() << "): n=" << grp["n"]
              << " median=" << fixed(grp["median"].get<double>())
              << " IQR=" << fixed(grp["iqr"].get<double>()) << "\n";
  }
  const json& t = report["test"];
  std::cout << "Mann-Whitney U=" << t["u_a"].get<double>() << " (U_b=" << t["u_b"].get<double>()
            << ") p=" << fixed(t["p_value"].get<double>(), 4) << " alternative="
            << t["alternative"].get<std::string>() << " method=" << t["method"].get<std::string>()
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elicit: requirements-elicitation interview training"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(elicit_version()));

  std::string scenario_path;
  std::string catalog_path;
  bool as_json = false;

  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("scenario,--scenario", scenario_path, "Scenario file")->required();
    sub->add_option("--catalog", catalog_path, "Mistake catalog file (default: builtin)");
    sub->add_flag("--json", as_json, "Machine-readable output");
  };

  auto* validate = app.add_subcommand("validate", "Check a scenario against every structural rule");
  add_scenario(validate);
  auto* tally = app.add_subcommand("tally", "Count mistake occurrences per type and class");
  add_scenario(tally);
  auto* paths = app.add_subcommand("paths", "Minimum/maximum turns over all interview paths");
  add_scenario(paths);

  std::string mode = "spoken";
  std::uint64_t seed = 0;
  std::string data_dir;
  auto* play = app.add_subcommand("play", "Run an interview session in the terminal");
  add_scenario(play);
  play->add_option("--mode", mode, "spoken|text")->check(CLI::IsMember({"spoken", "text"}));
  play->add_option("--seed", seed, "Option order seed (0 keeps authored order)");
  play->add_option("--data-dir", data_dir, "Write the session log under DIR/sessions");

  std::vector<std::string> serve_scenarios;
  std::string listen_host;
  int port = -1;
  double threshold = -1.0;
  auto* serve = app.add_subcommand("serve", "Start the HTTP session service");
  serve->add_option("--scenario", serve_scenarios, "Scenario file to preload (repeatable)");
  serve->add_option("--catalog", catalog_path, "Mistake catalog file (default: builtin)");
  serve->add_option("--data-dir", data_dir, "Data directory [ELICIT_DATA_DIR]");
  serve->add_option("--listen", listen_host, "Listen address [ELICIT_LISTEN]");
  serve->add_option("--port", port, "Port, 0 for any free port [ELICIT_PORT]");
  serve->add_option("--threshold", threshold, "Utterance match threshold [ELICIT_MATCH_THRESHOLD]");

  std::vector<std::string> log_inputs;
  auto* analyze = app.add_subcommand("analyze", "Processing speed and summaries per session log");
  analyze->add_option("logs", log_inputs, "Log files or directories")->required();
  analyze->add_option("--catalog", catalog_path, "Mistake catalog file (default: builtin)");
  analyze->add_flag("--json", as_json, "Machine-readable output");

  std::string dir_a;
  std::string dir_b;
  std::string metric = "ps";
  std::string alt = "two-sided";
  auto* compare = app.add_subcommand("compare", "Median/IQR per group and Mann-Whitney U test");
  compare->add_option("--a", dir_a, "Log directory of group A")->required();
  compare->add_option("--b", dir_b, "Log directory of group B")->required();
  compare->add_option("--metric", metric, "ps|ps_mistake|ps_no_mistake|mistaken_turns|corrected_turns")
      ->check(CLI::IsMember({"ps", "ps_mistake", "ps_no_mistake", "mistaken_turns", "corrected_turns"}));
  compare->add_option("--alt", alt, "less|greater|two-sided")
      ->check(CLI::IsMember({"less", "greater", "two-sided"}));
  compare->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(scenario_path, catalog_path, as_json);
    if (*tally) return cmd_tally(scenario_path, catalog_path, as_json);
    if (*paths) return cmd_paths(scenario_path, as_json);
    if (*play) return cmd_play(scenario_path, catalog_path, mode, seed, data_dir);
    if (*serve) {
      // Flags win over environment variables.
      if (data_dir.empty()) data_dir = env_or("ELICIT_DATA_DIR", "elicit-data");
      if (listen_host.empty()) listen_host = env_or("ELICIT_LISTEN", "127.0.0.1");
      if (port < 0) port = std::stoi(env_or("ELICIT_PORT", "8080"));
      if (threshold < 0.0) threshold = std::stod(env_or("ELICIT_MATCH_THRESHOLD", "0.8"));
      return cmd_serve(serve_scenarios, catalog_path, data_dir, listen_host, port, threshold);
    }
    if (*analyze) return cmd_analyze(log_inputs, catalog_path, as_json);
    if (*compare) return cmd_compare(dir_a, dir_b, metric, alt, as_json);
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
