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


#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

namespace elicit::testing {

std::string data_path(const std::string& name) { return std::string(ELICIT_TEST_DATA_DIR) + "/" + name; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

std::string toy_document() {
  return R"({
  "id": "toy",
  "title": "Toy scenario",
  "intro": "A tiny three-turn interview about a bakery.",
  "start_turn": "t1",
  "turns": {
    "t1": {"stakeholder_text": "Hi, I own the corner bakery.",
           "options": [
             {"id": "a", "text": "Nice to meet you. What does a normal day look like?", "mistakes": [], "next": "t2"},
             {"id": "b", "text": "So, things?", "mistakes": [8], "next": "t2"},
             {"id": "c", "text": "What app should we build for you?", "mistakes": [7], "next": "t2"}]},
    "t2": {"stakeholder_text": "We bake at four and open at seven.",
           "options": [
             {"id": "a", "text": "You must want an ordering website then.", "mistakes": [11, 12], "next": "t3"},
             {"id": "b", "text": "Where do things get difficult during that day?", "mistakes": [], "next": "t3"},
             {"id": "c", "text": "Tell me about baking and opening and staff and suppliers and prices and the till.", "mistakes": [5], "next": "t3"}]},
    "t3": {"stakeholder_text": "Mostly keeping track of special orders.",
           "options": [
             {"id": "a", "text": "Thank you, I will summarise this and follow up next week.", "mistakes": [], "next": null},
             {"id": "b", "text": "Okay bye.", "mistakes": [10], "next": null},
             {"id": "c", "text": "Do you like baking?", "mistakes": [6], "next": null}]}
  }
})";
}

Scenario toy_scenario() { return parse_scenario(toy_document()); }

std::shared_ptr<const FeedbackCatalog> builtin_catalog() {
  static const auto catalog = std::make_shared<const FeedbackCatalog>(FeedbackCatalog::builtin());
  return catalog;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("elicit-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

CommandResult run_command(const std::string& command, const std::string& input) {
  const TempDir scratch;
  const auto in_path = scratch.path() / "stdin";
  const auto err_path = scratch.path() / "stderr";
  write_file(in_path, input);
  const std::string full = command + " < '" + in_path.string() + "' 2> '" + err_path.string() + "'";
  CommandResult result;
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = read_file(err_path);
  return result;
}

}  // namespace elicit::testing
