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

// Small fixed scenarios and filesystem helpers shared by the test binaries.

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "elicit/scenario.hpp"
#include "elicit/taxonomy.hpp"

namespace elicit::testing {

std::string data_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

// Three linear turns "t1" -> "t2" -> "t3", every option of a turn leading to
// the same next turn.
//   t1: a {}      b {8}     c {7}
//   t2: a {11,12} b {}      c {5}
//   t3: a {}      b {10}    c {6}    (terminal)
std::string toy_document();
Scenario toy_scenario();

std::shared_ptr<const FeedbackCatalog> builtin_catalog();

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a shell command with the given standard input.
CommandResult run_command(const std::string& command, const std::string& input = "");

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace elicit::testing
