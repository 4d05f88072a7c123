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

#include "elicit/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace elicit {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::size_t word_count(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

std::vector<std::string> similarity_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) {
      flush();
    } else if (std::ispunct(u)) {
      continue;
    } else {
      current.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  flush();
  return tokens;
}

std::string normalize_utterance(std::string_view text) {
  std::string out;
  for (const auto& t : similarity_tokens(text)) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

double token_cosine_similarity(std::string_view a, std::string_view b) {
  std::map<std::string, double> fa;
  std::map<std::string, double> fb;
  for (auto& t : similarity_tokens(a)) fa[std::move(t)] += 1.0;
  for (auto& t : similarity_tokens(b)) fb[std::move(t)] += 1.0;
  if (fa.empty() || fb.empty()) return 0.0;

  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [tok, n] : fa) {
    na += n * n;
    if (auto it = fb.find(tok); it != fb.end()) dot += n * it->second;
  }
  for (const auto& [tok, n] : fb) nb += n * n;
  // Identical token multisets give exactly 1 regardless of rounding.
  if (fa == fb) return 1.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

const SimilarityProvider& default_similarity() {
  static const SimilarityProvider provider = token_cosine_similarity;
  return provider;
}

}  // namespace elicit
