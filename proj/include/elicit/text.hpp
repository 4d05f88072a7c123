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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace elicit {

// Symmetric similarity in [0, 1] between two utterances.
using SimilarityProvider = std::function<double(std::string_view, std::string_view)>;

// Whitespace-separated tokens; punctuation stays attached.
std::size_t word_count(std::string_view text);

// Lowercased tokens with ASCII punctuation removed; tokens that become empty
// are dropped.
std::vector<std::string> similarity_tokens(std::string_view text);

// Token sequence joined by single spaces. Used for exact-match comparison of
// utterances.
std::string normalize_utterance(std::string_view text);

// Cosine of term-frequency vectors over similarity_tokens(); 0 when either
// side has no tokens.
double token_cosine_similarity(std::string_view a, std::string_view b);

const SimilarityProvider& default_similarity();

}  // namespace elicit
