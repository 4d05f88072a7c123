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


#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace elicit::testing {

PathEnumeration enumerate_paths(const Scenario& scenario, std::uint64_t limit) {
  PathEnumeration out;
  out.min_turns = INT64_MAX;
  struct Frame {
    const Turn* turn;
    std::size_t next_option;
    std::int64_t depth;
  };
  std::vector<Frame> stack;
  auto start = scenario.turns.find(scenario.start_turn);
  if (start == scenario.turns.end()) return {0, 0, 0, true};
  stack.push_back({&start->second, 0, 1});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next_option == top.turn->options.size()) {
      stack.pop_back();
      continue;
    }
    const DialogueOption& o = top.turn->options[top.next_option++];
    if (!o.next_turn) {
      ++out.path_count;
      out.min_turns = std::min(out.min_turns, top.depth);
      out.max_turns = std::max(out.max_turns, top.depth);
      if (out.path_count > limit) {
        out.complete = false;
        return out;
      }
      continue;
    }
    const Turn& next = scenario.turns.at(*o.next_turn);
    stack.push_back({&next, 0, top.depth + 1});
  }
  if (out.path_count == 0) out.min_turns = 0;
  return out;
}

std::map<int, std::int64_t> flat_tally(const nlohmann::json& document) {
  std::map<int, std::int64_t> out;
  for (const auto& [id, turn] : document.at("turns").items()) {
    for (const auto& option : turn.at("options")) {
      for (const auto& m : option.at("mistakes")) ++out[m.get<int>()];
    }
  }
  return out;
}

std::size_t count_turn_records(std::string_view raw) {
  std::size_t n = 0;
  const std::string_view key = "\"stakeholder_text\"";
  for (auto pos = raw.find(key); pos != std::string_view::npos; pos = raw.find(key, pos + 1)) ++n;
  return n;
}

std::size_t whitespace_words(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

double reference_cosine(const std::string& a, const std::string& b) {
  auto counts = [](const std::string& text) {
    std::map<std::string, double> tf;
    std::istringstream in(text);
    for (std::string w; in >> w;) {
      std::string t;
      for (char c : w) {
        const auto u = static_cast<unsigned char>(c);
        if (!std::ispunct(u)) t += static_cast<char>(std::tolower(u));
      }
      if (!t.empty()) tf[t] += 1.0;
    }
    return tf;
  };
  const auto ta = counts(a);
  const auto tb = counts(b);
  if (ta.empty() || tb.empty()) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [w, c] : ta) {
    na += c * c;
    if (auto it = tb.find(w); it != tb.end()) dot += c * it->second;
  }
  for (const auto& [w, c] : tb) nb += c * c;
  return dot / std::sqrt(na * nb);
}

namespace {

double median_sorted(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  const std::size_t mid = lo + n / 2;
  return n % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

}  // namespace

TukeySummary tukey_hinges(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  TukeySummary out;
  out.median = median_sorted(values, 0, n);
  if (n == 1) {
    out.q1 = out.q3 = values[0];
    return out;
  }
  const std::size_t half = n / 2;
  out.q1 = median_sorted(values, 0, half);
  out.q3 = median_sorted(values, n - half, n);
  return out;
}

double pairwise_u(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) u += 1.0;
      else if (x == y) u += 0.5;
    }
  }
  return u;
}

ExactMw exact_mann_whitney(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  const std::size_t na = a.size();

  ExactMw out;
  out.u_a = pairwise_u(a, b);

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(na), true);
  std::uint64_t total = 0;
  std::uint64_t le = 0;
  std::uint64_t ge = 0;
  // prev_permutation over a sorted-descending mask visits each subset once.
  do {
    std::vector<double> ga;
    std::vector<double> gb;
    for (std::size_t i = 0; i < n; ++i) (pick[i] ? ga : gb).push_back(pooled[i]);
    const double u = pairwise_u(ga, gb);
    ++total;
    if (u <= out.u_a + 1e-9) ++le;
    if (u >= out.u_a - 1e-9) ++ge;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  out.p_less = static_cast<double>(le) / static_cast<double>(total);
  out.p_greater = static_cast<double>(ge) / static_cast<double>(total);
  out.p_two_sided = std::min(1.0, 2.0 * std::min(out.p_less, out.p_greater));
  return out;
}

}  // namespace elicit::testing
