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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace elicit::stats {

struct GroupSample {
  std::string label;
  std::vector<double> values;
};

struct MedianIqr {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
};

// Quartiles are medians of the lower and upper halves; for odd n the middle
// element belongs to neither half. Throws Error(kEmptySample).
MedianIqr median_iqr(std::span<const double> values);

enum class Alternative { kLess, kGreater, kTwoSided };
std::string_view to_string(Alternative a);
std::optional<Alternative> parse_alternative(std::string_view text);

enum class PValueMethod {
  kAuto,    // exact when n_a + n_b <= kExactLimit, normal otherwise
  kExact,   // permutation distribution of the rank sum (ties as mid-ranks)
  kNormal,  // tie-corrected normal approximation with continuity correction
};
std::string_view to_string(PValueMethod m);

inline constexpr std::size_t kExactLimit = 30;

struct StatResult {
  double statistic = 0.0;  // U of sample a
  double u_b = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::kTwoSided;
  PValueMethod method = PValueMethod::kAuto;  // method actually used
};

// Mid-ranks (1-based) of values, ties sharing the average rank.
std::vector<double> mid_ranks(std::span<const double> values);

// U of sample a from pooled mid-rank sums. Throws Error(kEmptySample).
double u_statistic(std::span<const double> a, std::span<const double> b);

// LESS tests whether a tends to be smaller than b. Throws Error(kEmptySample)
// for empty inputs and Error(kZeroVariance) when every value is identical.
StatResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          Alternative alternative, PValueMethod method = PValueMethod::kAuto);

// rows are respondents, columns are items. Sample variances (n - 1).
double cronbach_alpha(const std::vector<std::vector<double>>& rows);

double sample_variance(std::span<const double> values);

}  // namespace elicit::stats
