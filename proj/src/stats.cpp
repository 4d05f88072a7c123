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

#include "elicit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "elicit/error.hpp"

namespace elicit::stats {

namespace {

double median_of_sorted(std::span<const double> v) {
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void require_non_empty(std::span<const double> v, const char* what) {
  if (v.empty()) throw Error(ErrorCode::kEmptySample, std::string(what) + " is empty");
}

}  // namespace

MedianIqr median_iqr(std::span<const double> values) {
  require_non_empty(values, "sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  MedianIqr r;
  r.median = median_of_sorted(v);
  if (n == 1) {
    r.q1 = r.q3 = v[0];
  } else {
    const std::size_t half = n / 2;
    r.q1 = median_of_sorted(std::span<const double>(v.data(), half));
    r.q3 = median_of_sorted(std::span<const double>(v.data() + (n - half), half));
  }
  r.iqr = r.q3 - r.q1;
  return r;
}

std::string_view to_string(Alternative a) {
  switch (a) {
    case Alternative::kLess: return "less";
    case Alternative::kGreater: return "greater";
    case Alternative::kTwoSided: return "two-sided";
  }
  return "";
}

std::optional<Alternative> parse_alternative(std::string_view text) {
  if (text == "less") return Alternative::kLess;
  if (text == "greater") return Alternative::kGreater;
  if (text == "two-sided" || text == "two_sided") return Alternative::kTwoSided;
  return std::nullopt;
}

std::string_view to_string(PValueMethod m) {
  switch (m) {
    case PValueMethod::kAuto: return "auto";
    case PValueMethod::kExact: return "exact";
    case PValueMethod::kNormal: return "normal";
  }
  return "";
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double u_statistic(std::span<const double> a, std::span<const double> b) {
  require_non_empty(a, "sample a");
  require_non_empty(b, "sample b");
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = mid_ranks(pooled);
  const double rank_sum = std::accumulate(ranks.begin(), ranks.begin() + a.size(), 0.0);
  const double na = static_cast<double>(a.size());
  return rank_sum - na * (na + 1.0) / 2.0;
}

StatResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                          Alternative alternative, PValueMethod method) {
  require_non_empty(a, "sample a");
  require_non_empty(b, "sample b");

  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = mid_ranks(pooled);

  // Doubled mid-ranks are integers, which keeps the exact distribution
  // bookkeeping in integer sums.
  std::vector<long> twice(n);
  for (std::size_t i = 0; i < n; ++i) twice[i] = std::lround(2.0 * ranks[i]);
  const long observed_twice = std::accumulate(twice.begin(), twice.begin() + na, 0L);

  const double dna = static_cast<double>(na);
  const double dnb = static_cast<double>(nb);
  const double dn = static_cast<double>(n);
  StatResult r;
  r.alternative = alternative;
  r.statistic = 0.5 * static_cast<double>(observed_twice) - dna * (dna + 1.0) / 2.0;
  r.u_b = dna * dnb - r.statistic;

  double tie_term = 0.0;
  {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j < n && sorted[j] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
  }
  const double variance =
      n > 1 ? dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0))) : 0.0;
  if (variance <= 0.0) {
    throw Error(ErrorCode::kZeroVariance, "all observations are identical; U has no spread");
  }

  if (method == PValueMethod::kAuto) {
    method = n <= kExactLimit ? PValueMethod::kExact : PValueMethod::kNormal;
  }
  r.method = method;

  double p_less = 0.0;
  double p_greater = 0.0;
  if (method == PValueMethod::kExact) {
    // ways[k][s]: subsets of size k of the items seen so far whose doubled
    // rank sum is s.
    const long max_sum = std::accumulate(twice.begin(), twice.end(), 0L);
    std::vector<std::vector<double>> ways(na + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t item = 0; item < n; ++item) {
      const long w = twice[item];
      for (std::size_t k = std::min(item + 1, na); k >= 1; --k) {
        for (long s = max_sum; s >= w; --s) ways[k][s] += ways[k - 1][s - w];
      }
    }
    double total = 0.0;
    double le = 0.0;
    double ge = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
      const double c = ways[na][s];
      total += c;
      if (s <= observed_twice) le += c;
      if (s >= observed_twice) ge += c;
    }
    p_less = le / total;
    p_greater = ge / total;
  } else {
    const double mu = dna * dnb / 2.0;
    const double sd = std::sqrt(variance);
    p_less = normal_cdf((r.statistic - mu + 0.5) / sd);
    p_greater = 1.0 - normal_cdf((r.statistic - mu - 0.5) / sd);
  }

  switch (alternative) {
    case Alternative::kLess: r.p_value = p_less; break;
    case Alternative::kGreater: r.p_value = p_greater; break;
    case Alternative::kTwoSided:
      if (method == PValueMethod::kExact) {
        r.p_value = 2.0 * std::min(p_less, p_greater);
      } else {
        const double mu = dna * dnb / 2.0;
        const double z = (std::abs(r.statistic - mu) - 0.5) / std::sqrt(variance);
        r.p_value = 2.0 * (1.0 - normal_cdf(z));
      }
      break;
  }
  r.p_value = std::clamp(r.p_value, 0.0, 1.0);
  return r;
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

double cronbach_alpha(const std::vector<std::vector<double>>& rows) {
  if (rows.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "cronbach_alpha needs at least 2 respondents");
  }
  const std::size_t k = rows.front().size();
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "cronbach_alpha needs at least 2 items");
  for (const auto& r : rows) {
    if (r.size() != k) throw Error(ErrorCode::kInvalidArgument, "ragged response matrix");
  }

  double item_variance_sum = 0.0;
  std::vector<double> column(rows.size());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i][j];
    item_variance_sum += sample_variance(column);
  }
  std::vector<double> totals;
  totals.reserve(rows.size());
  for (const auto& r : rows) totals.push_back(std::accumulate(r.begin(), r.end(), 0.0));
  const double total_variance = sample_variance(totals);
  if (total_variance <= 0.0) {
    throw Error(ErrorCode::kZeroVariance, "total score variance is zero");
  }
  const double dk = static_cast<double>(k);
  return dk / (dk - 1.0) * (1.0 - item_variance_sum / total_variance);
}

}  // namespace elicit::stats
