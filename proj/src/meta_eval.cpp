// Copyright 2026 The fairarg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fairarg/meta_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace fairarg {

namespace {

int sign(double d) { return (d > 0.0) - (d < 0.0); }

void check_finite(std::span<const double> v) {
  for (double d : v) {
    if (!std::isfinite(d)) throw ValidationError("correlation input contains a non-finite value");
  }
}

long long statistic(std::span<const double> x, std::span<const double> y) {
  const auto c = count_pairs(x, y);
  return c.concordant - c.discordant;
}

double sum_poly(std::span<const int> groups, auto&& f) {
  double s = 0.0;
  for (int t : groups) s += f(static_cast<double>(t));
  return s;
}

std::string metric_name(const std::string& column) {
  return column.substr(0, column.find('@'));
}

// "<metric>@<k>" with a known metric and k >= 1.
void check_column_label(std::string_view label) {
  const auto at = label.find('@');
  if (at == std::string_view::npos || at == 0 || at + 1 == label.size()) {
    throw ValidationError("sort key '" + std::string(label) + "' must look like ndcg@5");
  }
  parse_metric(label.substr(0, at));
  int k = 0;
  const auto digits = label.substr(at + 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) {
    throw ValidationError("sort key '" + std::string(label) + "' has an invalid cutoff");
  }
}

}  // namespace

ScoreMatrix::ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> columns)
    : rows_(std::move(rows)),
      columns_(std::move(columns)),
      cells_(rows_.size() * columns_.size(), 0.0) {}

double& ScoreMatrix::at(std::size_t row, std::size_t column) {
  return cells_.at(row * columns_.size() + column);
}

double ScoreMatrix::at(std::size_t row, std::size_t column) const {
  return cells_.at(row * columns_.size() + column);
}

std::vector<double> ScoreMatrix::column(std::size_t column) const {
  std::vector<double> out;
  out.reserve(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) out.push_back(at(r, column));
  return out;
}

std::optional<std::size_t> ScoreMatrix::column_index(const std::string& label) const {
  const auto it = std::find(columns_.begin(), columns_.end(), label);
  if (it == columns_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns_.begin());
}

AverageResult average_scores(
    const std::vector<std::pair<std::string, std::optional<double>>>& scores) {
  AverageResult result;
  double sum = 0.0;
  for (const auto& [topic, value] : scores) {
    if (value) {
      sum += *value;
      ++result.used;
    } else {
      result.excluded_topics.push_back(topic);
    }
  }
  if (result.used == 0) throw ValidationError("no assignable topic to average");
  result.mean = sum / static_cast<double>(result.used);
  return result;
}

std::vector<int> tie_groups(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> groups;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i >= 2) groups.push_back(static_cast<int>(j - i));
    i = j;
  }
  return groups;
}

PairCounts count_pairs(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation inputs differ in length");
  PairCounts c;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sx = sign(x[i] - x[j]);
      const int sy = sign(y[i] - y[j]);
      ++c.pairs;
      if (sx == 0) ++c.ties_x;
      if (sy == 0) ++c.ties_y;
      if (sx == 0 || sy == 0) continue;
      if (sx == sy) {
        ++c.concordant;
      } else {
        ++c.discordant;
      }
    }
  }
  return c;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation inputs differ in length");
  if (x.size() < 2) throw ValidationError("correlation needs at least 2 observations");
  check_finite(x);
  check_finite(y);
  const auto c = count_pairs(x, y);
  if (c.ties_x == c.pairs || c.ties_y == c.pairs) {
    throw DegenerateCorrelationError("tau-b undefined: a score vector is constant");
  }
  const double denom = std::sqrt(static_cast<double>(c.pairs - c.ties_x) *
                                 static_cast<double>(c.pairs - c.ties_y));
  return std::clamp(static_cast<double>(c.concordant - c.discordant) / denom, -1.0, 1.0);
}

double tau_p_value(double tau, int n, std::span<const int> x_ties, std::span<const int> y_ties) {
  if (n < 2) throw ValidationError("p-value needs at least 2 observations");
  if (tau == 0.0) return 1.0;
  const double nn = n;
  const double n0 = nn * (nn - 1.0) / 2.0;
  const double n1 = sum_poly(x_ties, [](double t) { return t * (t - 1.0) / 2.0; });
  const double n2 = sum_poly(y_ties, [](double t) { return t * (t - 1.0) / 2.0; });
  const double s = tau * std::sqrt((n0 - n1) * (n0 - n2));

  const double v0 = nn * (nn - 1.0) * (2.0 * nn + 5.0);
  const double vt = sum_poly(x_ties, [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); });
  const double vu = sum_poly(y_ties, [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); });
  double var = (v0 - vt - vu) / 18.0;
  var += (2.0 * n1) * (2.0 * n2) / (2.0 * nn * (nn - 1.0));
  if (n > 2) {
    const double t3 = sum_poly(x_ties, [](double t) { return t * (t - 1.0) * (t - 2.0); });
    const double u3 = sum_poly(y_ties, [](double t) { return t * (t - 1.0) * (t - 2.0); });
    var += t3 * u3 / (9.0 * nn * (nn - 1.0) * (nn - 2.0));
  }
  if (var <= 0.0) return 1.0;
  const double z = std::abs(s) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

KendallResult kendall_test(std::span<const double> x, std::span<const double> y) {
  KendallResult r;
  r.tau = kendall_tau_b(x, y);
  const int n = static_cast<int>(x.size());
  if (n <= 8) {
    const long long observed = std::llabs(statistic(x, y));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> permuted(static_cast<std::size_t>(n));
    long long extreme = 0;
    long long total = 0;
    do {
      for (int i = 0; i < n; ++i) {
        permuted[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
      }
      if (std::llabs(statistic(x, permuted)) >= observed) ++extreme;
      ++total;
    } while (std::next_permutation(order.begin(), order.end()));
    r.p_value = static_cast<double>(extreme) / static_cast<double>(total);
    r.exact = true;
  } else {
    const auto tx = tie_groups(x);
    const auto ty = tie_groups(y);
    r.p_value = tau_p_value(r.tau, n, tx, ty);
  }
  return r;
}

const CorrelationEntry* CorrelationReport::find(const std::string& a, const std::string& b) const {
  for (const auto& e : entries) {
    if ((e.metric_a == a && e.metric_b == b) || (e.metric_a == b && e.metric_b == a)) return &e;
  }
  return nullptr;
}

double CorrelationReport::tau(const std::string& a, const std::string& b) const {
  if (a == b) return 1.0;
  const auto* e = find(a, b);
  if (e == nullptr) throw ValidationError("no correlation between '" + a + "' and '" + b + "'");
  return e->tau;
}

CorrelationReport correlation_matrix(const ScoreMatrix& matrix, double significance_level) {
  if (matrix.columns().size() < 2) throw ValidationError("correlation needs at least 2 metrics");
  CorrelationReport report;
  report.metrics = matrix.columns();
  report.significance_level = significance_level;
  const auto& cols = matrix.columns();
  for (std::size_t a = 0; a < cols.size(); ++a) {
    const auto xa = matrix.column(a);
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      const auto xb = matrix.column(b);
      CorrelationEntry e;
      e.metric_a = cols[a];
      e.metric_b = cols[b];
      e.n = static_cast<int>(xa.size());
      try {
        const auto r = kendall_test(xa, xb);
        e.tau = r.tau;
        e.p_value = r.p_value;
        e.significant = r.p_value < significance_level;
      } catch (const DegenerateCorrelationError&) {
        e.degenerate = true;
        e.tau = std::numeric_limits<double>::quiet_NaN();
        e.p_value = std::numeric_limits<double>::quiet_NaN();
      }
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

double harmonic_combine(double a, double u) {
  if (!(a >= 0.0 && a <= 1.0) || !(u >= 0.0 && u <= 1.0)) {
    throw ValidationError("harmonic_combine inputs must lie in [0, 1]");
  }
  const double f = 1.0 - u;
  if (a + f == 0.0) return 0.0;
  return 2.0 * a * f / (a + f);
}

SortKey SortKey::parse(std::string_view text) {
  SortKey key;
  constexpr std::string_view kHarmonic = "harmonic:";
  if (text.substr(0, kHarmonic.size()) == kHarmonic) {
    const auto rest = text.substr(kHarmonic.size());
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos || comma == 0 || comma + 1 == rest.size()) {
      throw ValidationError("harmonic key must look like harmonic:andcg@5,rkl@5");
    }
    key.harmonic_relevance = std::string(rest.substr(0, comma));
    key.harmonic_unfairness = std::string(rest.substr(comma + 1));
    check_column_label(key.harmonic_relevance);
    check_column_label(key.harmonic_unfairness);
    return key;
  }
  check_column_label(text);
  key.column = std::string(text);
  return key;
}

std::string SortKey::label() const {
  if (is_harmonic()) return "harmonic:" + harmonic_relevance + "," + harmonic_unfairness;
  return column;
}

bool lower_is_better(const std::string& column) {
  const auto m = metric_name(column);
  return m == "rnd" || m == "rkl" || m == "rrd";
}

std::vector<LeaderboardEntry> leaderboard(const ScoreMatrix& matrix, const SortKey& key) {
  auto index_of = [&](const std::string& label) {
    const auto idx = matrix.column_index(label);
    if (!idx) throw ValidationError("unknown sort key column '" + label + "'");
    return *idx;
  };

  std::vector<LeaderboardEntry> entries;
  bool ascending = false;
  if (key.is_harmonic()) {
    const auto a = index_of(key.harmonic_relevance);
    const auto u = index_of(key.harmonic_unfairness);
    for (std::size_t r = 0; r < matrix.rows().size(); ++r) {
      entries.push_back({0, matrix.rows()[r], harmonic_combine(matrix.at(r, a), matrix.at(r, u))});
    }
  } else {
    const auto c = index_of(key.column);
    ascending = lower_is_better(key.column);
    for (std::size_t r = 0; r < matrix.rows().size(); ++r) {
      entries.push_back({0, matrix.rows()[r], matrix.at(r, c)});
    }
  }
  std::sort(entries.begin(), entries.end(), [&](const auto& x, const auto& y) {
    if (x.value != y.value) return ascending ? x.value < y.value : x.value > y.value;
    return x.entity < y.entity;
  });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = static_cast<int>(i) + 1;
  return entries;
}

}  // namespace fairarg
