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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairarg/model.hpp"

namespace fairarg {

// Rectangular table of scores: rows are entities (systems, or topics of a
// single run), columns are metric labels such as "rkl@5".
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> columns);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }

  double& at(std::size_t row, std::size_t column);
  double at(std::size_t row, std::size_t column) const;
  std::vector<double> column(std::size_t column) const;
  // nullopt when absent
  std::optional<std::size_t> column_index(const std::string& label) const;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> columns_;
  std::vector<double> cells_;
};

struct AverageResult {
  double mean = 0.0;
  std::size_t used = 0;
  std::vector<std::string> excluded_topics;
};

// Mean over assignable topics. `scores` holds one entry per topic; nullopt
// marks an unassignable topic, which is skipped and reported. Throws
// ValidationError when nothing is left.
AverageResult average_scores(const std::vector<std::pair<std::string, std::optional<double>>>& scores);

// Tied-group sizes (only groups of size >= 2) of a score vector.
std::vector<int> tie_groups(std::span<const double> values);

// Raised when either vector is constant, leaving tau-b undefined.
class DegenerateCorrelationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct PairCounts {
  long long concordant = 0;
  long long discordant = 0;
  long long ties_x = 0;  // pairs tied in x, joint ties included
  long long ties_y = 0;  // pairs tied in y, joint ties included
  long long pairs = 0;   // n (n - 1) / 2
};

// Exhaustive O(n^2) pair classification.
PairCounts count_pairs(std::span<const double> x, std::span<const double> y);

// tau-b = (C - D) / sqrt((n0 - n1)(n0 - n2)) with n1, n2 the pairs tied in
// x and in y. Throws DegenerateCorrelationError on a constant vector and
// ValidationError on length mismatch or n < 2.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Two-sided p-value for an observed tau-b under the normal approximation
// with tie-corrected variance of S = C - D. `x_ties` and `y_ties` are the
// tied-group sizes of each vector.
double tau_p_value(double tau, int n, std::span<const int> x_ties, std::span<const int> y_ties);

struct KendallResult {
  double tau = 0.0;
  double p_value = 1.0;
  bool exact = false;  // p from full permutation enumeration
};

// tau-b with its p-value: exact enumeration of all permutations of y when
// n <= 8, normal approximation otherwise.
KendallResult kendall_test(std::span<const double> x, std::span<const double> y);

struct CorrelationEntry {
  std::string metric_a;
  std::string metric_b;
  double tau = 0.0;
  double p_value = 1.0;
  bool significant = false;
  bool degenerate = false;  // tau undefined; tau and p are NaN
  int n = 0;
};

struct CorrelationReport {
  std::vector<std::string> metrics;
  // Upper triangle (a before b in column order), diagonal excluded.
  std::vector<CorrelationEntry> entries;
  double significance_level = 0.05;

  // Symmetric lookup; tau(a, a) = 1.
  const CorrelationEntry* find(const std::string& a, const std::string& b) const;
  double tau(const std::string& a, const std::string& b) const;
};

// All pairwise tau-b and p-values between the matrix columns. Degenerate
// pairs are flagged, not dropped.
CorrelationReport correlation_matrix(const ScoreMatrix& matrix, double significance_level = 0.05);

// Harmonic mean of a relevance score a and the fairness 1 - u.
double harmonic_combine(double a, double u);

// "ndcg@5", "rkl@5", or "harmonic:andcg@5,rkl@5".
struct SortKey {
  std::string column;               // single-column key
  std::string harmonic_relevance;   // harmonic key: relevance column
  std::string harmonic_unfairness;  // harmonic key: (un)fairness column

  static SortKey parse(std::string_view text);
  bool is_harmonic() const { return !harmonic_relevance.empty(); }
  std::string label() const;
};

// True for rND / rKL / rRD columns, which sort ascending.
bool lower_is_better(const std::string& column);

struct LeaderboardEntry {
  int rank = 0;
  std::string entity;
  double value = 0.0;
};

// Descending by key (ascending for (un)fairness columns); ties ordered by
// entity name. Throws ValidationError on an unknown column.
std::vector<LeaderboardEntry> leaderboard(const ScoreMatrix& matrix, const SortKey& key);

}  // namespace fairarg
