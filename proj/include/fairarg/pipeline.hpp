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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairarg/fairness.hpp"
#include "fairarg/grouping.hpp"
#include "fairarg/ingest.hpp"
#include "fairarg/meta_eval.hpp"
#include "fairarg/model.hpp"

namespace fairarg {

enum class OutputFormat : std::uint8_t { kCsv, kJson, kTsv };

OutputFormat parse_output_format(std::string_view text);
std::string_view to_string(OutputFormat format);

MembershipMode parse_membership_mode(std::string_view text);
std::string_view to_string(MembershipMode mode);

PopulationMode parse_population_mode(std::string_view text);
std::string_view to_string(PopulationMode mode);

struct EvalConfig {
  int k = 5;
  double alpha = 0.5;
  ProtectedStrategy strategy = ProtectedStrategy::minority();
  NormalizationMode normalization = NormalizationMode::kPatternSpace;
  int relevance_threshold = 1;
  MembershipMode members = MembershipMode::kAll;
  PopulationMode population = PopulationMode::kLabeled;
  OutputFormat format = OutputFormat::kCsv;
  std::vector<MetricId> metrics = {MetricId::kNdcg, MetricId::kAlphaNdcg, MetricId::kRnd,
                                   MetricId::kRkl, MetricId::kRrd};
  int jobs = 1;

  // Throws ValidationError on any out-of-range field.
  void validate() const;
  bool wants_fairness() const;
  // Compact JSON object echoed into every report. Excludes `jobs`, which
  // cannot change results.
  std::string to_json() const;
};

// Comma-separated metric names, e.g. "ndcg,rkl".
std::vector<MetricId> parse_metric_list(std::string_view text);

// One line of the scores file. topic == "ALL" marks a per-entity average.
struct ScoreRow {
  std::string entity;
  std::string topic;
  MetricId metric = MetricId::kNdcg;
  int k = 0;
  double raw = 0.0;
  std::optional<double> normalized;

  double value() const { return normalized.value_or(raw); }
  // "rkl@5"
  std::string label() const;
};

inline constexpr const char* kAllTopics = "ALL";

struct EvaluationReport {
  EvalConfig config;
  std::vector<ScoreRow> rows;
  std::vector<std::string> warnings;
};

// Scores every (system, topic) of the collection and appends per-system
// averages. Unassignable topics get no fairness rows and are reported in
// `warnings`, as are zero-ideal topics and unknown-stance documents.
EvaluationReport evaluate(const Collection& collection, const EvalConfig& config);

void write_scores(std::ostream& out, const EvaluationReport& report);

// Reads CSV, TSV or JSON scores as written by write_scores. Throws
// ValidationError when the header or a field does not match the schema.
std::vector<ScoreRow> parse_scores(std::istream& in, const std::string& source = "<scores>");
std::vector<ScoreRow> read_scores_file(const std::filesystem::path& path);

enum class MatrixAxis : std::uint8_t {
  kTopic,   // one row per (entity, topic), averages ignored
  kSystem,  // one row per entity from the ALL rows
};

MatrixAxis parse_matrix_axis(std::string_view text);

struct MatrixBuild {
  ScoreMatrix matrix;
  std::vector<std::string> dropped_rows;  // rows lacking some metric
};

// Columns are metric labels in first-appearance order. Rows missing any
// column are dropped. An optional metric filter keeps only those labels.
MatrixBuild build_score_matrix(const std::vector<ScoreRow>& rows, MatrixAxis axis,
                               const std::vector<std::string>& only_columns = {});

void write_correlation_csv(std::ostream& out, const CorrelationReport& report);
void write_correlation_json(std::ostream& out, const CorrelationReport& report,
                            const std::string& axis, const std::vector<std::string>& dropped_rows);

void write_leaderboard(std::ostream& out, const std::vector<LeaderboardEntry>& entries,
                       const SortKey& key, OutputFormat format);

// Shortest representation that parses back to the same double.
std::string format_number(double value);

}  // namespace fairarg
