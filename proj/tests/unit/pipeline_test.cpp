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

#include <gtest/gtest.h>

#include <sstream>

#include "fairarg/pipeline.hpp"
#include "fairarg/synthetic.hpp"

namespace fairarg {
namespace {

Collection synthetic_collection(SettingName name) {
  auto syn = build_synthetic(SyntheticSetting::standard(name), 5);
  return build_collection({syn.run}, syn.qrels, syn.stances);
}

EvalConfig config_for(SettingName name) {
  EvalConfig c;
  c.strategy = SyntheticSetting::standard(name).strategy();
  return c;
}

std::size_t count_rows(const EvaluationReport& r, MetricId m, bool averages) {
  std::size_t n = 0;
  for (const auto& row : r.rows) n += row.metric == m && (row.topic == kAllTopics) == averages;
  return n;
}

TEST(Evaluate, ThirtyTwoTopicRowsPerMetric) {
  const auto report = evaluate(synthetic_collection(SettingName::kMinority), config_for(SettingName::kMinority));
  for (auto m : {MetricId::kNdcg, MetricId::kAlphaNdcg, MetricId::kRnd, MetricId::kRkl, MetricId::kRrd}) {
    EXPECT_EQ(count_rows(report, m, false), 32u);
    EXPECT_EQ(count_rows(report, m, true), 1u);
  }
  EXPECT_TRUE(report.warnings.empty());
}

TEST(Evaluate, FairnessRowsAreNormalized) {
  const auto report = evaluate(synthetic_collection(SettingName::kMinority), config_for(SettingName::kMinority));
  for (const auto& row : report.rows) {
    if (!is_fairness_metric(row.metric)) {
      EXPECT_FALSE(row.normalized.has_value());
      continue;
    }
    ASSERT_TRUE(row.normalized.has_value());
    EXPECT_GE(*row.normalized, 0.0);
    EXPECT_LE(*row.normalized, 1.0);
  }
}

TEST(Evaluate, ParallelMatchesSerial) {
  const auto collection = synthetic_collection(SettingName::kProportionAgnostic);
  auto config = config_for(SettingName::kProportionAgnostic);
  std::ostringstream serial, parallel;
  write_scores(serial, evaluate(collection, config));
  config.jobs = 4;
  write_scores(parallel, evaluate(collection, config));
  EXPECT_EQ(serial.str(), parallel.str());
}

TEST(Evaluate, CorpusAndNoneNormalization) {
  const auto collection = synthetic_collection(SettingName::kMinority);
  auto config = config_for(SettingName::kMinority);
  config.normalization = NormalizationMode::kCorpus;
  const auto corpus = evaluate(collection, config);
  double lo = 2, hi = -1;
  for (const auto& row : corpus.rows) {
    if (row.metric == MetricId::kRrd && row.topic != kAllTopics) {
      lo = std::min(lo, *row.normalized);
      hi = std::max(hi, *row.normalized);
    }
  }
  EXPECT_EQ(lo, 0.0);
  EXPECT_EQ(hi, 1.0);

  config.normalization = NormalizationMode::kNone;
  for (const auto& row : evaluate(collection, config).rows) EXPECT_FALSE(row.normalized.has_value());
}

TEST(Evaluate, UnassignableTopicWarns) {
  RunSet run;
  run.system_tag = "s";
  run.topics.emplace("1", canonicalize_ranking("1", "s", {{"a", 1, 1}}));
  run.topics.emplace("2", canonicalize_ranking("2", "s", {{"b", 1, 1}}));
  QrelsMap qrels;
  qrels["1"] = {{"1", "a", 1}};
  qrels["2"] = {{"2", "b", 1}};
  StanceMap stances;
  stances.insert("a", Stance::kPro);
  const auto report = evaluate(build_collection({run}, qrels, stances), EvalConfig{});
  EXPECT_EQ(count_rows(report, MetricId::kRkl, false), 1u);
  EXPECT_FALSE(report.warnings.empty());
}

TEST(Config, Validation) {
  EvalConfig c;
  EXPECT_NO_THROW(c.validate());
  c.k = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = EvalConfig{};
  c.alpha = -0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = EvalConfig{};
  c.metrics = {MetricId::kCombined};
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_EQ(parse_metric_list("ndcg,rkl,ndcg").size(), 2u);
  EXPECT_THROW(parse_metric_list(""), ValidationError);
  EXPECT_THROW(parse_output_format("xml"), ValidationError);
  EXPECT_EQ(parse_membership_mode("relevant-only"), MembershipMode::kRelevantOnly);
  EXPECT_EQ(parse_population_mode("strict"), PopulationMode::kStrict);
}

TEST(Scores, RoundTripAllFormats) {
  const auto collection = synthetic_collection(SettingName::kMajority);
  for (auto format : {OutputFormat::kCsv, OutputFormat::kTsv, OutputFormat::kJson}) {
    auto config = config_for(SettingName::kMajority);
    config.format = format;
    const auto report = evaluate(collection, config);
    std::ostringstream out;
    write_scores(out, report);
    std::istringstream in(out.str());
    const auto rows = parse_scores(in);
    ASSERT_EQ(rows.size(), report.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].entity, report.rows[i].entity);
      EXPECT_EQ(rows[i].topic, report.rows[i].topic);
      EXPECT_EQ(rows[i].metric, report.rows[i].metric);
      EXPECT_EQ(rows[i].raw, report.rows[i].raw);
      EXPECT_EQ(rows[i].normalized, report.rows[i].normalized);
    }
  }
}

TEST(Scores, EmbedsConfigAndVersion) {
  std::ostringstream out;
  write_scores(out, evaluate(synthetic_collection(SettingName::kMinority), config_for(SettingName::kMinority)));
  const auto text = out.str();
  EXPECT_EQ(text.rfind("# fairarg 0.1.0 ", 0), 0u);
  EXPECT_NE(text.find("\"protected\":\"con\""), std::string::npos);
}

TEST(Scores, SchemaMismatch) {
  std::istringstream bad("a,b,c\n1,2,3\n");
  EXPECT_THROW(parse_scores(bad), ValidationError);
  std::istringstream bad_json("{\"rows\": []}");
  EXPECT_THROW(parse_scores(bad_json), ValidationError);
  std::istringstream bad_field("entity,topic,metric,k,raw,normalized\ns,1,ndcg,5,abc,\n");
  EXPECT_THROW(parse_scores(bad_field), ParseError);
}

TEST(Matrix, TopicAndSystemAxes) {
  const std::vector<ScoreRow> rows{
      {"s", "1", MetricId::kNdcg, 5, 0.5, std::nullopt},
      {"s", "1", MetricId::kRkl, 5, 2.0, 0.3},
      {"s", "2", MetricId::kNdcg, 5, 0.7, std::nullopt},
      {"s", kAllTopics, MetricId::kNdcg, 5, 0.6, std::nullopt},
  };
  const auto topics = build_score_matrix(rows, MatrixAxis::kTopic);
  EXPECT_EQ(topics.matrix.rows().size(), 1u);
  EXPECT_EQ(topics.matrix.at(0, 1), 0.3);
  ASSERT_EQ(topics.dropped_rows.size(), 1u);
  EXPECT_EQ(topics.dropped_rows[0], "s/2");
  const auto systems = build_score_matrix(rows, MatrixAxis::kSystem);
  EXPECT_EQ(systems.matrix.rows().size(), 1u);
  EXPECT_EQ(systems.matrix.at(0, 0), 0.6);
  EXPECT_THROW(build_score_matrix(rows, MatrixAxis::kTopic, {"rrd@5"}), ValidationError);
}

TEST(Correlate, TwoMetricFileGivesOnePair) {
  const std::vector<ScoreRow> rows{
      {"s", "1", MetricId::kNdcg, 5, 0.1, std::nullopt}, {"s", "1", MetricId::kRkl, 5, 1, 0.9},
      {"s", "2", MetricId::kNdcg, 5, 0.5, std::nullopt}, {"s", "2", MetricId::kRkl, 5, 1, 0.4},
      {"s", "3", MetricId::kNdcg, 5, 0.9, std::nullopt}, {"s", "3", MetricId::kRkl, 5, 1, 0.2},
  };
  const auto report = correlation_matrix(build_score_matrix(rows, MatrixAxis::kTopic).matrix);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(report.entries[0].tau, -1.0);
  std::ostringstream csv;
  write_correlation_csv(csv, report);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "metric_a,metric_b,tau,p,significant,degenerate,n");
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.2), "0.2");
  EXPECT_EQ(format_number(1.0), "1");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(v)), v);
}

}  // namespace
}  // namespace fairarg
