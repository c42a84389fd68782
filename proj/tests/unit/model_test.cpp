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

#include "fairarg/model.hpp"

namespace fairarg {
namespace {

TEST(Stance, ParsesCaseInsensitively) {
  EXPECT_EQ(parse_stance("PRO"), Stance::kPro);
  EXPECT_EQ(parse_stance("con"), Stance::kCon);
  EXPECT_EQ(parse_stance("Pro"), Stance::kPro);
  EXPECT_THROW(parse_stance("NEUTRAL"), ValidationError);
  EXPECT_THROW(parse_stance(""), ValidationError);
}

TEST(Stance, OppositeAndNames) {
  EXPECT_EQ(opposite(Stance::kPro), Stance::kCon);
  EXPECT_EQ(opposite(Stance::kCon), Stance::kPro);
  EXPECT_EQ(opposite(Stance::kUnknown), Stance::kUnknown);
  EXPECT_EQ(to_string(Stance::kPro), "PRO");
  EXPECT_EQ(to_string(Stance::kCon), "CON");
}

TEST(TopicLess, NumericBeforeLexicographic) {
  TopicLess less;
  EXPECT_TRUE(less("2", "10"));
  EXPECT_FALSE(less("10", "2"));
  EXPECT_TRUE(less("a", "b"));
  EXPECT_FALSE(less("7", "7"));
}

TEST(StanceMap, LookupAndConflicts) {
  StanceMap m;
  m.insert("d1", Stance::kPro);
  m.insert("d1", Stance::kPro);
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.lookup("d1"), Stance::kPro);
  EXPECT_EQ(m.lookup("missing"), Stance::kUnknown);
  EXPECT_FALSE(m.contains("missing"));
  EXPECT_THROW(m.insert("d1", Stance::kCon), ValidationError);
  EXPECT_THROW(m.insert("d2", Stance::kUnknown), ValidationError);
}

TEST(Canonicalize, SortsByScoreDescending) {
  const auto r = canonicalize_ranking("1", "sys", {{"dA", 1, 0.5}, {"dB", 2, 0.9}});
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[0].doc_id, "dB");
  EXPECT_EQ(r.items[1].doc_id, "dA");
  EXPECT_EQ(r.items[0].rank, 1);
  EXPECT_EQ(r.items[1].rank, 2);
}

TEST(Canonicalize, TiesBrokenByDocIdDescending) {
  const auto r = canonicalize_ranking("1", "sys", {{"dA", 1, 0.5}, {"dB", 2, 0.5}});
  EXPECT_EQ(r.items[0].doc_id, "dB");
  EXPECT_EQ(r.items[1].doc_id, "dA");
}

TEST(Canonicalize, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(canonicalize_ranking("1", "sys", {{"dA", 1, 0.5}, {"dA", 2, 0.4}}), ValidationError);
  EXPECT_THROW(canonicalize_ranking("1", "sys", {}), ValidationError);
}

TEST(JudgmentSet, ThresholdAndStanceCounts) {
  StanceMap stances;
  stances.insert("d1", Stance::kPro);
  stances.insert("d2", Stance::kCon);
  stances.insert("d4", Stance::kCon);
  const JudgmentSet js("1", {{"1", "d1", 2}, {"1", "d2", 1}, {"1", "d3", 1}, {"1", "d4", 0}},
                       stances);
  EXPECT_EQ(js.relevant_count(), 3);
  EXPECT_EQ(js.relevant_with_stance(Stance::kPro), 1);
  EXPECT_EQ(js.relevant_with_stance(Stance::kCon), 1);
  EXPECT_EQ(js.relevant_with_stance(Stance::kUnknown), 1);
  EXPECT_EQ(js.relevant_labeled_count(), 2);
  EXPECT_FALSE(js.is_relevant("d4"));
  EXPECT_EQ(js.grade("d4"), 0);
  EXPECT_FALSE(js.grade("zz").has_value());
  EXPECT_EQ(js.stance("d3"), Stance::kUnknown);
}

TEST(JudgmentSet, HigherThreshold) {
  const JudgmentSet js("1", {{"1", "d1", 2}, {"1", "d2", 1}}, StanceMap{}, 2);
  EXPECT_EQ(js.relevant_count(), 1);
  EXPECT_TRUE(js.is_relevant("d1"));
  EXPECT_FALSE(js.is_relevant("d2"));
}

TEST(JudgmentSet, ConflictingGradesThrow) {
  EXPECT_THROW(JudgmentSet("1", {{"1", "d1", 2}, {"1", "d1", 1}}, StanceMap{}), ValidationError);
}

TEST(ProtectedStrategy, ParseAndName) {
  EXPECT_EQ(ProtectedStrategy::parse("minority").kind, ProtectedStrategy::Kind::kMinority);
  EXPECT_EQ(ProtectedStrategy::parse("majority").kind, ProtectedStrategy::Kind::kMajority);
  const auto con = ProtectedStrategy::parse("con");
  EXPECT_EQ(con.kind, ProtectedStrategy::Kind::kFixed);
  EXPECT_EQ(con.stance, Stance::kCon);
  EXPECT_EQ(ProtectedStrategy::parse("pro").name(), "pro");
  EXPECT_THROW(ProtectedStrategy::parse("left"), ValidationError);
}

TEST(MetricId, RoundTrip) {
  for (auto m : {MetricId::kNdcg, MetricId::kAlphaNdcg, MetricId::kRnd, MetricId::kRkl,
                 MetricId::kRrd, MetricId::kCombined}) {
    EXPECT_EQ(parse_metric(to_string(m)), m);
  }
  EXPECT_TRUE(is_fairness_metric(MetricId::kRkl));
  EXPECT_FALSE(is_fairness_metric(MetricId::kAlphaNdcg));
  EXPECT_THROW(parse_metric("map"), ValidationError);
}

}  // namespace
}  // namespace fairarg
