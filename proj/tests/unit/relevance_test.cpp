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

#include <cmath>

#include "fairarg/relevance.hpp"
#include "fairarg/synthetic.hpp"

namespace fairarg {
namespace {

constexpr Stance P = Stance::kPro;
constexpr Stance C = Stance::kCon;

// Relevant pool of `pro` + `con` labeled documents and a ranking that
// draws from it in `pattern` order.
struct Fixture {
  StanceMap stances;
  std::vector<Judgment> judgments;
  Ranking ranking;

  Fixture(const std::vector<Stance>& pattern, int pro, int con) {
    for (int i = 1; i <= pro; ++i) add("p" + std::to_string(i), P);
    for (int i = 1; i <= con; ++i) add("c" + std::to_string(i), C);
    std::vector<RankedItem> items;
    int np = 0, nc = 0;
    for (std::size_t r = 0; r < pattern.size(); ++r) {
      const auto id = pattern[r] == P ? "p" + std::to_string(++np) : "c" + std::to_string(++nc);
      items.push_back({id, int(r + 1), double(pattern.size() - r)});
    }
    ranking = canonicalize_ranking("t", "s", items);
  }

  void add(const std::string& id, Stance s) {
    stances.insert(id, s);
    judgments.push_back({"t", id, 1});
  }

  JudgmentSet js() const { return JudgmentSet("t", judgments, stances); }
};

TEST(Ndcg, HandComputedGrades) {
  const JudgmentSet js("t", {{"t", "d1", 5}, {"t", "d2", 3}, {"t", "d3", 1}}, StanceMap{});
  const auto run = canonicalize_ranking("t", "s", {{"d2", 1, 3}, {"d3", 2, 2}, {"d1", 3, 1}});
  EXPECT_NEAR(ndcg_at_k(run, js, 3).value, 6.13093 / 7.39279, 1e-5);
  EXPECT_NEAR(ndcg_at_k(run, js, 3).value, 0.82931, 1e-5);
}

TEST(Ndcg, IdealOrderingIsOne) {
  const JudgmentSet js("t", {{"t", "d1", 5}, {"t", "d2", 3}, {"t", "d3", 1}}, StanceMap{});
  const auto run = canonicalize_ranking("t", "s", {{"d1", 1, 3}, {"d2", 2, 2}, {"d3", 3, 1}});
  EXPECT_DOUBLE_EQ(ndcg_at_k(run, js, 3).value, 1.0);
}

TEST(Ndcg, NothingRelevantRetrieved) {
  const JudgmentSet js("t", {{"t", "d1", 1}}, StanceMap{});
  const auto run = canonicalize_ranking("t", "s", {{"x", 1, 3}, {"y", 2, 2}});
  const auto s = ndcg_at_k(run, js, 5);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_FALSE(s.zero_ideal);
}

TEST(Ndcg, ZeroIdealFlagged) {
  const JudgmentSet js("t", {{"t", "d1", 0}}, StanceMap{});
  const auto run = canonicalize_ranking("t", "s", {{"d1", 1, 3}});
  EXPECT_TRUE(ndcg_at_k(run, js, 5).zero_ideal);
}

TEST(AlphaGain, HandExpansion) {
  Fixture f({P, P, C, P, C}, 20, 5);
  const auto g = alpha_gain_vector(f.ranking, f.js(), 0.5, 5);
  const std::vector<double> expected{1, 0.5, 1, 0.25, 0.5};
  ASSERT_EQ(g.size(), expected.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_DOUBLE_EQ(g[i], expected[i]);
}

TEST(AlphaGain, AlphaZeroIsBinary) {
  Fixture f({P, C, C, P, P}, 20, 5);
  for (double g : alpha_gain_vector(f.ranking, f.js(), 0.0, 5)) EXPECT_EQ(g, 1.0);
}

TEST(AlphaGain, AlphaOneFullPenalty) {
  Fixture f({P, P}, 2, 0);
  const auto g = alpha_gain_vector(f.ranking, f.js(), 1.0, 2);
  EXPECT_EQ(g[0], 1.0);
  EXPECT_EQ(g[1], 0.0);
}

TEST(AlphaNdcg, WorkedExample) {
  Fixture f({P, P, C, P, C}, 20, 5);
  const auto observed = discounted_gain(alpha_gain_vector(f.ranking, f.js(), 0.5, 5));
  EXPECT_NEAR(observed, 2.11656, 1e-5);
  const auto ideal = greedy_ideal_gains(20, 5, 0.5, 5);
  const std::vector<double> expected{1, 1, 0.5, 0.5, 0.25};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(ideal[i], expected[i]);
  EXPECT_NEAR(discounted_gain(ideal), 2.19298, 1e-5);
  EXPECT_NEAR(alpha_ndcg_at_k(f.ranking, f.js(), {0.5, 5}).value, 0.96515, 1e-5);
}

TEST(AlphaNdcg, GreedyIdealPrefixScoresOne) {
  Fixture f({P, C, P, C, P}, 20, 5);
  EXPECT_DOUBLE_EQ(alpha_ndcg_at_k(f.ranking, f.js(), {0.5, 5}).value, 1.0);
}

TEST(AlphaNdcg, GreedyEqualsExhaustiveIdeal) {
  for (double alpha : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    for (int pro = 0; pro <= 8; ++pro) {
      for (int con = 0; con <= 8; ++con) {
        for (int k = 1; k <= 7; ++k) {
          EXPECT_NEAR(discounted_gain(greedy_ideal_gains(pro, con, alpha, k)),
                      exhaustive_ideal_dcg(pro, con, alpha, k), 1e-12)
              << "alpha=" << alpha << " pool=" << pro << "/" << con << " k=" << k;
        }
      }
    }
  }
}

TEST(AlphaNdcg, AlphaZeroReducesToBinaryNdcg) {
  for (const auto& pattern : generate_patterns(5)) {
    Fixture f(pattern, 20, 5);
    EXPECT_NEAR(alpha_ndcg_at_k(f.ranking, f.js(), {0.0, 5}).value,
                ndcg_at_k(f.ranking, f.js(), 5).value, 1e-12);
  }
}

TEST(AlphaNdcg, AlphaZeroMixedRelevanceMatchesNdcg) {
  StanceMap stances;
  stances.insert("a", P);
  stances.insert("b", P);
  stances.insert("c", P);
  const JudgmentSet js("t", {{"t", "a", 1}, {"t", "b", 0}, {"t", "c", 1}}, stances);
  const auto run = canonicalize_ranking("t", "s", {{"b", 1, 3}, {"a", 2, 2}, {"x", 3, 1}, {"c", 4, 0}});
  EXPECT_NEAR(alpha_ndcg_at_k(run, js, {0.0, 5}).value, ndcg_at_k(run, js, 5).value, 1e-12);
}

TEST(DiversityConfig, Validation) {
  EXPECT_THROW((DiversityConfig{1.5, 5}).validate(), ValidationError);
  EXPECT_THROW((DiversityConfig{0.5, 0}).validate(), ValidationError);
  EXPECT_NO_THROW((DiversityConfig{0.9, 5}).validate());
}

}  // namespace
}  // namespace fairarg
