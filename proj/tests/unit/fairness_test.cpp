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
#include <random>

#include "fairarg/fairness.hpp"
#include "fairarg/synthetic.hpp"

namespace fairarg {
namespace {

constexpr Stance P = Stance::kPro;
constexpr Stance C = Stance::kCon;

// Minority pool: 5 CON (protected), 20 PRO.
StancePrefix minority(std::vector<Stance> pattern) {
  return {flags_for(pattern, Stance::kCon), Population::labeled(5, 20)};
}

// Straight per-prefix recomputation, sharing nothing with the library.
struct Naive {
  static double w(int i) { return 1.0 / std::log2(i + 1.0); }

  static std::pair<int, int> counts(const StancePrefix& s, int i) {
    int plus = 0, minus = 0;
    for (int j = 0; j < i; ++j) {
      plus += s.flags[j] == GroupFlag::kProtected;
      minus += s.flags[j] == GroupFlag::kUnprotected;
    }
    return {plus, minus};
  }

  static double rnd(const StancePrefix& s, int k) {
    const double share = double(s.population.protected_count) / s.population.total;
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) sum += w(i) * std::abs(double(counts(s, i).first) / i - share);
    return sum;
  }

  static double rkl(const StancePrefix& s, int k) {
    const double q1 = double(s.population.protected_count) / s.population.total;
    const double q2 = double(s.population.unprotected_count) / s.population.total;
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      const auto [a, b] = counts(s, i);
      const double p1 = double(a) / i, p2 = double(b) / i;
      double d = 0.0;
      if (p1 > 0) d += p1 * std::log2(p1 / q1);
      if (p2 > 0) d += p2 * std::log2(p2 / q2);
      sum += w(i) * d;
    }
    return sum;
  }

  static double rrd(const StancePrefix& s, int k) {
    const auto frac = [](double n, double d) { return (n == 0 || d == 0) ? 0.0 : n / d; };
    const double r = frac(s.population.protected_count, s.population.unprotected_count);
    double sum = 0.0;
    for (int i = 1; i <= k; ++i) {
      const auto [a, b] = counts(s, i);
      sum += w(i) * std::abs(frac(a, b) - r);
    }
    return sum;
  }
};

TEST(Discount, LogTwo) {
  DiscountTable d(5);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
  EXPECT_NEAR(d[2], 0.63093, 1e-5);
  EXPECT_NEAR(d[3], 0.5, 1e-12);
  EXPECT_NEAR(d[4], 0.43068, 1e-5);
  EXPECT_NEAR(d[5], 0.38685, 1e-5);
}

TEST(Rnd, AllUnprotected) {
  EXPECT_NEAR(rnd_at_k(minority({P, P, P, P, P}), 5), 0.58969, 1e-5);
}

TEST(Rnd, LeadingProtected) {
  EXPECT_NEAR(rnd_at_k(minority({C, P, P, P, P}), 5), 1.07748, 1e-5);
}

TEST(Rnd, AllProtectedPopulationIsZero) {
  const StancePrefix s{flags_for(std::vector<Stance>(5, C), C), Population::labeled(5, 0)};
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(rnd_at_k(s, k), 0.0);
}

TEST(Rkl, AllUnprotected) {
  // log2(1 / 0.8) times the summed discounts 2.948459...
  EXPECT_NEAR(rkl_at_k(minority({P, P, P, P, P}), 5), 0.949192, 1e-6);
}

TEST(Rkl, AllProtectedIsMaximum) {
  EXPECT_NEAR(rkl_at_k(minority({C, C, C, C, C}), 5), 6.846110, 1e-6);
  const auto b = normalization_bounds(Population::labeled(5, 20), 5, MetricId::kRkl);
  EXPECT_NEAR(b.max_raw, 6.846110, 1e-6);
  EXPECT_EQ(normalize(rkl_at_k(minority({C, C, C, C, C}), 5), b), 1.0);
}

TEST(Rkl, PEqualsQIsZero) {
  const StancePrefix s{flags_for(std::vector<Stance>(5, C), C), Population::labeled(5, 0)};
  EXPECT_EQ(rkl_at_k(s, 5), 0.0);
}

TEST(Rkl, ZeroPopulationShareWithPositivePrefixIsDegenerate) {
  const StancePrefix s{flags_for(std::vector<Stance>{P, C}, C), Population::labeled(5, 0)};
  EXPECT_THROW(rkl_at_k(s, 2), DegenerateTopicError);
}

TEST(Rrd, AllUnprotected) {
  EXPECT_NEAR(rrd_at_k(minority({P, P, P, P, P}), 5), 0.73712, 1e-5);
}

TEST(Rrd, LeadingProtected) {
  EXPECT_NEAR(rrd_at_k(minority({C, P, P, P, P}), 5), 0.88409, 1e-5);
}

TEST(Rrd, ZeroRuleOnBothSides) {
  const StancePrefix s{flags_for(std::vector<Stance>(5, C), C), Population::labeled(5, 0)};
  EXPECT_EQ(rrd_at_k(s, 5), 0.0);
}

TEST(Fairness, KMustFitPrefix) {
  EXPECT_THROW(rnd_at_k(minority({P, P}), 3), ValidationError);
  EXPECT_THROW(rnd_at_k(minority({P, P}), 0), ValidationError);
}

TEST(Fairness, IncrementalMatchesNaiveOnAllSyntheticPatterns) {
  for (auto name : {SettingName::kMinority, SettingName::kProportionAgnostic, SettingName::kMajority}) {
    const auto setting = SyntheticSetting::standard(name);
    const int sp = setting.protected_stance == C ? setting.con_count : setting.pro_count;
    const int sm = setting.protected_stance == C ? setting.pro_count : setting.con_count;
    for (const auto& pattern : generate_patterns(5)) {
      const StancePrefix s{flags_for(pattern, setting.protected_stance), Population::labeled(sp, sm)};
      for (int k = 1; k <= 5; ++k) {
        EXPECT_NEAR(rnd_at_k(s, k), Naive::rnd(s, k), 1e-12);
        EXPECT_NEAR(rkl_at_k(s, k), Naive::rkl(s, k), 1e-12);
        EXPECT_NEAR(rrd_at_k(s, k), Naive::rrd(s, k), 1e-12);
      }
    }
  }
}

TEST(Fairness, LabelSwapSymmetry) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int sp = 1 + int(rng() % 30), sm = 1 + int(rng() % 30);
    const int k = 1 + int(rng() % 10);
    std::vector<GroupFlag> flags;
    for (int i = 0; i < k; ++i) flags.push_back(rng() % 2 ? GroupFlag::kProtected : GroupFlag::kUnprotected);
    const StancePrefix s{flags, Population::labeled(sp, sm)};
    EXPECT_EQ(rkl_at_k(s, k), rkl_at_k(s.swapped(), k));
    // rND measures the protected share only; swapping both the prefix and
    // the population mirrors every term.
    EXPECT_NEAR(rnd_at_k(s, k), rnd_at_k(s.swapped(), k), 1e-12);
  }
}

TEST(Bounds, BruteForceOverPatterns) {
  const Population pop = Population::labeled(5, 5);
  double lo = 1e300, hi = -1e300;
  for (const auto& pattern : generate_patterns(5)) {
    const double v = rnd_at_k({flags_for(pattern, P), pop}, 5);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const auto b = normalization_bounds(pop, 5, MetricId::kRnd);
  EXPECT_NEAR(b.min_raw, lo, 1e-12);
  EXPECT_NEAR(b.max_raw, hi, 1e-12);
}

TEST(Bounds, CapacityLimitsPatterns) {
  // One protected document only: at most one C in any feasible pattern.
  const Population pop = Population::labeled(1, 20);
  double hi = -1e300;
  for (const auto& pattern : generate_patterns(5)) {
    if (std::count(pattern.begin(), pattern.end(), C) > 1) continue;
    hi = std::max(hi, rnd_at_k({flags_for(pattern, C), pop}, 5));
  }
  EXPECT_NEAR(normalization_bounds(pop, 5, MetricId::kRnd).max_raw, hi, 1e-12);
}

TEST(Bounds, SingletonDomain) {
  const auto b = normalization_bounds(Population::labeled(0, 3), 3, MetricId::kRnd);
  EXPECT_EQ(b.min_raw, b.max_raw);
  EXPECT_EQ(normalize(b.min_raw, b), 0.0);
}

TEST(Bounds, RejectsLargeK) {
  EXPECT_THROW(normalization_bounds(Population::labeled(50, 50), 13, MetricId::kRnd), ValidationError);
}

TEST(Normalize, Endpoints) {
  const Bounds b{0.5, 2.5};
  EXPECT_EQ(normalize(2.5, b), 1.0);
  EXPECT_EQ(normalize(0.5, b), 0.0);
  EXPECT_DOUBLE_EQ(normalize(1.5, b), 0.5);
  EXPECT_THROW(normalize(3.0, b), Error);
}

TEST(Normalize, MinorityExtremes) {
  const auto b = normalization_bounds(Population::labeled(5, 20), 5, MetricId::kRkl);
  const double low = normalize(rkl_at_k(minority({P, P, P, P, P}), 5), b);
  EXPECT_GT(low, 0.0);
  EXPECT_LT(low, 0.2);
}

TEST(Normalize, AllNormalizedScoresInUnitInterval) {
  for (int sp = 1; sp <= 6; ++sp) {
    for (int sm = 1; sm <= 6; ++sm) {
      if (sp + sm < 5) continue;
      const Population pop = Population::labeled(sp, sm);
      for (auto metric : {MetricId::kRnd, MetricId::kRkl, MetricId::kRrd}) {
        const auto b = normalization_bounds(pop, 5, metric);
        for (const auto& pattern : generate_patterns(5)) {
          if (std::count(pattern.begin(), pattern.end(), C) > sp) continue;
          if (std::count(pattern.begin(), pattern.end(), P) > sm) continue;
          const double n = normalize(fairness_at_k(metric, {flags_for(pattern, C), pop}, 5), b);
          EXPECT_GE(n, 0.0);
          EXPECT_LE(n, 1.0);
        }
      }
    }
  }
}

TEST(BuildPrefix, UnlabeledAndRelevantOnly) {
  StanceMap stances;
  stances.insert("a", P);
  stances.insert("b", C);
  stances.insert("c", C);
  const JudgmentSet js("t", {{"t", "a", 1}, {"t", "b", 1}, {"t", "c", 0}}, stances);
  const auto ranking = canonicalize_ranking("t", "s", {{"a", 1, 4}, {"c", 2, 3}, {"x", 3, 2}, {"b", 4, 1}});
  GroupAssignment g{"t", C, 1, 1, 2, ProtectedStrategy::fixed(C)};

  const auto all = build_prefix(ranking, stances, g, 5, MembershipMode::kAll, &js);
  ASSERT_EQ(all.flags.size(), 4u);
  EXPECT_EQ(all.flags[0], GroupFlag::kUnprotected);
  EXPECT_EQ(all.flags[1], GroupFlag::kProtected);
  EXPECT_EQ(all.flags[2], GroupFlag::kUnlabeled);
  EXPECT_EQ(all.flags[3], GroupFlag::kProtected);

  const auto rel = build_prefix(ranking, stances, g, 5, MembershipMode::kRelevantOnly, &js);
  EXPECT_EQ(rel.flags[1], GroupFlag::kUnlabeled);
}

TEST(NormalizationMode, Names) {
  for (auto m : {NormalizationMode::kPatternSpace, NormalizationMode::kPatternRange,
                 NormalizationMode::kCorpus, NormalizationMode::kNone}) {
    EXPECT_EQ(parse_normalization_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_normalization_mode("zscore"), ValidationError);
}

}  // namespace
}  // namespace fairarg
