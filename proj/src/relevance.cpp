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

#include "fairarg/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fairarg/fairness.hpp"

namespace fairarg {

namespace {

double novelty(double alpha, int seen) { return std::pow(1.0 - alpha, seen); }

void check_k(int k) {
  if (k < 1) throw ValidationError("cutoff must be >= 1, got " + std::to_string(k));
}

}  // namespace

void DiversityConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  check_k(k);
}

double discounted_gain(const std::vector<double>& gains) {
  if (gains.empty()) return 0.0;
  const DiscountTable discount(static_cast<int>(gains.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    sum += discount[static_cast<int>(i) + 1] * gains[i];
  }
  return sum;
}

RelevanceScore ndcg_at_k(const Ranking& ranking, const JudgmentSet& judgments, int k) {
  check_k(k);
  std::vector<double> gains;
  const std::size_t depth = std::min(ranking.items.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < depth; ++i) {
    const auto g = judgments.grade(ranking.items[i].doc_id);
    gains.push_back(g ? std::max(*g, 0) : 0);
  }

  std::vector<double> ideal;
  for (const auto& [doc, grade] : judgments.grades()) {
    if (grade > 0) ideal.push_back(grade);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  if (ideal.size() > static_cast<std::size_t>(k)) ideal.resize(static_cast<std::size_t>(k));

  const double idcg = discounted_gain(ideal);
  if (idcg <= 0.0) return {0.0, true};
  return {discounted_gain(gains) / idcg, false};
}

std::vector<double> alpha_gain_vector(const Ranking& ranking, const JudgmentSet& judgments,
                                      double alpha, int k) {
  DiversityConfig{alpha, k}.validate();
  std::vector<double> gains;
  int seen_pro = 0;
  int seen_con = 0;
  const std::size_t depth = std::min(ranking.items.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < depth; ++i) {
    const auto& doc = ranking.items[i].doc_id;
    const Stance s = judgments.stance(doc);
    if (!judgments.is_relevant(doc) || s == Stance::kUnknown) {
      gains.push_back(0.0);
    } else if (s == Stance::kPro) {
      gains.push_back(novelty(alpha, seen_pro++));
    } else {
      gains.push_back(novelty(alpha, seen_con++));
    }
  }
  return gains;
}

std::vector<double> greedy_ideal_gains(int pro_pool, int con_pool, double alpha, int k) {
  DiversityConfig{alpha, k}.validate();
  std::vector<double> gains;
  int left_pro = pro_pool;
  int left_con = con_pool;
  int seen_pro = 0;
  int seen_con = 0;
  for (int i = 0; i < k; ++i) {
    if (left_pro == 0 && left_con == 0) {
      gains.push_back(0.0);
      continue;
    }
    bool take_pro;
    if (left_con == 0) {
      take_pro = true;
    } else if (left_pro == 0) {
      take_pro = false;
    } else {
      const double g_pro = novelty(alpha, seen_pro);
      const double g_con = novelty(alpha, seen_con);
      if (g_pro != g_con) {
        take_pro = g_pro > g_con;
      } else {
        take_pro = left_pro >= left_con;
      }
    }
    if (take_pro) {
      gains.push_back(novelty(alpha, seen_pro++));
      --left_pro;
    } else {
      gains.push_back(novelty(alpha, seen_con++));
      --left_con;
    }
  }
  return gains;
}

double exhaustive_ideal_dcg(int pro_pool, int con_pool, double alpha, int k) {
  DiversityConfig{alpha, k}.validate();
  if (k > 12) throw ValidationError("exhaustive ideal supports k <= 12");
  const int depth = std::min(k, pro_pool + con_pool);
  const DiscountTable discount(k);
  double best = 0.0;
  std::function<void(int, int, int, double)> visit = [&](int i, int pro, int con, double sum) {
    if (i == depth) {
      best = std::max(best, sum);
      return;
    }
    if (pro < pro_pool) visit(i + 1, pro + 1, con, sum + discount[i + 1] * novelty(alpha, pro));
    if (con < con_pool) visit(i + 1, pro, con + 1, sum + discount[i + 1] * novelty(alpha, con));
  };
  visit(0, 0, 0, 0.0);
  return best;
}

RelevanceScore alpha_ndcg_at_k(const Ranking& ranking, const JudgmentSet& judgments,
                               const DiversityConfig& config) {
  config.validate();
  const double dcg = discounted_gain(alpha_gain_vector(ranking, judgments, config.alpha, config.k));
  const double ideal =
      discounted_gain(greedy_ideal_gains(judgments.relevant_with_stance(Stance::kPro),
                                         judgments.relevant_with_stance(Stance::kCon),
                                         config.alpha, config.k));
  if (ideal <= 0.0) return {0.0, true};
  return {dcg / ideal, false};
}

}  // namespace fairarg
