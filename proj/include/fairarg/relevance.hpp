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

#include <vector>

#include "fairarg/model.hpp"

namespace fairarg {

struct DiversityConfig {
  double alpha = 0.5;
  int k = 5;

  // Throws ValidationError unless 0 <= alpha <= 1 and k >= 1.
  void validate() const;
};

// A score plus a flag raised when the ideal gain is zero (the score is then
// reported as 0).
struct RelevanceScore {
  double value = 0.0;
  bool zero_ideal = false;
};

// Graded nDCG@k: gain = grade (unjudged and negative grades count 0),
// discount 1 / log2(i + 1), ideal from all judged grades sorted descending.
RelevanceScore ndcg_at_k(const Ranking& ranking, const JudgmentSet& judgments, int k);

// Per-rank alpha-nDCG gains with stances as the two subtopics. A document
// gains (1 - alpha)^c where c counts earlier relevant documents of the same
// stance. Non-relevant and unlabeled documents gain 0.
std::vector<double> alpha_gain_vector(const Ranking& ranking, const JudgmentSet& judgments,
                                      double alpha, int k);

// Ideal gains built greedily from a pool of relevant labeled documents. At
// each rank the stance with the larger marginal gain wins; ties prefer the
// stance with more documents left, then PRO. The vector is padded with
// zeros once the pool is exhausted.
std::vector<double> greedy_ideal_gains(int pro_pool, int con_pool, double alpha, int k);

// Best discounted gain over every feasible stance sequence of length
// min(k, pool). Exponential; k <= 12.
double exhaustive_ideal_dcg(int pro_pool, int con_pool, double alpha, int k);

double discounted_gain(const std::vector<double>& gains);

RelevanceScore alpha_ndcg_at_k(const Ranking& ranking, const JudgmentSet& judgments,
                               const DiversityConfig& config);

}  // namespace fairarg
