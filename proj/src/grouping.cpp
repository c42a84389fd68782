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

#include "fairarg/grouping.hpp"

namespace fairarg {

GroupAssignment assign_protected(const std::string& topic_id, int pro_count, int con_count,
                                 ProtectedStrategy strategy, int population) {
  if (pro_count < 0 || con_count < 0) {
    throw ValidationError("negative stance counts for topic '" + topic_id + "'");
  }
  if (pro_count + con_count == 0) {
    throw DegenerateTopicError("topic '" + topic_id +
                               "' has no stance-labeled relevant documents");
  }
  Stance chosen = strategy.stance;
  switch (strategy.kind) {
    case ProtectedStrategy::Kind::kMinority:
      if (pro_count != con_count) chosen = pro_count < con_count ? Stance::kPro : Stance::kCon;
      break;
    case ProtectedStrategy::Kind::kMajority:
      if (pro_count != con_count) chosen = pro_count > con_count ? Stance::kPro : Stance::kCon;
      break;
    case ProtectedStrategy::Kind::kFixed:
      break;
  }
  if (chosen == Stance::kUnknown) {
    throw ValidationError("protected stance must be PRO or CON");
  }

  GroupAssignment a;
  a.topic_id = topic_id;
  a.protected_stance = chosen;
  a.protected_count = chosen == Stance::kPro ? pro_count : con_count;
  a.unprotected_count = chosen == Stance::kPro ? con_count : pro_count;
  a.population = population < 0 ? pro_count + con_count : population;
  if (a.population < pro_count + con_count) {
    throw ValidationError("population smaller than labeled relevant documents for topic '" +
                          topic_id + "'");
  }
  a.strategy = strategy;
  return a;
}

GroupAssignment assign_protected(const JudgmentSet& judgments, ProtectedStrategy strategy,
                                 PopulationMode mode) {
  const int population =
      mode == PopulationMode::kStrict ? judgments.relevant_count() : -1;
  return assign_protected(judgments.topic_id(), judgments.relevant_with_stance(Stance::kPro),
                          judgments.relevant_with_stance(Stance::kCon), strategy, population);
}

std::pair<double, double> population_proportions(const GroupAssignment& a) {
  if (a.population < 1) {
    throw DegenerateTopicError("empty population for topic '" + a.topic_id + "'");
  }
  const double n = a.population;
  return {a.protected_count / n, a.unprotected_count / n};
}

}  // namespace fairarg
