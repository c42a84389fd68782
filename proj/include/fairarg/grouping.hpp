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

#include <utility>

#include "fairarg/model.hpp"

namespace fairarg {

enum class PopulationMode : std::uint8_t {
  // Shares are taken over the stance-labeled relevant documents.
  kLabeled,
  // Shares are taken over all N relevant documents, so unlabeled relevant
  // documents dilute both groups.
  kStrict,
};

// Picks the protected stance of a topic. Minority and majority ties go to
// strategy.stance (PRO by default). Throws DegenerateTopicError when the
// topic has no stance-labeled relevant document.
GroupAssignment assign_protected(const JudgmentSet& judgments, ProtectedStrategy strategy,
                                 PopulationMode mode = PopulationMode::kLabeled);

// Same decision from raw counts; used by the synthetic generator and tests.
GroupAssignment assign_protected(const std::string& topic_id, int pro_count, int con_count,
                                 ProtectedStrategy strategy, int population = -1);

// (|S+| / population, |S-| / population).
std::pair<double, double> population_proportions(const GroupAssignment& assignment);

}  // namespace fairarg
