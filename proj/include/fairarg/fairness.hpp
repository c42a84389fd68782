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

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "fairarg/model.hpp"

namespace fairarg {

// Group membership of one ranked document.
enum class GroupFlag : std::uint8_t { kProtected, kUnprotected, kUnlabeled };

// Population the prefixes are compared against: |S+|, |S-| and the
// denominator of the shares (|S+| + |S-| by default, N in strict mode).
struct Population {
  int protected_count = 0;
  int unprotected_count = 0;
  int total = 0;

  static Population of(const GroupAssignment& assignment);
  // total = protected + unprotected
  static Population labeled(int protected_count, int unprotected_count);
  Population swapped() const { return {unprotected_count, protected_count, total}; }

  friend auto operator<=>(const Population&, const Population&) = default;
};

// Top-k group flags of a ranking plus the population they are judged
// against. Documents missing from the stance map are kUnlabeled.
struct StancePrefix {
  std::vector<GroupFlag> flags;
  Population population;

  StancePrefix swapped() const;
};

enum class MembershipMode : std::uint8_t {
  kAll,           // membership by stance label alone
  kRelevantOnly,  // non-relevant documents count as unlabeled
};

StancePrefix build_prefix(const Ranking& ranking, const StanceMap& stances,
                          const GroupAssignment& assignment, int k,
                          MembershipMode members = MembershipMode::kAll,
                          const JudgmentSet* judgments = nullptr);

// Flags for a stance pattern under the given protected stance.
std::vector<GroupFlag> flags_for(std::span<const Stance> pattern, Stance protected_stance);

// w_i = 1 / log2(i + 1), i = 1..k.
class DiscountTable {
 public:
  explicit DiscountTable(int k);

  // 1-based
  double operator[](int rank) const { return weights_[static_cast<std::size_t>(rank - 1)]; }
  int size() const { return static_cast<int>(weights_.size()); }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// Per-prefix terms, exposed so that enumeration and tests share them.
// `protected_in_prefix` / `unprotected_in_prefix` count flags among the
// first `depth` documents.
double rnd_term(int protected_in_prefix, int depth, const Population& population);
double rkl_term(int protected_in_prefix, int unprotected_in_prefix, int depth,
                const Population& population);
double rrd_term(int protected_in_prefix, int unprotected_in_prefix, const Population& population);

// Discounted sums over every cutoff 1..k. Require 1 <= k <= prefix length.
double rnd_at_k(const StancePrefix& prefix, int k);
// Throws DegenerateTopicError when a population share is 0 but the prefix
// share of that group is positive.
double rkl_at_k(const StancePrefix& prefix, int k);
double rrd_at_k(const StancePrefix& prefix, int k);

// Dispatches on kRnd / kRkl / kRrd.
double fairness_at_k(MetricId metric, const StancePrefix& prefix, int k);

struct Bounds {
  double min_raw = 0.0;
  double max_raw = 0.0;
};

// Exact min and max of the raw metric over every stance pattern of length k
// that the population can realize. With `capacity_limited` a pattern may
// hold no more protected documents than |S+| and no more unprotected than
// |S-|; without it every pattern counts except those that would make rKL
// degenerate. With `include_unlabeled` the pattern alphabet also contains
// kUnlabeled, which is never capacity-limited. Throws ValidationError when
// k > 12 (10 with unlabeled) or when no pattern is feasible.
Bounds normalization_bounds(const Population& population, int k, MetricId metric,
                            bool include_unlabeled = false, bool capacity_limited = true);

// (raw - min) / (max - min), or 0 when max == min. Throws Error when raw
// leaves [min, max] by more than 1e-9.
double normalize(double raw, const Bounds& bounds);

enum class NormalizationMode : std::uint8_t {
  kPatternSpace,  // [0, max over feasible patterns]
  kPatternRange,  // [min, max] over feasible patterns
  kCorpus,        // [min, max] over the observed scores
  kNone,
};

NormalizationMode parse_normalization_mode(std::string_view text);
std::string_view to_string(NormalizationMode mode);

// Thread-safe memo over normalization_bounds.
class BoundsCache {
 public:
  Bounds get(const Population& population, int k, MetricId metric, bool include_unlabeled,
             bool capacity_limited);

 private:
  using Key = std::tuple<int, int, int, int, MetricId, bool, bool>;
  std::mutex mutex_;
  std::map<Key, Bounds> cache_;
};

}  // namespace fairarg
