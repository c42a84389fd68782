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

#include "fairarg/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>

namespace fairarg {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;  // 1 / ln 2
constexpr double kNormalizeTolerance = 1e-9;

// x * log2(x / q) with the 0 log 0 = 0 convention.
double kl_component(double x, double q, const Population& pop) {
  if (x <= 0.0) return 0.0;
  if (q <= 0.0) {
    throw DegenerateTopicError("population share is 0 for a group present in the ranking "
                               "(|S+|=" + std::to_string(pop.protected_count) +
                               ", |S-|=" + std::to_string(pop.unprotected_count) + ")");
  }
  return x * std::log2(x / q);
}

// Ratio with the zero rule: 0 when numerator or denominator is 0.
double zeroed_ratio(int num, int den) {
  if (num == 0 || den == 0) return 0.0;
  return static_cast<double>(num) / den;
}

void check_cutoff(const StancePrefix& prefix, int k) {
  if (k < 1 || k > static_cast<int>(prefix.flags.size())) {
    throw ValidationError("cutoff " + std::to_string(k) + " outside prefix of length " +
                          std::to_string(prefix.flags.size()));
  }
  if (prefix.population.total < 1) {
    throw DegenerateTopicError("empty population");
  }
}

template <typename Term>
double discounted_sum(const StancePrefix& prefix, int k, Term&& term) {
  check_cutoff(prefix, k);
  const DiscountTable discount(k);
  int plus = 0;
  int minus = 0;
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    switch (prefix.flags[static_cast<std::size_t>(i - 1)]) {
      case GroupFlag::kProtected:
        ++plus;
        break;
      case GroupFlag::kUnprotected:
        ++minus;
        break;
      case GroupFlag::kUnlabeled:
        break;
    }
    sum += discount[i] * term(plus, minus, i);
  }
  return sum;
}

// Depth-first enumeration of feasible patterns, tracking the running sum.
struct Enumerator {
  const Population& pop;
  MetricId metric;
  int k;
  bool include_unlabeled;
  bool capacity_limited;
  DiscountTable discount;
  Bounds bounds{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
  bool any = false;

  void visit(int depth, int plus, int minus, double sum) {
    if (depth == k) {
      any = true;
      bounds.min_raw = std::min(bounds.min_raw, sum);
      bounds.max_raw = std::max(bounds.max_raw, sum);
      return;
    }
    const int i = depth + 1;
    if (allows(plus, pop.protected_count)) step(i, plus + 1, minus, sum);
    if (allows(minus, pop.unprotected_count)) step(i, plus, minus + 1, sum);
    if (include_unlabeled) step(i, plus, minus, sum);
  }

  // Whether one more document of a group with `capacity` members fits.
  bool allows(int used, int capacity) const {
    if (capacity_limited) return used < capacity;
    return metric != MetricId::kRkl || capacity > 0;
  }

  void step(int i, int plus, int minus, double sum) {
    double term = 0.0;
    switch (metric) {
      case MetricId::kRnd:
        term = rnd_term(plus, i, pop);
        break;
      case MetricId::kRkl:
        term = rkl_term(plus, minus, i, pop);
        break;
      default:
        term = rrd_term(plus, minus, pop);
        break;
    }
    visit(i, plus, minus, sum + discount[i] * term);
  }
};

}  // namespace

Population Population::of(const GroupAssignment& a) {
  return {a.protected_count, a.unprotected_count, a.population};
}

Population Population::labeled(int protected_count, int unprotected_count) {
  return {protected_count, unprotected_count, protected_count + unprotected_count};
}

StancePrefix StancePrefix::swapped() const {
  StancePrefix out{flags, population.swapped()};
  for (auto& f : out.flags) {
    if (f == GroupFlag::kProtected) {
      f = GroupFlag::kUnprotected;
    } else if (f == GroupFlag::kUnprotected) {
      f = GroupFlag::kProtected;
    }
  }
  return out;
}

StancePrefix build_prefix(const Ranking& ranking, const StanceMap& stances,
                          const GroupAssignment& assignment, int k, MembershipMode members,
                          const JudgmentSet* judgments) {
  if (members == MembershipMode::kRelevantOnly && judgments == nullptr) {
    throw ValidationError("relevant-only membership needs judgments");
  }
  StancePrefix prefix;
  prefix.population = Population::of(assignment);
  const std::size_t depth = std::min(ranking.items.size(), static_cast<std::size_t>(std::max(k, 0)));
  prefix.flags.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    const auto& doc = ranking.items[i].doc_id;
    const Stance s = stances.lookup(doc);
    if (s == Stance::kUnknown ||
        (members == MembershipMode::kRelevantOnly && !judgments->is_relevant(doc))) {
      prefix.flags.push_back(GroupFlag::kUnlabeled);
    } else {
      prefix.flags.push_back(s == assignment.protected_stance ? GroupFlag::kProtected
                                                               : GroupFlag::kUnprotected);
    }
  }
  return prefix;
}

std::vector<GroupFlag> flags_for(std::span<const Stance> pattern, Stance protected_stance) {
  std::vector<GroupFlag> flags;
  flags.reserve(pattern.size());
  for (Stance s : pattern) {
    if (s == Stance::kUnknown) {
      flags.push_back(GroupFlag::kUnlabeled);
    } else {
      flags.push_back(s == protected_stance ? GroupFlag::kProtected : GroupFlag::kUnprotected);
    }
  }
  return flags;
}

DiscountTable::DiscountTable(int k) {
  if (k < 1) throw ValidationError("cutoff must be >= 1");
  weights_.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) weights_.push_back(1.0 / std::log2(i + 1.0));
}

double rnd_term(int plus, int depth, const Population& pop) {
  // |plus/depth - |S+|/total| over a common integer denominator, so that
  // relabeling the groups yields bit-identical terms.
  const std::int64_t num = static_cast<std::int64_t>(plus) * pop.total -
                           static_cast<std::int64_t>(pop.protected_count) * depth;
  return static_cast<double>(std::llabs(num)) /
         (static_cast<double>(depth) * static_cast<double>(pop.total));
}

double rkl_term(int plus, int minus, int depth, const Population& pop) {
  const double total = pop.total;
  double d = kl_component(static_cast<double>(plus) / depth, pop.protected_count / total, pop) +
             kl_component(static_cast<double>(minus) / depth, pop.unprotected_count / total, pop);
  // Generalized divergence for sub-normalized P or Q (unlabeled documents,
  // strict-N population): adds (sum Q - sum P) / ln 2 which keeps D >= 0.
  const bool p_complete = plus + minus == depth;
  const bool q_complete = pop.protected_count + pop.unprotected_count == pop.total;
  if (!p_complete || !q_complete) {
    d += ((pop.protected_count + pop.unprotected_count) / total -
          static_cast<double>(plus + minus) / depth) *
         kInvLn2;
  }
  return d;
}

double rrd_term(int plus, int minus, const Population& pop) {
  return std::abs(zeroed_ratio(plus, minus) -
                  zeroed_ratio(pop.protected_count, pop.unprotected_count));
}

double rnd_at_k(const StancePrefix& prefix, int k) {
  return discounted_sum(prefix, k,
                        [&](int plus, int, int i) { return rnd_term(plus, i, prefix.population); });
}

double rkl_at_k(const StancePrefix& prefix, int k) {
  return discounted_sum(prefix, k, [&](int plus, int minus, int i) {
    return rkl_term(plus, minus, i, prefix.population);
  });
}

double rrd_at_k(const StancePrefix& prefix, int k) {
  return discounted_sum(prefix, k, [&](int plus, int minus, int) {
    return rrd_term(plus, minus, prefix.population);
  });
}

double fairness_at_k(MetricId metric, const StancePrefix& prefix, int k) {
  switch (metric) {
    case MetricId::kRnd:
      return rnd_at_k(prefix, k);
    case MetricId::kRkl:
      return rkl_at_k(prefix, k);
    case MetricId::kRrd:
      return rrd_at_k(prefix, k);
    default:
      break;
  }
  throw ValidationError("'" + std::string(to_string(metric)) + "' is not a fairness metric");
}

Bounds normalization_bounds(const Population& population, int k, MetricId metric,
                            bool include_unlabeled, bool capacity_limited) {
  if (!is_fairness_metric(metric)) {
    throw ValidationError("'" + std::string(to_string(metric)) + "' is not a fairness metric");
  }
  const int limit = include_unlabeled ? 10 : 12;
  if (k < 1 || k > limit) {
    throw ValidationError("exhaustive bounds support 1 <= k <= " + std::to_string(limit) +
                          ", got " + std::to_string(k));
  }
  if (population.total < 1) throw DegenerateTopicError("empty population");

  Enumerator e{population, metric, k, include_unlabeled, capacity_limited, DiscountTable(k)};
  e.visit(0, 0, 0, 0.0);
  if (!e.any) {
    throw ValidationError("no stance pattern of length " + std::to_string(k) +
                          " is feasible for |S+|=" + std::to_string(population.protected_count) +
                          ", |S-|=" + std::to_string(population.unprotected_count));
  }
  return e.bounds;
}

double normalize(double raw, const Bounds& bounds) {
  if (raw < bounds.min_raw - kNormalizeTolerance || raw > bounds.max_raw + kNormalizeTolerance) {
    throw Error("raw score " + std::to_string(raw) + " outside normalization bounds [" +
                std::to_string(bounds.min_raw) + ", " + std::to_string(bounds.max_raw) + "]");
  }
  const double span = bounds.max_raw - bounds.min_raw;
  if (span <= 0.0) return 0.0;
  return std::clamp((raw - bounds.min_raw) / span, 0.0, 1.0);
}

NormalizationMode parse_normalization_mode(std::string_view text) {
  if (text == "pattern-space") return NormalizationMode::kPatternSpace;
  if (text == "pattern-range") return NormalizationMode::kPatternRange;
  if (text == "corpus") return NormalizationMode::kCorpus;
  if (text == "none") return NormalizationMode::kNone;
  throw ValidationError("unknown normalization mode '" + std::string(text) +
                        "' (expected pattern-space, pattern-range, corpus or none)");
}

std::string_view to_string(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::kPatternSpace:
      return "pattern-space";
    case NormalizationMode::kPatternRange:
      return "pattern-range";
    case NormalizationMode::kCorpus:
      return "corpus";
    case NormalizationMode::kNone:
      break;
  }
  return "none";
}

Bounds BoundsCache::get(const Population& population, int k, MetricId metric,
                        bool include_unlabeled, bool capacity_limited) {
  const Key key{population.protected_count, population.unprotected_count, population.total, k,
                metric, include_unlabeled, capacity_limited};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Bounds b = normalization_bounds(population, k, metric, include_unlabeled, capacity_limited);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, b);
  return b;
}

}  // namespace fairarg
