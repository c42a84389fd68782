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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairarg {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input. Maps to exit code 1 in the CLI.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A diagnostic tied to a location in an input stream. Line and field are
// 1-based; field is 0 when the whole line is at fault.
class ParseError : public ValidationError {
 public:
  ParseError(std::string source, std::size_t line, std::size_t field,
             const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t field_;
};

// File could not be opened, read or written. Maps to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

// A topic whose population makes a metric undefined (no stance-labeled
// relevant documents, or a zero population share meeting a non-zero prefix
// share in the KL divergence).
class DegenerateTopicError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// ---------------------------------------------------------------------------
// Stance
// ---------------------------------------------------------------------------

enum class Stance : std::uint8_t { kPro, kCon, kUnknown };

std::string_view to_string(Stance stance);

// Case-insensitive PRO/CON. Anything else throws ValidationError.
Stance parse_stance(std::string_view token);

// PRO <-> CON; UNKNOWN stays UNKNOWN.
Stance opposite(Stance stance);

// Orders topic ids numerically when both are unsigned integers and
// lexicographically otherwise, so "2" sorts before "10".
struct TopicLess {
  bool operator()(const std::string& a, const std::string& b) const;
};

template <typename T>
using TopicMap = std::map<std::string, T, TopicLess>;

// Lookups for absent documents return Stance::kUnknown.
class StanceMap {
 public:
  StanceMap() = default;

  // Throws ValidationError when doc_id is already mapped to another stance.
  void insert(const std::string& doc_id, Stance stance);
  Stance lookup(const std::string& doc_id) const;
  bool contains(const std::string& doc_id) const;
  std::size_t size() const { return stances_.size(); }
  const std::map<std::string, Stance>& entries() const { return stances_; }

 private:
  std::map<std::string, Stance> stances_;
};

// ---------------------------------------------------------------------------
// Rankings
// ---------------------------------------------------------------------------

struct RankedItem {
  std::string doc_id;
  int rank = 0;
  double score = 0.0;
};

struct Ranking {
  std::string topic_id;
  std::string system_tag;
  std::vector<RankedItem> items;  // canonical order, ranks 1..n
};

// Sorts by descending score with ties broken by descending doc_id and
// rewrites ranks to 1..n. The stated ranks are ignored. Throws
// ValidationError on an empty list or a duplicate doc_id.
Ranking canonicalize_ranking(std::string topic_id, std::string system_tag,
                             std::vector<RankedItem> items);

// ---------------------------------------------------------------------------
// Judgments
// ---------------------------------------------------------------------------

struct Judgment {
  std::string topic_id;
  std::string doc_id;
  int grade = 0;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Relevance judgments of one topic joined with the stance labels of the
// judged documents. A document is relevant when grade >= threshold.
class JudgmentSet {
 public:
  JudgmentSet(std::string topic_id, const std::vector<Judgment>& judgments,
              const StanceMap& stances, int relevance_threshold = 1);

  const std::string& topic_id() const { return topic_id_; }
  int relevance_threshold() const { return threshold_; }

  // Grade of a judged document, nullopt when unjudged.
  std::optional<int> grade(const std::string& doc_id) const;
  bool is_relevant(const std::string& doc_id) const;
  // Stance of a judged document; kUnknown when unjudged or unlabeled.
  Stance stance(const std::string& doc_id) const;

  // N: judged documents with grade >= threshold.
  int relevant_count() const { return relevant_count_; }
  // Relevant documents carrying the given stance label.
  int relevant_with_stance(Stance stance) const;
  int relevant_labeled_count() const { return relevant_pro_ + relevant_con_; }

  // All judged grades, ordered by doc_id.
  const std::map<std::string, int>& grades() const { return grades_; }

 private:
  std::string topic_id_;
  int threshold_;
  std::map<std::string, int> grades_;
  std::map<std::string, Stance> stances_;
  int relevant_count_ = 0;
  int relevant_pro_ = 0;
  int relevant_con_ = 0;
};

// ---------------------------------------------------------------------------
// Protected group assignment
// ---------------------------------------------------------------------------

struct ProtectedStrategy {
  enum class Kind : std::uint8_t { kMinority, kFixed, kMajority };

  Kind kind = Kind::kMinority;
  // Used by kFixed, and as the tie-break for kMinority / kMajority.
  Stance stance = Stance::kPro;

  static ProtectedStrategy minority(Stance tie_break = Stance::kPro) {
    return {Kind::kMinority, tie_break};
  }
  static ProtectedStrategy majority(Stance tie_break = Stance::kPro) {
    return {Kind::kMajority, tie_break};
  }
  static ProtectedStrategy fixed(Stance stance) { return {Kind::kFixed, stance}; }

  // "minority" | "majority" | "pro" | "con"
  static ProtectedStrategy parse(std::string_view text);
  std::string name() const;
};

struct GroupAssignment {
  std::string topic_id;
  Stance protected_stance = Stance::kPro;
  int protected_count = 0;    // |S+|
  int unprotected_count = 0;  // |S-|
  // Denominator of the population shares. Equals |S+| + |S-| unless the
  // strict-N population is requested, in which case it is N.
  int population = 0;
  ProtectedStrategy strategy;
};

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

enum class MetricId : std::uint8_t { kNdcg, kAlphaNdcg, kRnd, kRkl, kRrd, kCombined };

std::string_view to_string(MetricId metric);
// "ndcg" | "andcg" | "rnd" | "rkl" | "rrd" | "combined"
MetricId parse_metric(std::string_view name);
bool is_fairness_metric(MetricId metric);

struct MetricScore {
  MetricId metric = MetricId::kNdcg;
  std::string topic_id;
  int k = 0;
  double raw = 0.0;
  std::optional<double> normalized;  // rND / rKL / rRD only
};

}  // namespace fairarg
