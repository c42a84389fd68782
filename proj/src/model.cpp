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

#include "fairarg/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace fairarg {

namespace {

std::string upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, std::size_t field,
                       const std::string& what)
    : ValidationError(source + ":" + std::to_string(line) +
                      (field > 0 ? " field " + std::to_string(field) : std::string()) +
                      ": " + what),
      source_(std::move(source)),
      line_(line),
      field_(field) {}

std::string_view to_string(Stance stance) {
  switch (stance) {
    case Stance::kPro:
      return "PRO";
    case Stance::kCon:
      return "CON";
    case Stance::kUnknown:
      break;
  }
  return "UNKNOWN";
}

Stance parse_stance(std::string_view token) {
  const std::string u = upper(token);
  if (u == "PRO") return Stance::kPro;
  if (u == "CON") return Stance::kCon;
  throw ValidationError("unrecognized stance token '" + std::string(token) +
                        "' (expected PRO or CON)");
}

Stance opposite(Stance stance) {
  switch (stance) {
    case Stance::kPro:
      return Stance::kCon;
    case Stance::kCon:
      return Stance::kPro;
    case Stance::kUnknown:
      break;
  }
  return Stance::kUnknown;
}

bool TopicLess::operator()(const std::string& a, const std::string& b) const {
  if (all_digits(a) && all_digits(b)) {
    // Compare by magnitude without overflowing: strip leading zeros, then
    // longer is larger.
    auto strip = [](const std::string& s) {
      const auto pos = s.find_first_not_of('0');
      return pos == std::string::npos ? std::string_view("0")
                                      : std::string_view(s).substr(pos);
    };
    const auto sa = strip(a);
    const auto sb = strip(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

void StanceMap::insert(const std::string& doc_id, Stance stance) {
  if (stance == Stance::kUnknown) {
    throw ValidationError("cannot store UNKNOWN stance for '" + doc_id + "'");
  }
  const auto [it, inserted] = stances_.emplace(doc_id, stance);
  if (!inserted && it->second != stance) {
    throw ValidationError("conflicting stance labels for document '" + doc_id + "'");
  }
}

Stance StanceMap::lookup(const std::string& doc_id) const {
  const auto it = stances_.find(doc_id);
  return it == stances_.end() ? Stance::kUnknown : it->second;
}

bool StanceMap::contains(const std::string& doc_id) const {
  return stances_.count(doc_id) != 0;
}

Ranking canonicalize_ranking(std::string topic_id, std::string system_tag,
                             std::vector<RankedItem> items) {
  if (items.empty()) {
    throw ValidationError("empty ranking for topic '" + topic_id + "'");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.doc_id).second) {
      throw ValidationError("duplicate document '" + item.doc_id + "' in topic '" +
                            topic_id + "'");
    }
  }
  std::sort(items.begin(), items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id > b.doc_id;
  });
  for (std::size_t i = 0; i < items.size(); ++i) {
    items[i].rank = static_cast<int>(i) + 1;
  }
  return Ranking{std::move(topic_id), std::move(system_tag), std::move(items)};
}

JudgmentSet::JudgmentSet(std::string topic_id, const std::vector<Judgment>& judgments,
                         const StanceMap& stances, int relevance_threshold)
    : topic_id_(std::move(topic_id)), threshold_(relevance_threshold) {
  for (const auto& j : judgments) {
    if (j.topic_id != topic_id_) {
      throw ValidationError("judgment for topic '" + j.topic_id + "' given to topic '" +
                            topic_id_ + "'");
    }
    const auto [it, inserted] = grades_.emplace(j.doc_id, j.grade);
    if (!inserted && it->second != j.grade) {
      throw ValidationError("conflicting grades for document '" + j.doc_id +
                            "' in topic '" + topic_id_ + "'");
    }
    if (!inserted) continue;
    const Stance s = stances.lookup(j.doc_id);
    if (s != Stance::kUnknown) stances_.emplace(j.doc_id, s);
    if (j.grade >= threshold_) {
      ++relevant_count_;
      if (s == Stance::kPro) ++relevant_pro_;
      if (s == Stance::kCon) ++relevant_con_;
    }
  }
}

std::optional<int> JudgmentSet::grade(const std::string& doc_id) const {
  const auto it = grades_.find(doc_id);
  if (it == grades_.end()) return std::nullopt;
  return it->second;
}

bool JudgmentSet::is_relevant(const std::string& doc_id) const {
  const auto g = grade(doc_id);
  return g.has_value() && *g >= threshold_;
}

Stance JudgmentSet::stance(const std::string& doc_id) const {
  const auto it = stances_.find(doc_id);
  return it == stances_.end() ? Stance::kUnknown : it->second;
}

int JudgmentSet::relevant_with_stance(Stance stance) const {
  switch (stance) {
    case Stance::kPro:
      return relevant_pro_;
    case Stance::kCon:
      return relevant_con_;
    case Stance::kUnknown:
      break;
  }
  return relevant_count_ - relevant_pro_ - relevant_con_;
}

ProtectedStrategy ProtectedStrategy::parse(std::string_view text) {
  const std::string u = upper(text);
  if (u == "MINORITY") return minority();
  if (u == "MAJORITY") return majority();
  if (u == "PRO") return fixed(Stance::kPro);
  if (u == "CON") return fixed(Stance::kCon);
  throw ValidationError("unknown protected-group strategy '" + std::string(text) +
                        "' (expected minority, majority, pro or con)");
}

std::string ProtectedStrategy::name() const {
  switch (kind) {
    case Kind::kMinority:
      return "minority";
    case Kind::kMajority:
      return "majority";
    case Kind::kFixed:
      break;
  }
  return stance == Stance::kCon ? "con" : "pro";
}

std::string_view to_string(MetricId metric) {
  switch (metric) {
    case MetricId::kNdcg:
      return "ndcg";
    case MetricId::kAlphaNdcg:
      return "andcg";
    case MetricId::kRnd:
      return "rnd";
    case MetricId::kRkl:
      return "rkl";
    case MetricId::kRrd:
      return "rrd";
    case MetricId::kCombined:
      break;
  }
  return "combined";
}

MetricId parse_metric(std::string_view name) {
  for (auto m : {MetricId::kNdcg, MetricId::kAlphaNdcg, MetricId::kRnd, MetricId::kRkl,
                 MetricId::kRrd, MetricId::kCombined}) {
    if (to_string(m) == name) return m;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

bool is_fairness_metric(MetricId metric) {
  return metric == MetricId::kRnd || metric == MetricId::kRkl || metric == MetricId::kRrd;
}

}  // namespace fairarg
