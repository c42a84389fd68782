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

#include "fairarg/synthetic.hpp"

#include <json.hpp>

#include "fairarg/version.hpp"

namespace fairarg {

namespace {

std::string doc_id(int topic, Stance stance, int index) {
  return "t" + std::to_string(topic) + (stance == Stance::kPro ? "-pro-" : "-con-") +
         std::to_string(index);
}

}  // namespace

SyntheticSetting SyntheticSetting::standard(SettingName name) {
  switch (name) {
    case SettingName::kMinority:
      return {name, 20, 5, Stance::kCon};
    case SettingName::kProportionAgnostic:
      return {name, 5, 5, Stance::kPro};
    case SettingName::kMajority:
      break;
  }
  return {SettingName::kMajority, 20, 5, Stance::kPro};
}

SyntheticSetting SyntheticSetting::parse(std::string_view text) {
  if (text == "minority") return standard(SettingName::kMinority);
  if (text == "agnostic") return standard(SettingName::kProportionAgnostic);
  if (text == "majority") return standard(SettingName::kMajority);
  throw ValidationError("unknown setting '" + std::string(text) +
                        "' (expected minority, agnostic or majority)");
}

std::string SyntheticSetting::label() const {
  switch (name) {
    case SettingName::kMinority:
      return "minority";
    case SettingName::kProportionAgnostic:
      return "agnostic";
    case SettingName::kMajority:
      break;
  }
  return "majority";
}

ProtectedStrategy SyntheticSetting::strategy() const {
  return ProtectedStrategy::fixed(protected_stance);
}

std::vector<Stance> pattern_for_topic(int topic, int k) {
  if (k < 1 || k > 20) throw ValidationError("pattern length must be in [1, 20]");
  if (topic < 1 || topic > (1 << k)) {
    throw ValidationError("topic " + std::to_string(topic) + " outside [1, 2^" +
                          std::to_string(k) + "]");
  }
  const unsigned bits = static_cast<unsigned>(topic - 1);
  std::vector<Stance> pattern;
  pattern.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const bool con = (bits >> (k - 1 - j)) & 1U;
    pattern.push_back(con ? Stance::kCon : Stance::kPro);
  }
  return pattern;
}

std::vector<std::vector<Stance>> generate_patterns(int k) {
  if (k < 1 || k > 20) throw ValidationError("pattern length must be in [1, 20]");
  std::vector<std::vector<Stance>> patterns;
  patterns.reserve(std::size_t{1} << k);
  for (int t = 1; t <= (1 << k); ++t) patterns.push_back(pattern_for_topic(t, k));
  return patterns;
}

SyntheticCollection build_synthetic(const SyntheticSetting& setting, int k) {
  if (setting.pro_count < k || setting.con_count < k) {
    throw ValidationError("pool (" + std::to_string(setting.pro_count) + ", " +
                          std::to_string(setting.con_count) +
                          ") cannot realize every pattern of length " + std::to_string(k));
  }
  SyntheticCollection c;
  c.setting = setting;
  c.k = k;
  c.run.system_tag = "synthetic";

  const auto patterns = generate_patterns(k);
  for (int t = 1; t <= static_cast<int>(patterns.size()); ++t) {
    const std::string topic = std::to_string(t);
    auto& judgments = c.qrels[topic];
    for (int i = 1; i <= setting.pro_count; ++i) {
      judgments.push_back({topic, doc_id(t, Stance::kPro, i), 1});
      c.stances.insert(doc_id(t, Stance::kPro, i), Stance::kPro);
    }
    for (int i = 1; i <= setting.con_count; ++i) {
      judgments.push_back({topic, doc_id(t, Stance::kCon, i), 1});
      c.stances.insert(doc_id(t, Stance::kCon, i), Stance::kCon);
    }

    std::vector<RankedItem> items;
    int next_pro = 1;
    int next_con = 1;
    const auto& pattern = patterns[static_cast<std::size_t>(t - 1)];
    for (int r = 1; r <= k; ++r) {
      const Stance s = pattern[static_cast<std::size_t>(r - 1)];
      const int index = s == Stance::kPro ? next_pro++ : next_con++;
      items.push_back({doc_id(t, s, index), r, static_cast<double>(k + 1 - r)});
    }
    c.run.topics.emplace(topic, canonicalize_ranking(topic, c.run.system_tag, std::move(items)));
  }
  return c;
}

std::string SyntheticCollection::manifest_json() const {
  nlohmann::ordered_json m;
  m["tool"] = "fairarg";
  m["version"] = kVersion;
  m["setting"] = setting.label();
  m["k"] = k;
  m["pool"] = {{"PRO", setting.pro_count}, {"CON", setting.con_count}};
  m["protected"] = std::string(to_string(setting.protected_stance));
  m["relevance"] = "binary";
  m["mapping"] = "topic t = binary expansion of t-1, most significant bit first, 1 = CON";
  m["files"] = {{"run", "run.txt"}, {"qrels", "qrels.txt"}, {"stances", "stances.tsv"}};
  auto& topics = m["topics"];
  topics = nlohmann::ordered_json::array();
  const int n = 1 << k;
  for (int t = 1; t <= n; ++t) {
    std::string pattern;
    for (Stance s : pattern_for_topic(t, k)) pattern += s == Stance::kPro ? 'P' : 'C';
    topics.push_back({{"topic", std::to_string(t)}, {"pattern", pattern}});
  }
  return m.dump(2) + "\n";
}

}  // namespace fairarg
