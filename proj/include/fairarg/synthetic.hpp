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

#include <string>
#include <vector>

#include "fairarg/ingest.hpp"
#include "fairarg/model.hpp"

namespace fairarg {

enum class SettingName : std::uint8_t { kMinority, kProportionAgnostic, kMajority };

// Ground-truth pool and protected stance of one controlled setting.
struct SyntheticSetting {
  SettingName name = SettingName::kMinority;
  int pro_count = 20;
  int con_count = 5;
  Stance protected_stance = Stance::kCon;

  // minority: (20, 5) protecting CON; agnostic: (5, 5) protecting PRO;
  // majority: (20, 5) protecting PRO.
  static SyntheticSetting standard(SettingName name);
  // "minority" | "agnostic" | "majority"
  static SyntheticSetting parse(std::string_view text);
  std::string label() const;
  ProtectedStrategy strategy() const;
};

// Topic t in [1, 2^k] is the binary expansion of t - 1, most significant
// bit first, where 1 means CON. Topic 1 is all PRO, topic 2^k all CON.
std::vector<Stance> pattern_for_topic(int topic, int k);

// All 2^k patterns in topic order. 1 <= k <= 20.
std::vector<std::vector<Stance>> generate_patterns(int k);

struct SyntheticCollection {
  SyntheticSetting setting;
  int k = 0;
  RunSet run;
  QrelsMap qrels;
  StanceMap stances;

  // Pattern, pool and protected stance, as written next to the files.
  std::string manifest_json() const;
};

// One topic per pattern. Every topic judges pro_count PRO and con_count CON
// documents at grade 1; the run ranks k of them to realize the pattern,
// scoring rank r with k + 1 - r. Throws ValidationError when a pool holds
// fewer than k documents of either stance.
SyntheticCollection build_synthetic(const SyntheticSetting& setting, int k);

}  // namespace fairarg
