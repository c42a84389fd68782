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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairarg/model.hpp"

namespace fairarg {

// One run file: a single system's canonicalized rankings keyed by topic.
struct RunSet {
  std::string system_tag;
  TopicMap<Ranking> topics;
};

using QrelsMap = TopicMap<std::vector<Judgment>>;

// Six whitespace-separated fields per line: topic Q0 docid rank score tag.
// Blank lines are skipped. `source` names the stream in diagnostics.
RunSet parse_run(std::istream& in, const std::string& source = "<run>");

// Four fields per line: topic 0 docid grade. Repeating a (topic, doc) pair
// with the same grade is accepted; a different grade is an error.
QrelsMap parse_qrels(std::istream& in, const std::string& source = "<qrels>");

// Two fields per line: docid stance.
StanceMap parse_stances(std::istream& in, const std::string& source = "<stances>");

RunSet read_run_file(const std::filesystem::path& path);
QrelsMap read_qrels_file(const std::filesystem::path& path);
StanceMap read_stance_file(const std::filesystem::path& path);

// Emitters use single spaces (tab for stances) and "\n" line ends. Scores
// are printed with six significant digits.
void write_run(std::ostream& out, const RunSet& run);
void write_qrels(std::ostream& out, const QrelsMap& qrels);
void write_stances(std::ostream& out, const StanceMap& stances);

struct UnknownStanceDoc {
  std::string system_tag;
  std::string topic_id;
  std::string doc_id;
};

// Runs joined with ground truth. Topics retrieved but absent from the qrels
// are listed in `excluded_topics` and dropped from `runs`.
struct Collection {
  std::vector<RunSet> runs;
  TopicMap<JudgmentSet> judgments;
  StanceMap stances;
  std::vector<std::string> excluded_topics;
  std::vector<UnknownStanceDoc> unknown_stance_docs;
  std::vector<std::string> warnings;
};

// Throws ValidationError when no run topic appears in the qrels, or when two
// run files share a system tag.
Collection build_collection(std::vector<RunSet> runs, const QrelsMap& qrels,
                            StanceMap stances, int relevance_threshold = 1);

}  // namespace fairarg
