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

#include "fairarg/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

namespace fairarg {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

// Reads lines, strips a leading UTF-8 BOM and hands non-blank lines (with
// their 1-based number) to `fn`.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    auto fields = split_fields(view);
    if (fields.empty()) continue;
    fn(line_no, fields);
  }
  if (in.bad()) throw IoError("read failure");
}

bool parse_int(std::string_view text, int& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_double(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

RunSet parse_run(std::istream& in, const std::string& source) {
  RunSet run;
  bool have_tag = false;
  TopicMap<std::vector<RankedItem>> items;
  std::set<std::pair<std::string, std::string>> seen;

  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 6) {
      throw ParseError(source, line_no, 0,
                       "expected 6 fields, found " + std::to_string(f.size()));
    }
    RankedItem item;
    item.doc_id = std::string(f[2]);
    if (!parse_int(f[3], item.rank)) {
      throw ParseError(source, line_no, 4, "rank '" + std::string(f[3]) + "' is not an integer");
    }
    if (!parse_double(f[4], item.score)) {
      throw ParseError(source, line_no, 5, "score '" + std::string(f[4]) + "' is not a number");
    }
    if (!have_tag) {
      run.system_tag = std::string(f[5]);
      have_tag = true;
    } else if (f[5] != run.system_tag) {
      throw ParseError(source, line_no, 6,
                       "system tag '" + std::string(f[5]) + "' differs from '" +
                           run.system_tag + "'");
    }
    std::string topic(f[0]);
    if (!seen.emplace(topic, item.doc_id).second) {
      throw ParseError(source, line_no, 3,
                       "duplicate document '" + item.doc_id + "' for topic '" + topic + "'");
    }
    items[topic].push_back(std::move(item));
  });

  for (auto& [topic, list] : items) {
    run.topics.emplace(topic, canonicalize_ranking(topic, run.system_tag, std::move(list)));
  }
  return run;
}

QrelsMap parse_qrels(std::istream& in, const std::string& source) {
  QrelsMap qrels;
  std::map<std::pair<std::string, std::string>, int> seen;

  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 4) {
      throw ParseError(source, line_no, 0,
                       "expected 4 fields, found " + std::to_string(f.size()));
    }
    Judgment j{std::string(f[0]), std::string(f[2]), 0};
    if (!parse_int(f[3], j.grade)) {
      throw ParseError(source, line_no, 4, "grade '" + std::string(f[3]) + "' is not an integer");
    }
    const auto [it, inserted] = seen.emplace(std::make_pair(j.topic_id, j.doc_id), j.grade);
    if (!inserted) {
      if (it->second != j.grade) {
        throw ParseError(source, line_no, 4,
                         "conflicting grade for document '" + j.doc_id + "' in topic '" +
                             j.topic_id + "'");
      }
      return;
    }
    qrels[j.topic_id].push_back(std::move(j));
  });
  return qrels;
}

StanceMap parse_stances(std::istream& in, const std::string& source) {
  StanceMap stances;
  for_each_record(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
    if (f.size() != 2) {
      throw ParseError(source, line_no, 0,
                       "expected 2 fields, found " + std::to_string(f.size()));
    }
    Stance stance;
    try {
      stance = parse_stance(f[1]);
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, 2, e.what());
    }
    try {
      stances.insert(std::string(f[0]), stance);
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, 1, e.what());
    }
  });
  return stances;
}

RunSet read_run_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_run(in, path.string());
}

QrelsMap read_qrels_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_qrels(in, path.string());
}

StanceMap read_stance_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_stances(in, path.string());
}

void write_run(std::ostream& out, const RunSet& run) {
  char score[64];
  for (const auto& [topic, ranking] : run.topics) {
    for (const auto& item : ranking.items) {
      std::snprintf(score, sizeof(score), "%.6g", item.score);
      out << topic << " Q0 " << item.doc_id << ' ' << item.rank << ' ' << score << ' '
          << run.system_tag << '\n';
    }
  }
}

void write_qrels(std::ostream& out, const QrelsMap& qrels) {
  for (const auto& [topic, judgments] : qrels) {
    for (const auto& j : judgments) {
      out << topic << " 0 " << j.doc_id << ' ' << j.grade << '\n';
    }
  }
}

void write_stances(std::ostream& out, const StanceMap& stances) {
  for (const auto& [doc, stance] : stances.entries()) {
    out << doc << '\t' << to_string(stance) << '\n';
  }
}

Collection build_collection(std::vector<RunSet> runs, const QrelsMap& qrels,
                            StanceMap stances, int relevance_threshold) {
  Collection c;
  c.stances = std::move(stances);

  std::set<std::string> tags;
  for (const auto& run : runs) {
    if (!tags.insert(run.system_tag).second) {
      throw ValidationError("system tag '" + run.system_tag + "' appears in more than one run");
    }
  }

  std::set<std::string, TopicLess> excluded;
  bool any_shared = false;
  for (auto& run : runs) {
    for (auto it = run.topics.begin(); it != run.topics.end();) {
      if (qrels.count(it->first) == 0) {
        excluded.insert(it->first);
        it = run.topics.erase(it);
      } else {
        any_shared = true;
        ++it;
      }
    }
  }
  if (!any_shared) {
    throw ValidationError("no run topic appears in the qrels");
  }

  for (const auto& [topic, judgments] : qrels) {
    c.judgments.emplace(topic, JudgmentSet(topic, judgments, c.stances, relevance_threshold));
  }

  for (const auto& topic : excluded) {
    c.excluded_topics.push_back(topic);
    c.warnings.push_back("topic " + topic + " is retrieved but has no judgments; excluded");
  }

  for (const auto& run : runs) {
    for (const auto& [topic, ranking] : run.topics) {
      for (const auto& item : ranking.items) {
        if (!c.stances.contains(item.doc_id)) {
          c.unknown_stance_docs.push_back({run.system_tag, topic, item.doc_id});
        }
      }
    }
  }
  c.runs = std::move(runs);
  return c;
}

}  // namespace fairarg
