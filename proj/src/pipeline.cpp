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

#include "fairarg/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fairarg/relevance.hpp"
#include "fairarg/version.hpp"

namespace fairarg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kScoresHeader[] = {"entity", "topic", "metric", "k", "raw", "normalized"};

struct TopicTask {
  const RunSet* run;
  const Ranking* ranking;
  const JudgmentSet* judgments;
};

struct TopicResult {
  std::vector<ScoreRow> rows;
  std::vector<std::string> warnings;
  // Fairness rows waiting for corpus normalization: index into rows.
  std::vector<std::size_t> pending;
};

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line,
                    std::size_t field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(source, line, field, "'" + text + "' is not a number");
  }
  return v;
}

TopicResult score_topic(const TopicTask& task, const Collection& collection,
                        const EvalConfig& config, BoundsCache& cache) {
  TopicResult out;
  const auto& ranking = *task.ranking;
  const auto& js = *task.judgments;
  const std::string& entity = task.run->system_tag;
  const std::string& topic = ranking.topic_id;
  const std::string where = "system " + entity + " topic " + topic;

  std::optional<GroupAssignment> assignment;
  std::optional<StancePrefix> prefix;
  if (config.wants_fairness()) {
    try {
      assignment = assign_protected(js, config.strategy, config.population);
      prefix = build_prefix(ranking, collection.stances, *assignment, config.k, config.members, &js);
    } catch (const DegenerateTopicError& e) {
      out.warnings.push_back(where + ": unassignable, excluded from fairness averages (" +
                             e.what() + ")");
    }
  }

  for (MetricId metric : config.metrics) {
    ScoreRow row{entity, topic, metric, config.k, 0.0, std::nullopt};
    if (metric == MetricId::kNdcg) {
      const auto s = ndcg_at_k(ranking, js, config.k);
      if (s.zero_ideal) out.warnings.push_back(where + ": no relevant documents, nDCG set to 0");
      row.raw = s.value;
    } else if (metric == MetricId::kAlphaNdcg) {
      const auto s = alpha_ndcg_at_k(ranking, js, DiversityConfig{config.alpha, config.k});
      if (s.zero_ideal) {
        out.warnings.push_back(where + ": no stance-labeled relevant documents, alpha-nDCG set to 0");
      }
      row.raw = s.value;
    } else {
      if (!prefix) continue;
      const int depth = static_cast<int>(prefix->flags.size());
      try {
        row.raw = fairness_at_k(metric, *prefix, depth);
      } catch (const DegenerateTopicError& e) {
        out.warnings.push_back(where + ": " + std::string(to_string(metric)) + " undefined (" +
                               e.what() + ")");
        continue;
      }
      const bool unlabeled = std::find(prefix->flags.begin(), prefix->flags.end(),
                                       GroupFlag::kUnlabeled) != prefix->flags.end();
      const bool limited = config.members == MembershipMode::kRelevantOnly;
      switch (config.normalization) {
        case NormalizationMode::kPatternSpace: {
          const auto b = cache.get(prefix->population, depth, metric, unlabeled, limited);
          row.normalized = normalize(row.raw, Bounds{0.0, b.max_raw});
          break;
        }
        case NormalizationMode::kPatternRange:
          row.normalized =
              normalize(row.raw, cache.get(prefix->population, depth, metric, unlabeled, limited));
          break;
        case NormalizationMode::kCorpus:
          out.pending.push_back(out.rows.size());
          break;
        case NormalizationMode::kNone:
          break;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  if (text == "tsv") return OutputFormat::kTsv;
  throw ValidationError("unknown output format '" + std::string(text) + "' (expected csv, json or tsv)");
}

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kTsv:
      break;
  }
  return "tsv";
}

MembershipMode parse_membership_mode(std::string_view text) {
  if (text == "all") return MembershipMode::kAll;
  if (text == "relevant-only") return MembershipMode::kRelevantOnly;
  throw ValidationError("unknown membership mode '" + std::string(text) +
                        "' (expected all or relevant-only)");
}

std::string_view to_string(MembershipMode mode) {
  return mode == MembershipMode::kAll ? "all" : "relevant-only";
}

PopulationMode parse_population_mode(std::string_view text) {
  if (text == "labeled") return PopulationMode::kLabeled;
  if (text == "strict") return PopulationMode::kStrict;
  throw ValidationError("unknown population mode '" + std::string(text) +
                        "' (expected labeled or strict)");
}

std::string_view to_string(PopulationMode mode) {
  return mode == PopulationMode::kLabeled ? "labeled" : "strict";
}

std::vector<MetricId> parse_metric_list(std::string_view text) {
  std::vector<MetricId> metrics;
  for (const auto& name : split(text, ',')) {
    if (name.empty()) continue;
    const MetricId m = parse_metric(name);
    if (std::find(metrics.begin(), metrics.end(), m) == metrics.end()) metrics.push_back(m);
  }
  if (metrics.empty()) throw ValidationError("empty metric list");
  return metrics;
}

void EvalConfig::validate() const {
  if (k < 1) throw ValidationError("k must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  if (jobs < 1) throw ValidationError("jobs must be >= 1");
  if (metrics.empty()) throw ValidationError("no metrics requested");
  for (MetricId m : metrics) {
    if (m == MetricId::kCombined) {
      throw ValidationError("'combined' is computed by the leaderboard "
                            "(--sort harmonic:andcg@K,rkl@K)");
    }
  }
  if (wants_fairness() && normalization != NormalizationMode::kCorpus &&
      normalization != NormalizationMode::kNone && k > 10) {
    throw ValidationError("pattern-space normalization supports k <= 10; use --normalize corpus");
  }
}

bool EvalConfig::wants_fairness() const {
  return std::any_of(metrics.begin(), metrics.end(), is_fairness_metric);
}

std::string EvalConfig::to_json() const {
  ordered_json j;
  j["k"] = k;
  j["alpha"] = alpha;
  j["protected"] = strategy.name();
  j["normalize"] = std::string(fairarg::to_string(normalization));
  j["threshold"] = relevance_threshold;
  j["members"] = std::string(fairarg::to_string(members));
  j["population"] = std::string(fairarg::to_string(population));
  auto& m = j["metrics"];
  m = ordered_json::array();
  for (MetricId id : metrics) m.push_back(std::string(fairarg::to_string(id)));
  return j.dump();
}

std::string ScoreRow::label() const {
  return std::string(to_string(metric)) + "@" + std::to_string(k);
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

EvaluationReport evaluate(const Collection& collection, const EvalConfig& config) {
  config.validate();
  EvaluationReport report;
  report.config = config;
  report.warnings = collection.warnings;

  std::vector<TopicTask> tasks;
  for (const auto& run : collection.runs) {
    for (const auto& [topic, ranking] : run.topics) {
      const auto it = collection.judgments.find(topic);
      if (it == collection.judgments.end()) continue;
      tasks.push_back({&run, &ranking, &it->second});
    }
  }
  if (config.wants_fairness() && !collection.unknown_stance_docs.empty()) {
    report.warnings.push_back(std::to_string(collection.unknown_stance_docs.size()) +
                              " retrieved documents have no stance label");
  }

  BoundsCache cache;
  std::vector<TopicResult> results(tasks.size());
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(config.jobs), std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      results[i] = score_topic(tasks[i], collection, config, cache);
    }
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < tasks.size(); i += workers) {
            results[i] = score_topic(tasks[i], collection, config, cache);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  if (config.normalization == NormalizationMode::kCorpus) {
    std::map<MetricId, Bounds> corpus;
    for (const auto& r : results) {
      for (std::size_t idx : r.pending) {
        const auto& row = r.rows[idx];
        auto [it, inserted] = corpus.emplace(row.metric, Bounds{row.raw, row.raw});
        if (!inserted) {
          it->second.min_raw = std::min(it->second.min_raw, row.raw);
          it->second.max_raw = std::max(it->second.max_raw, row.raw);
        }
      }
    }
    for (auto& r : results) {
      for (std::size_t idx : r.pending) {
        auto& row = r.rows[idx];
        row.normalized = normalize(row.raw, corpus.at(row.metric));
      }
    }
  }

  for (auto& r : results) {
    for (auto& w : r.warnings) report.warnings.push_back(std::move(w));
    for (auto& row : r.rows) report.rows.push_back(std::move(row));
  }

  // Per-system averages in run order, metric order as configured.
  for (const auto& run : collection.runs) {
    for (MetricId metric : config.metrics) {
      std::vector<std::pair<std::string, std::optional<double>>> raw;
      std::vector<std::pair<std::string, std::optional<double>>> norm;
      for (const auto& row : report.rows) {
        if (row.entity != run.system_tag || row.metric != metric || row.topic == kAllTopics) continue;
        raw.emplace_back(row.topic, row.raw);
        norm.emplace_back(row.topic, row.normalized);
      }
      // Topics dropped for this metric count as unassignable.
      for (const auto& [topic, ranking] : run.topics) {
        const bool present = std::any_of(raw.begin(), raw.end(),
                                         [&](const auto& p) { return p.first == topic; });
        if (!present && collection.judgments.count(topic)) raw.emplace_back(topic, std::nullopt);
      }
      if (std::none_of(raw.begin(), raw.end(), [](const auto& p) { return p.second.has_value(); })) {
        report.warnings.push_back("system " + run.system_tag + ": no assignable topic for " +
                                  std::string(to_string(metric)));
        continue;
      }
      const auto avg = average_scores(raw);
      ScoreRow row{run.system_tag, kAllTopics, metric, config.k, avg.mean, std::nullopt};
      if (!norm.empty() && norm.front().second.has_value()) {
        row.normalized = average_scores(norm).mean;
      }
      if (!avg.excluded_topics.empty()) {
        report.warnings.push_back("system " + run.system_tag + ": " + std::string(to_string(metric)) +
                                  " averaged over " + std::to_string(avg.used) + " topics, " +
                                  std::to_string(avg.excluded_topics.size()) + " excluded");
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_scores(std::ostream& out, const EvaluationReport& report) {
  const auto& config = report.config;
  if (config.format == OutputFormat::kJson) {
    ordered_json j;
    j["tool"] = "fairarg";
    j["version"] = kVersion;
    j["config"] = ordered_json::parse(config.to_json());
    auto& scores = j["scores"];
    scores = ordered_json::array();
    for (const auto& row : report.rows) {
      ordered_json r;
      r["entity"] = row.entity;
      r["topic"] = row.topic;
      r["metric"] = std::string(to_string(row.metric));
      r["k"] = row.k;
      r["raw"] = row.raw;
      r["normalized"] = row.normalized ? ordered_json(*row.normalized) : ordered_json(nullptr);
      scores.push_back(std::move(r));
    }
    j["warnings"] = report.warnings;
    out << j.dump(2) << '\n';
    return;
  }
  const char sep = config.format == OutputFormat::kTsv ? '\t' : ',';
  out << "# fairarg " << kVersion << ' ' << config.to_json() << '\n';
  for (std::size_t i = 0; i < std::size(kScoresHeader); ++i) {
    out << (i ? std::string(1, sep) : std::string()) << kScoresHeader[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.entity << sep << row.topic << sep << to_string(row.metric) << sep << row.k << sep
        << format_number(row.raw) << sep
        << (row.normalized ? format_number(*row.normalized) : std::string()) << '\n';
  }
}

std::vector<ScoreRow> parse_scores(std::istream& in, const std::string& source) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<ScoreRow> rows;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const std::exception& e) {
      throw ValidationError(source + ": invalid JSON: " + e.what());
    }
    if (!j.contains("scores") || !j["scores"].is_array()) {
      throw ValidationError(source + ": schema mismatch, missing 'scores' array");
    }
    try {
      for (const auto& r : j["scores"]) {
        ScoreRow row;
        row.entity = r.at("entity").get<std::string>();
        row.topic = r.at("topic").get<std::string>();
        row.metric = parse_metric(r.at("metric").get<std::string>());
        row.k = r.at("k").get<int>();
        row.raw = r.at("raw").get<double>();
        if (!r.at("normalized").is_null()) row.normalized = r.at("normalized").get<double>();
        rows.push_back(std::move(row));
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(source + ": schema mismatch: " + e.what());
    }
    return rows;
  }

  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  char sep = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (sep == 0) {
      sep = line.find('\t') != std::string::npos ? '\t' : ',';
      const auto header = split(line, sep);
      const bool ok = header.size() == std::size(kScoresHeader) &&
                      std::equal(header.begin(), header.end(), std::begin(kScoresHeader));
      if (!ok) {
        throw ParseError(source, line_no, 0,
                         "schema mismatch, expected header entity,topic,metric,k,raw,normalized");
      }
      continue;
    }
    const auto f = split(line, sep);
    if (f.size() != std::size(kScoresHeader)) {
      throw ParseError(source, line_no, 0, "expected 6 fields, found " + std::to_string(f.size()));
    }
    ScoreRow row;
    row.entity = f[0];
    row.topic = f[1];
    try {
      row.metric = parse_metric(f[2]);
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, 3, e.what());
    }
    const double k = parse_number(f[3], source, line_no, 4);
    if (k < 1 || k != std::floor(k)) throw ParseError(source, line_no, 4, "k must be a positive integer");
    row.k = static_cast<int>(k);
    row.raw = parse_number(f[4], source, line_no, 5);
    if (!f[5].empty()) row.normalized = parse_number(f[5], source, line_no, 6);
    rows.push_back(std::move(row));
  }
  if (sep == 0) throw ValidationError(source + ": schema mismatch, no header line");
  return rows;
}

std::vector<ScoreRow> read_scores_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_scores(in, path.string());
}

MatrixAxis parse_matrix_axis(std::string_view text) {
  if (text == "topic") return MatrixAxis::kTopic;
  if (text == "system") return MatrixAxis::kSystem;
  throw ValidationError("unknown axis '" + std::string(text) + "' (expected topic or system)");
}

MatrixBuild build_score_matrix(const std::vector<ScoreRow>& rows, MatrixAxis axis,
                               const std::vector<std::string>& only_columns) {
  std::vector<std::string> row_keys;
  std::vector<std::string> columns;
  std::map<std::string, std::map<std::string, double>> cells;
  for (const auto& row : rows) {
    const bool average = row.topic == kAllTopics;
    if ((axis == MatrixAxis::kSystem) != average) continue;
    const std::string label = row.label();
    if (!only_columns.empty() &&
        std::find(only_columns.begin(), only_columns.end(), label) == only_columns.end()) {
      continue;
    }
    const std::string key = axis == MatrixAxis::kSystem ? row.entity : row.entity + "/" + row.topic;
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) row_keys.push_back(key);
    if (!it->second.emplace(label, row.value()).second) {
      throw ValidationError("duplicate score for " + key + " " + label);
    }
    if (std::find(columns.begin(), columns.end(), label) == columns.end()) columns.push_back(label);
  }
  if (!only_columns.empty()) {
    std::vector<std::string> ordered;
    for (const auto& c : only_columns) {
      if (std::find(columns.begin(), columns.end(), c) == columns.end()) {
        throw ValidationError("metric column '" + c + "' not found in scores");
      }
      ordered.push_back(c);
    }
    columns = std::move(ordered);
  }

  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  for (const auto& key : row_keys) {
    const auto& cell = cells.at(key);
    const bool complete = std::all_of(columns.begin(), columns.end(),
                                      [&](const std::string& c) { return cell.count(c) != 0; });
    (complete ? kept : dropped).push_back(key);
  }
  ScoreMatrix matrix(kept, columns);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      matrix.at(r, c) = cells.at(kept[r]).at(columns[c]);
    }
  }
  return {std::move(matrix), std::move(dropped)};
}

void write_correlation_csv(std::ostream& out, const CorrelationReport& report) {
  out << "metric_a,metric_b,tau,p,significant,degenerate,n\n";
  for (const auto& e : report.entries) {
    out << e.metric_a << ',' << e.metric_b << ',';
    if (e.degenerate) {
      out << ",,false,true,";
    } else {
      out << format_number(e.tau) << ',' << format_number(e.p_value) << ','
          << (e.significant ? "true" : "false") << ",false,";
    }
    out << e.n << '\n';
  }
}

void write_correlation_json(std::ostream& out, const CorrelationReport& report,
                            const std::string& axis, const std::vector<std::string>& dropped_rows) {
  ordered_json j;
  j["tool"] = "fairarg";
  j["version"] = kVersion;
  j["config"] = {{"by", axis}, {"significance_level", report.significance_level},
                 {"tau", "tau-b"}, {"p_value", "exact permutation for n <= 8, else normal approximation"}};
  j["metrics"] = report.metrics;
  auto& pairs = j["pairs"];
  pairs = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json p;
    p["metric_a"] = e.metric_a;
    p["metric_b"] = e.metric_b;
    p["tau"] = e.degenerate ? ordered_json(nullptr) : ordered_json(e.tau);
    p["p"] = e.degenerate ? ordered_json(nullptr) : ordered_json(e.p_value);
    p["significant"] = e.significant;
    p["degenerate"] = e.degenerate;
    p["n"] = e.n;
    pairs.push_back(std::move(p));
  }
  j["dropped_rows"] = dropped_rows;
  out << j.dump(2) << '\n';
}

void write_leaderboard(std::ostream& out, const std::vector<LeaderboardEntry>& entries,
                       const SortKey& key, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    ordered_json j;
    j["tool"] = "fairarg";
    j["version"] = kVersion;
    j["key"] = key.label();
    j["order"] = key.is_harmonic() || !lower_is_better(key.column) ? "descending" : "ascending";
    auto& list = j["entries"];
    list = ordered_json::array();
    for (const auto& e : entries) {
      list.push_back({{"rank", e.rank}, {"entity", e.entity}, {"value", e.value}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  const char sep = format == OutputFormat::kTsv ? '\t' : ',';
  out << "rank" << sep << "entity" << sep << key.label() << '\n';
  for (const auto& e : entries) {
    out << e.rank << sep << e.entity << sep << format_number(e.value) << '\n';
  }
}

}  // namespace fairarg
