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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairarg/fairness.hpp"
#include "fairarg/ingest.hpp"
#include "fairarg/meta_eval.hpp"
#include "fairarg/pipeline.hpp"
#include "fairarg/synthetic.hpp"
#include "fairarg/version.hpp"

namespace fs = std::filesystem;
using namespace fairarg;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr const char* kOutDirEnv = "FAIRARG_OUT_DIR";

struct EvaluateOptions {
  std::vector<std::string> runs;
  std::string qrels;
  std::string stances;
  std::string metrics = "ndcg,andcg,rnd,rkl,rrd";
  int k = 5;
  double alpha = 0.5;
  std::string protected_strategy = "minority";
  std::string normalize = "pattern-space";
  int threshold = 1;
  std::string members = "all";
  std::string population = "labeled";
  std::string format = "csv";
  std::string out;
  int jobs = 1;
};

struct SynthOptions {
  std::string setting = "minority";
  int k = 5;
  std::string out;
};

struct CorrelateOptions {
  std::string scores;
  std::string by = "topic";
  std::string metrics;
  std::string out;
  std::string format = "csv";
  double significance = 0.05;
};

struct LeaderboardOptions {
  std::string scores;
  std::string sort = "ndcg@5";
  std::string format = "csv";
  std::string out;
};

// Writes to `path`, or to stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failure on '" + path + "'");
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return {};
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void run_evaluate(const EvaluateOptions& o) {
  EvalConfig config;
  config.k = o.k;
  config.alpha = o.alpha;
  config.strategy = ProtectedStrategy::parse(o.protected_strategy);
  config.normalization = parse_normalization_mode(o.normalize);
  config.relevance_threshold = o.threshold;
  config.members = parse_membership_mode(o.members);
  config.population = parse_population_mode(o.population);
  config.format = parse_output_format(o.format);
  config.metrics = parse_metric_list(o.metrics);
  config.jobs = o.jobs;
  config.validate();

  if (config.wants_fairness() && o.stances.empty()) {
    throw ValidationError(
        "fairness metrics (rnd, rkl, rrd) need a stance file: pass --stances FILE, "
        "or restrict --metrics to ndcg,andcg");
  }

  std::vector<RunSet> runs;
  for (const auto& path : o.runs) runs.push_back(read_run_file(path));
  const QrelsMap qrels = read_qrels_file(o.qrels);
  StanceMap stances = o.stances.empty() ? StanceMap{} : read_stance_file(o.stances);

  const Collection collection =
      build_collection(std::move(runs), qrels, std::move(stances), config.relevance_threshold);
  const EvaluationReport report = evaluate(collection, config);
  warn_all(report.warnings);

  std::ostringstream text;
  write_scores(text, report);
  emit(o.out, text.str());
}

void run_synth(const SynthOptions& o) {
  const fs::path dir = resolve_out_dir(o.out);
  if (dir.empty()) {
    throw ValidationError(std::string("no output directory: pass --out DIR or set ") + kOutDirEnv);
  }
  const auto synthetic = build_synthetic(SyntheticSetting::parse(o.setting), o.k);
  ensure_dir(dir);

  std::ostringstream run, qrels, stances;
  write_run(run, synthetic.run);
  write_qrels(qrels, synthetic.qrels);
  write_stances(stances, synthetic.stances);
  emit((dir / "run.txt").string(), run.str());
  emit((dir / "qrels.txt").string(), qrels.str());
  emit((dir / "stances.tsv").string(), stances.str());
  emit((dir / "manifest.json").string(), synthetic.manifest_json());
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void run_correlate(const CorrelateOptions& o) {
  const MatrixAxis axis = parse_matrix_axis(o.by);
  const OutputFormat format = parse_output_format(o.format);
  if (!(o.significance > 0.0 && o.significance < 1.0)) {
    throw ValidationError("significance level must lie in (0, 1)");
  }
  const auto rows = read_scores_file(o.scores);
  const auto build = build_score_matrix(rows, axis, split_labels(o.metrics));
  for (const auto& r : build.dropped_rows) {
    std::cerr << "warning: row " << r << " lacks some metric; dropped\n";
  }
  if (build.matrix.columns().size() < 2) {
    throw ValidationError("need at least two metric columns to correlate");
  }
  const auto report = correlation_matrix(build.matrix, o.significance);
  for (const auto& e : report.entries) {
    if (e.degenerate) {
      std::cerr << "warning: " << e.metric_a << " vs " << e.metric_b
                << " is degenerate (constant column)\n";
    }
  }

  std::ostringstream csv, json;
  write_correlation_csv(csv, report);
  write_correlation_json(json, report, o.by, build.dropped_rows);

  const fs::path dir = resolve_out_dir(o.out);
  if (dir.empty()) {
    emit("", format == OutputFormat::kJson ? json.str() : csv.str());
    return;
  }
  ensure_dir(dir);
  emit((dir / "correlation.csv").string(), csv.str());
  emit((dir / "correlation.json").string(), json.str());
}

void run_leaderboard(const LeaderboardOptions& o) {
  const SortKey key = SortKey::parse(o.sort);
  const OutputFormat format = parse_output_format(o.format);
  const auto rows = read_scores_file(o.scores);
  std::vector<std::string> columns;
  if (key.is_harmonic()) {
    columns = {key.harmonic_relevance, key.harmonic_unfairness};
  } else {
    columns = {key.column};
  }
  const auto build = build_score_matrix(rows, MatrixAxis::kSystem, columns);
  for (const auto& r : build.dropped_rows) {
    std::cerr << "warning: system " << r << " lacks the sort key; dropped\n";
  }
  std::ostringstream text;
  write_leaderboard(text, leaderboard(build.matrix, key), key, format);
  emit(o.out, text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fairness, relevance and diversity evaluation of stance-labeled rankings"};
  app.set_version_flag("--version", std::string("fairarg ") + kVersion);
  app.require_subcommand(1);

  EvaluateOptions eval;
  auto* cmd_eval = app.add_subcommand("evaluate", "Score runs against qrels and stance labels");
  cmd_eval->add_option("--run", eval.runs, "TREC run file (repeatable)")->required();
  cmd_eval->add_option("--qrels", eval.qrels, "TREC qrels file")->required();
  cmd_eval->add_option("--stances", eval.stances, "Stance file: doc_id<TAB>PRO|CON");
  cmd_eval->add_option("--metrics", eval.metrics, "Comma-separated: ndcg,andcg,rnd,rkl,rrd")
      ->capture_default_str();
  cmd_eval->add_option("--k", eval.k, "Cutoff")->capture_default_str();
  cmd_eval->add_option("--alpha", eval.alpha, "alpha-nDCG redundancy penalty")->capture_default_str();
  cmd_eval->add_option("--protected", eval.protected_strategy, "minority|majority|pro|con")
      ->capture_default_str();
  cmd_eval->add_option("--normalize", eval.normalize, "pattern-space|pattern-range|corpus|none")
      ->capture_default_str();
  cmd_eval->add_option("--threshold", eval.threshold, "Minimum relevant grade")->capture_default_str();
  cmd_eval->add_option("--members", eval.members, "all|relevant-only")->capture_default_str();
  cmd_eval->add_option("--population", eval.population, "labeled|strict")->capture_default_str();
  cmd_eval->add_option("--format", eval.format, "csv|json|tsv")->capture_default_str();
  cmd_eval->add_option("--out", eval.out, "Output file (default stdout)");
  cmd_eval->add_option("--jobs", eval.jobs, "Worker threads")->capture_default_str();

  SynthOptions synth;
  auto* cmd_synth = app.add_subcommand("synth", "Write the synthetic pattern collection");
  cmd_synth->add_option("--setting", synth.setting, "minority|agnostic|majority")->capture_default_str();
  cmd_synth->add_option("--k", synth.k, "Pattern length")->capture_default_str();
  cmd_synth->add_option("--out", synth.out, std::string("Output directory (default $") + kOutDirEnv + ")");

  CorrelateOptions corr;
  auto* cmd_corr = app.add_subcommand("correlate", "Kendall tau-b between metric columns");
  cmd_corr->add_option("--scores", corr.scores, "Scores file from evaluate")->required();
  cmd_corr->add_option("--by", corr.by, "topic|system")->capture_default_str();
  cmd_corr->add_option("--metrics", corr.metrics, "Column labels to keep, e.g. andcg@5,rkl@5");
  cmd_corr->add_option("--format", corr.format, "stdout format: csv|json")->capture_default_str();
  cmd_corr->add_option("--significance", corr.significance, "Significance level")->capture_default_str();
  cmd_corr->add_option("--out", corr.out,
                       std::string("Directory for correlation.csv/.json (default $") + kOutDirEnv +
                           ", else stdout)");

  LeaderboardOptions board;
  auto* cmd_board = app.add_subcommand("leaderboard", "Order systems by a metric");
  cmd_board->add_option("--scores", board.scores, "Scores file from evaluate")->required();
  cmd_board->add_option("--sort", board.sort, "ndcg@5 or harmonic:andcg@5,rkl@5")->capture_default_str();
  cmd_board->add_option("--format", board.format, "csv|json|tsv")->capture_default_str();
  cmd_board->add_option("--out", board.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (cmd_eval->parsed()) run_evaluate(eval);
    if (cmd_synth->parsed()) run_synth(synth);
    if (cmd_corr->parsed()) run_correlate(corr);
    if (cmd_board->parsed()) run_leaderboard(board);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
