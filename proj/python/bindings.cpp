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

#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fairarg/fairness.hpp"
#include "fairarg/ingest.hpp"
#include "fairarg/meta_eval.hpp"
#include "fairarg/pipeline.hpp"
#include "fairarg/relevance.hpp"
#include "fairarg/synthetic.hpp"
#include "fairarg/version.hpp"

namespace py = pybind11;
using namespace fairarg;

namespace {

std::vector<Stance> parse_pattern(const std::vector<std::string>& tokens) {
  std::vector<Stance> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(parse_stance(t));
  return out;
}

StancePrefix make_prefix(const std::vector<std::string>& pattern, const std::string& protected_stance,
                         int protected_count, int unprotected_count) {
  return {flags_for(parse_pattern(pattern), parse_stance(protected_stance)),
          Population::labeled(protected_count, unprotected_count)};
}

EvalConfig make_config(int k, double alpha, const std::string& protected_strategy,
                       const std::string& normalize, const std::string& metrics, int threshold,
                       const std::string& members, const std::string& population, int jobs) {
  EvalConfig c;
  c.k = k;
  c.alpha = alpha;
  c.strategy = ProtectedStrategy::parse(protected_strategy);
  c.normalization = parse_normalization_mode(normalize);
  c.metrics = parse_metric_list(metrics);
  c.relevance_threshold = threshold;
  c.members = parse_membership_mode(members);
  c.population = parse_population_mode(population);
  c.jobs = jobs;
  c.validate();
  return c;
}

py::dict row_dict(const ScoreRow& r) {
  py::dict d;
  d["entity"] = r.entity;
  d["topic"] = r.topic;
  d["metric"] = std::string(to_string(r.metric));
  d["k"] = r.k;
  d["raw"] = r.raw;
  d["normalized"] = r.normalized ? py::cast(*r.normalized) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_fairarg, m) {
  m.doc() = "Fairness, relevance and diversity evaluation of stance-labeled rankings";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "rnd",
      [](const std::vector<std::string>& pattern, const std::string& prot, int sp, int sm, int k) {
        return rnd_at_k(make_prefix(pattern, prot, sp, sm), k);
      },
      py::arg("pattern"), py::arg("protected_stance"), py::arg("protected_count"),
      py::arg("unprotected_count"), py::arg("k"));
  m.def(
      "rkl",
      [](const std::vector<std::string>& pattern, const std::string& prot, int sp, int sm, int k) {
        return rkl_at_k(make_prefix(pattern, prot, sp, sm), k);
      },
      py::arg("pattern"), py::arg("protected_stance"), py::arg("protected_count"),
      py::arg("unprotected_count"), py::arg("k"));
  m.def(
      "rrd",
      [](const std::vector<std::string>& pattern, const std::string& prot, int sp, int sm, int k) {
        return rrd_at_k(make_prefix(pattern, prot, sp, sm), k);
      },
      py::arg("pattern"), py::arg("protected_stance"), py::arg("protected_count"),
      py::arg("unprotected_count"), py::arg("k"));
  m.def(
      "normalization_bounds",
      [](int sp, int sm, int k, const std::string& metric) {
        const auto b = normalization_bounds(Population::labeled(sp, sm), k, parse_metric(metric));
        return py::make_tuple(b.min_raw, b.max_raw);
      },
      py::arg("protected_count"), py::arg("unprotected_count"), py::arg("k"), py::arg("metric"));

  m.def("kendall_tau_b", [](const std::vector<double>& x, const std::vector<double>& y) {
    return kendall_tau_b(x, y);
  });
  m.def("kendall_test", [](const std::vector<double>& x, const std::vector<double>& y) {
    const auto r = kendall_test(x, y);
    return py::make_tuple(r.tau, r.p_value);
  });
  m.def("harmonic_combine", &harmonic_combine, py::arg("relevance"), py::arg("unfairness"));
  m.def("patterns", [](int k) {
    std::vector<std::string> out;
    for (const auto& p : generate_patterns(k)) {
      std::string s;
      for (Stance st : p) s += st == Stance::kPro ? 'P' : 'C';
      out.push_back(std::move(s));
    }
    return out;
  });

  m.def(
      "synth",
      [](const std::string& setting, int k) {
        const auto syn = build_synthetic(SyntheticSetting::parse(setting), k);
        std::ostringstream run, qrels, stances;
        write_run(run, syn.run);
        write_qrels(qrels, syn.qrels);
        write_stances(stances, syn.stances);
        py::dict d;
        d["run"] = run.str();
        d["qrels"] = qrels.str();
        d["stances"] = stances.str();
        d["manifest"] = syn.manifest_json();
        return d;
      },
      py::arg("setting") = "minority", py::arg("k") = 5,
      "Synthetic collection as a dict of file contents.");

  m.def(
      "evaluate",
      [](const std::vector<std::string>& runs, const std::string& qrels, const std::string& stances,
         int k, double alpha, const std::string& protected_strategy, const std::string& normalize,
         const std::string& metrics, int threshold, const std::string& members,
         const std::string& population, int jobs) {
        const auto config = make_config(k, alpha, protected_strategy, normalize, metrics, threshold,
                                        members, population, jobs);
        std::vector<RunSet> run_sets;
        for (const auto& text : runs) {
          std::istringstream in(text);
          run_sets.push_back(parse_run(in));
        }
        std::istringstream qin(qrels), sin(stances);
        const auto report = evaluate(build_collection(std::move(run_sets), parse_qrels(qin),
                                                      parse_stances(sin), threshold),
                                     config);
        py::list rows;
        for (const auto& r : report.rows) rows.append(row_dict(r));
        py::dict d;
        d["rows"] = rows;
        d["warnings"] = report.warnings;
        return d;
      },
      py::arg("runs"), py::arg("qrels"), py::arg("stances"), py::arg("k") = 5, py::arg("alpha") = 0.5,
      py::arg("protected") = "minority", py::arg("normalize") = "pattern-space",
      py::arg("metrics") = "ndcg,andcg,rnd,rkl,rrd", py::arg("threshold") = 1,
      py::arg("members") = "all", py::arg("population") = "labeled", py::arg("jobs") = 1,
      "Evaluate run file contents against qrels and stance file contents.");

  m.def(
      "correlate",
      [](const std::vector<py::dict>& rows, const std::string& by, double significance) {
        std::vector<ScoreRow> parsed;
        for (const auto& d : rows) {
          ScoreRow r;
          r.entity = d["entity"].cast<std::string>();
          r.topic = d["topic"].cast<std::string>();
          r.metric = parse_metric(d["metric"].cast<std::string>());
          r.k = d["k"].cast<int>();
          r.raw = d["raw"].cast<double>();
          if (!d["normalized"].is_none()) r.normalized = d["normalized"].cast<double>();
          parsed.push_back(std::move(r));
        }
        const auto build = build_score_matrix(parsed, parse_matrix_axis(by));
        const auto report = correlation_matrix(build.matrix, significance);
        py::list out;
        for (const auto& e : report.entries) {
          py::dict d;
          d["metric_a"] = e.metric_a;
          d["metric_b"] = e.metric_b;
          d["tau"] = e.degenerate ? py::none() : py::cast(e.tau);
          d["p"] = e.degenerate ? py::none() : py::cast(e.p_value);
          d["significant"] = e.significant;
          d["degenerate"] = e.degenerate;
          d["n"] = e.n;
          out.append(d);
        }
        return out;
      },
      py::arg("rows"), py::arg("by") = "topic", py::arg("significance") = 0.05,
      "Kendall tau-b between metric columns of evaluate() rows.");
}
