// Copyright 2026 The trajldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch driver for the trajectory perturbation toolkit. Every subcommand is
// a pure function of its inputs, flags, and seed: repeated invocations write
// byte-identical CSVs, independent of --threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "trajldp/trajldp.h"

namespace {

// Exit codes, one per failure class.
constexpr int kExitOther = 1;
constexpr int kExitIo = 2;
constexpr int kExitSchema = 3;
constexpr int kExitParameter = 4;
constexpr int kExitBudget = 5;

std::string fmt(double v) { return trajldp::detail::format_double(v); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw trajldp::IoError("cannot write " + path);
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw trajldp::IoError("write failed for " + path);
}

std::optional<int> parse_granularity(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t pos = 0;
    const int g = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return g;
  } catch (const std::exception&) {
    throw std::invalid_argument("--granularity must be 'auto' or an integer, got '" +
                                s + "'");
  }
}

// Streams nest seed -> mechanism -> epsilon -> run -> trajectory, so adding
// runs, epsilons, or mechanisms never disturbs earlier draws.
trajldp::RandomSource run_stream(std::uint64_t seed, const std::string& mechanism,
                                 double epsilon, std::uint64_t run) {
  return trajldp::RandomSource(seed)
      .child(mechanism)
      .child_from_double(epsilon)
      .child(run);
}

std::vector<trajldp::Trajectory> perturb_corpus(
    const std::string& mechanism, const std::vector<trajldp::Trajectory>& corpus,
    const trajldp::PointSet& ps, double epsilon, std::optional<int> granularity,
    std::optional<double> fixed_radius, const trajldp::RandomSource& stream,
    int threads) {
  std::vector<trajldp::Trajectory> out(corpus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      try {
        trajldp::RandomSource rng = stream.child(static_cast<std::uint64_t>(i));
        trajldp::PerturbOutcome res = [&] {
          if (mechanism == "exp") {
            return trajldp::exp_baseline(corpus[i], ps, epsilon, rng);
          }
          if (mechanism == "tp") {
            return trajldp::tp_perturb(corpus[i], ps, epsilon, rng, granularity);
          }
          return trajldp::atp_perturb(corpus[i], ps, epsilon, rng, granularity,
                                      fixed_radius);
        }();
        out[i].point_ids = std::move(res.points);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(failure);
  return out;
}

// One metric observation; "param" is the PRQ range or ACD fraction.
struct MetricRow {
  std::string mechanism;
  double epsilon = 0.0;
  int run = 0;
  std::string metric;
  std::optional<double> param;
  double value = 0.0;
};

bool row_less(const MetricRow& a, const MetricRow& b) {
  if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
  if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
  if (a.run != b.run) return a.run < b.run;
  if (a.metric != b.metric) return a.metric < b.metric;
  const double pa = a.param.value_or(-std::numeric_limits<double>::infinity());
  const double pb = b.param.value_or(-std::numeric_limits<double>::infinity());
  return pa < pb;
}

std::string param_text(const std::optional<double>& param) {
  return param ? fmt(*param) : "-";
}

void append_eval_rows(std::vector<MetricRow>& rows, const std::string& mechanism,
                      double epsilon, int run, const trajldp::EvalReport& report) {
  rows.push_back({mechanism, epsilon, run, "ne", std::nullopt, report.ne});
  for (const auto& [delta, value] : report.prq) {
    rows.push_back({mechanism, epsilon, run, "prq", delta, value});
  }
  for (const auto& [fraction, value] : report.acd) {
    rows.push_back({mechanism, epsilon, run, "acd", fraction, value});
  }
}

void write_summary(const std::string& path, const std::vector<MetricRow>& sorted_rows,
                   bool with_labels) {
  std::ofstream out = open_out(path);
  out << "mechanism,epsilon,metric,param,mean,stderr,runs\n";
  std::size_t i = 0;
  while (i < sorted_rows.size()) {
    std::size_t j = i;
    std::vector<double> values;
    while (j < sorted_rows.size() && sorted_rows[j].mechanism == sorted_rows[i].mechanism &&
           sorted_rows[j].epsilon == sorted_rows[i].epsilon &&
           sorted_rows[j].metric == sorted_rows[i].metric &&
           sorted_rows[j].param == sorted_rows[i].param) {
      values.push_back(sorted_rows[j].value);
      ++j;
    }
    const trajldp::MetricSummary s = trajldp::summarize_runs(values);
    const MetricRow& r = sorted_rows[i];
    out << (with_labels ? r.mechanism : "-") << ','
        << (with_labels ? fmt(r.epsilon) : "-") << ',' << r.metric << ','
        << param_text(r.param) << ',' << fmt(s.mean) << ',' << fmt(s.stderr_mean)
        << ',' << s.runs << '\n';
    i = j;
  }
  finish_out(out, path);
}

// Groups of (mechanism, epsilon, metric, param) must sit contiguously with
// runs ascending inside; row_less sorts exactly that way but leaves run as a
// faster-varying key than metric, so summaries resort on a run-last key.
std::vector<MetricRow> sorted_for_summary(std::vector<MetricRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
    if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
    if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
    if (a.metric != b.metric) return a.metric < b.metric;
    const double pa = a.param.value_or(-std::numeric_limits<double>::infinity());
    const double pb = b.param.value_or(-std::numeric_limits<double>::infinity());
    if (pa != pb) return pa < pb;
    return a.run < b.run;
  });
  return rows;
}

struct PreprocessArgs {
  std::string checkins, points, out;
  std::uint64_t seed = 0;
};

void cmd_preprocess(const PreprocessArgs& a) {
  const trajldp::PointSet ps = trajldp::load_point_set(a.points);
  const std::vector<trajldp::RawCheckin> raw = trajldp::load_checkins(a.checkins);
  trajldp::RandomSource rng(a.seed);
  trajldp::save_trajectories(a.out, trajldp::preprocess(raw, ps, rng));
}

struct GenerateArgs {
  std::string points, out;
  std::uint64_t count = 0;
  std::uint64_t length = 0;
  double reach = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

void cmd_generate(const GenerateArgs& a) {
  const trajldp::PointSet ps = trajldp::load_point_set(a.points);
  trajldp::SynthConfig cfg;
  cfg.n_trajectories = a.count;
  cfg.length = a.length;
  cfg.reach_bound_km = a.reach;
  const trajldp::RandomSource rng(a.seed);
  trajldp::save_trajectories(a.out, trajldp::generate_synthetic(ps, cfg, rng));
}

struct PerturbArgs {
  std::string points, trajectories, out, mechanism;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  int runs = 1;
  std::string granularity = "auto";
  std::optional<double> fixed_radius;
  int threads = 1;
};

void check_mechanism_flags(const std::string& mechanism,
                           const std::optional<double>& fixed_radius) {
  if (fixed_radius && mechanism != "atp") {
    throw std::invalid_argument("--fixed-radius applies only to mechanism atp");
  }
}

void cmd_perturb(const PerturbArgs& a) {
  if (a.runs < 1) throw std::invalid_argument("--runs must be at least 1");
  if (a.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  check_mechanism_flags(a.mechanism, a.fixed_radius);
  const std::optional<int> granularity = parse_granularity(a.granularity);
  const trajldp::PointSet ps = trajldp::load_point_set(a.points);
  const std::vector<trajldp::Trajectory> corpus =
      trajldp::load_trajectories(a.trajectories, ps);
  std::vector<trajldp::Trajectory> all;
  for (int run = 0; run < a.runs; ++run) {
    const trajldp::RandomSource stream =
        run_stream(a.seed, a.mechanism, a.epsilon, static_cast<std::uint64_t>(run));
    std::vector<trajldp::Trajectory> pert = perturb_corpus(
        a.mechanism, corpus, ps, a.epsilon, granularity, a.fixed_radius, stream,
        a.threads);
    for (trajldp::Trajectory& t : pert) all.push_back(std::move(t));
  }
  trajldp::save_trajectories(a.out, all);
}

struct EvaluateArgs {
  std::string points, trajectories, perturbed, out;
  std::vector<double> deltas = {1.0, 2.0, 4.0};
  double acd_fraction = 0.5;
};

void cmd_evaluate(const EvaluateArgs& a) {
  const trajldp::PointSet ps = trajldp::load_point_set(a.points);
  const std::vector<trajldp::Trajectory> orig =
      trajldp::load_trajectories(a.trajectories, ps);
  const std::vector<trajldp::Trajectory> pert =
      trajldp::load_trajectories(a.perturbed, ps);
  const trajldp::EvalReport report =
      trajldp::evaluate_corpus(orig, pert, ps, a.deltas, {a.acd_fraction});
  std::vector<MetricRow> rows;
  append_eval_rows(rows, "-", 0.0, 0, report);
  write_summary(a.out, sorted_for_summary(std::move(rows)), /*with_labels=*/false);
}

struct SweepArgs {
  std::string points, trajectories, out, summary;
  std::vector<std::string> mechanisms = {"exp", "tp", "atp"};
  std::vector<double> epsilons = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  int runs = 5;
  std::uint64_t seed = 0;
  std::vector<double> deltas = {1.0, 2.0, 4.0};
  double acd_fraction = 0.5;
  std::string granularity = "auto";
  std::optional<double> fixed_radius;
  int threads = 1;
};

void cmd_sweep(const SweepArgs& a) {
  if (a.runs < 1) throw std::invalid_argument("--runs must be at least 1");
  if (a.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  if (a.fixed_radius &&
      std::find(a.mechanisms.begin(), a.mechanisms.end(), "atp") ==
          a.mechanisms.end()) {
    throw std::invalid_argument("--fixed-radius applies only to mechanism atp");
  }
  for (double eps : a.epsilons) {
    if (!(eps > 0.0)) throw std::invalid_argument("--epsilon must be positive");
  }
  const std::optional<int> granularity = parse_granularity(a.granularity);
  const trajldp::PointSet ps = trajldp::load_point_set(a.points);
  const std::vector<trajldp::Trajectory> corpus =
      trajldp::load_trajectories(a.trajectories, ps);
  std::vector<MetricRow> rows;
  for (const std::string& mechanism : a.mechanisms) {
    const std::optional<double> fixed_radius =
        mechanism == "atp" ? a.fixed_radius : std::nullopt;
    for (double epsilon : a.epsilons) {
      for (int run = 0; run < a.runs; ++run) {
        const trajldp::RandomSource stream = run_stream(
            a.seed, mechanism, epsilon, static_cast<std::uint64_t>(run));
        const std::vector<trajldp::Trajectory> pert =
            perturb_corpus(mechanism, corpus, ps, epsilon, granularity,
                           fixed_radius, stream, a.threads);
        append_eval_rows(rows, mechanism, epsilon, run,
                         trajldp::evaluate_corpus(corpus, pert, ps, a.deltas,
                                                  {a.acd_fraction}));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), row_less);
  std::ofstream out = open_out(a.out);
  out << "mechanism,epsilon,run,metric,param,value\n";
  for (const MetricRow& r : rows) {
    out << r.mechanism << ',' << fmt(r.epsilon) << ',' << r.run << ',' << r.metric
        << ',' << param_text(r.param) << ',' << fmt(r.value) << '\n';
  }
  finish_out(out, a.out);
  if (!a.summary.empty()) {
    write_summary(a.summary, sorted_for_summary(std::move(rows)),
                  /*with_labels=*/true);
  }
}

struct GranularityTableArgs {
  std::string out;
  std::vector<double> epsilons = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<int> candidates = {2, 4, 6, 12};
};

void cmd_granularity_table(const GranularityTableArgs& a) {
  std::vector<double> epsilons = a.epsilons;
  std::sort(epsilons.begin(), epsilons.end());
  std::vector<int> candidates = a.candidates;
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  std::ofstream out = open_out(a.out);
  out << "epsilon";
  for (int g : candidates) out << ",p_g" << g;
  out << ",selected\n";
  for (double epsilon : epsilons) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("--epsilon must be positive");
    trajldp::GranularityConfig config;
    config.candidates = candidates;
    config.epsilon_k = 9.0 * epsilon / 32.0;
    const std::vector<double> ranges = config.effective_query_ranges();
    out << fmt(epsilon);
    for (int g : candidates) {
      out << ',' << fmt(trajldp::direction_success_probability(
                     g, config.epsilon_k, ranges));
    }
    out << ',' << trajldp::select_granularity(config) << '\n';
  }
  finish_out(out, a.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Trajectory perturbation toolkit under pure local differential "
      "privacy: preprocess or generate corpora, perturb them with the exp, "
      "tp, or atp mechanism, and evaluate utility as CSV."};
  app.require_subcommand(1);

  PreprocessArgs pre;
  CLI::App* preprocess =
      app.add_subcommand("preprocess", "Turn raw check-ins into trajectories: "
                                       "per user, bursts within 10 minutes thin "
                                       "to one point and gaps over 3 hours split");
  preprocess->add_option("--checkins", pre.checkins, "Input check-in CSV (user,lat,lon,timestamp)")
      ->required();
  preprocess->add_option("--points", pre.points, "Point universe CSV (id,lat,lon)")
      ->required();
  preprocess->add_option("--out", pre.out, "Output trajectory CSV")->required();
  preprocess->add_option("--seed", pre.seed, "Seed for burst thinning");
  preprocess->callback([&] { cmd_preprocess(pre); });

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Random-walk corpus: uniform start, successors uniform "
                  "within the reach bound");
  generate->add_option("--points", gen.points, "Point universe CSV (id,lat,lon)")
      ->required();
  generate->add_option("--count", gen.count, "Number of trajectories")->required();
  generate->add_option("--length", gen.length, "Points per trajectory")->required();
  generate->add_option("--reach-bound", gen.reach,
                       "Maximum step length in km (omit for unbounded)");
  generate->add_option("--seed", gen.seed, "Seed");
  generate->add_option("--out", gen.out, "Output trajectory CSV")->required();
  generate->callback([&] { cmd_generate(gen); });

  PerturbArgs per;
  CLI::App* perturb = app.add_subcommand(
      "perturb", "Perturb a corpus under the given privacy budget");
  perturb->add_option("--points", per.points, "Point universe CSV (id,lat,lon)")
      ->required();
  perturb
      ->add_option("--trajectories", per.trajectories, "Input trajectory CSV")
      ->required();
  perturb->add_option("--mechanism", per.mechanism, "exp, tp, or atp")
      ->required()
      ->check(CLI::IsMember({"exp", "tp", "atp"}));
  perturb->add_option("--epsilon", per.epsilon, "Privacy budget (> 0)")->required();
  perturb->add_option("--seed", per.seed, "Seed");
  perturb->add_option("--runs", per.runs,
                      "Independent repetitions, concatenated in the output");
  perturb->add_option("--granularity", per.granularity,
                      "'auto' or an explicit direction count");
  perturb->add_option("--fixed-radius", per.fixed_radius,
                      "atp only: public region radius in km, skips the radius "
                      "perturbation");
  perturb->add_option("--threads", per.threads, "Worker threads (output unchanged)");
  perturb->add_option("--out", per.out, "Output trajectory CSV")->required();
  perturb->callback([&] { cmd_perturb(per); });

  EvaluateArgs eva;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Compare an original and a perturbed corpus");
  evaluate->add_option("--points", eva.points, "Point universe CSV (id,lat,lon)")
      ->required();
  evaluate
      ->add_option("--trajectories", eva.trajectories, "Original trajectory CSV")
      ->required();
  evaluate->add_option("--perturbed", eva.perturbed, "Perturbed trajectory CSV")
      ->required();
  evaluate->add_option("--delta", eva.deltas,
                       "Range-query radius in km (repeatable; default 1 2 4)");
  evaluate->add_option("--acd-fraction", eva.acd_fraction,
                       "Top fraction of locations for the count difference");
  evaluate->add_option("--out", eva.out, "Output report CSV")->required();
  evaluate->callback([&] { cmd_evaluate(eva); });

  SweepArgs swe;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Perturb and evaluate over a mechanism and epsilon grid");
  sweep->add_option("--points", swe.points, "Point universe CSV (id,lat,lon)")
      ->required();
  sweep->add_option("--trajectories", swe.trajectories, "Input trajectory CSV")
      ->required();
  sweep->add_option("--mechanism", swe.mechanisms,
                    "Mechanisms to run (repeatable; default exp tp atp)")
      ->check(CLI::IsMember({"exp", "tp", "atp"}));
  sweep->add_option("--epsilon", swe.epsilons,
                    "Privacy budgets (repeatable; default 1..10)");
  sweep->add_option("--runs", swe.runs, "Runs per (mechanism, epsilon)");
  sweep->add_option("--seed", swe.seed, "Seed");
  sweep->add_option("--delta", swe.deltas,
                    "Range-query radius in km (repeatable; default 1 2 4)");
  sweep->add_option("--acd-fraction", swe.acd_fraction,
                    "Top fraction of locations for the count difference");
  sweep->add_option("--granularity", swe.granularity,
                    "'auto' or an explicit direction count");
  sweep->add_option("--fixed-radius", swe.fixed_radius,
                    "atp only: public region radius in km");
  sweep->add_option("--threads", swe.threads, "Worker threads (output unchanged)");
  sweep->add_option("--out", swe.out, "Per-run rows CSV")->required();
  sweep->add_option("--summary", swe.summary,
                    "Optional aggregate CSV (mean and standard error per cell)");
  sweep->callback([&] { cmd_sweep(swe); });

  GranularityTableArgs tab;
  CLI::App* table = app.add_subcommand(
      "granularity-table",
      "Direction-success probabilities per candidate count; the direction "
      "budget is 9/32 of each listed epsilon");
  table->add_option("--epsilon", tab.epsilons,
                    "Total budgets to tabulate (repeatable; default 1..10)");
  table->add_option("--candidates", tab.candidates,
                    "Candidate direction counts (repeatable; default 2 4 6 12)");
  table->add_option("--out", tab.out, "Output CSV")->required();
  table->callback([&] { cmd_granularity_table(tab); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const trajldp::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const trajldp::ParseError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const trajldp::BudgetOverspendError& e) {
    std::cerr << "budget error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return 0;
}
