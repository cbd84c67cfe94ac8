// Command-line front end: benchmark campaigns, parameter sweeps and
// random-forest tuning.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cicrdbo/engine.hpp"
#include "cicrdbo/errors.hpp"
#include "cicrdbo/export.hpp"
#include "cicrdbo/objectives.hpp"
#include "cicrdbo/rf/dataset.hpp"
#include "cicrdbo/rf/synthetic.hpp"
#include "cicrdbo/rf/tuning.hpp"

using namespace cicrdbo;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<Algorithm> algorithms_for(const std::string& algo) {
  if (algo == "both") return {Algorithm::dbo, Algorithm::cicrdbo};
  return {parse_algorithm(algo)};
}

struct CrossoverFlags {
  double ph = CrossoverParams{}.horizontal_prob;
  double pv = CrossoverParams{}.vertical_prob;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--ph", ph, "Horizontal crossover probability per pair")->capture_default_str();
    cmd->add_option("--pv", pv, "Vertical crossover probability per individual")->capture_default_str();
  }
};

OptimizerConfig make_config(Algorithm algo, std::size_t pop, std::size_t iters, std::uint64_t seed,
                            const CrossoverFlags& flags) {
  OptimizerConfig c = OptimizerConfig::defaults(algo);
  c.pop_size = pop;
  c.max_iters = iters;
  c.seed = seed;
  c.crossover.horizontal_prob = flags.ph;
  c.crossover.vertical_prob = flags.pv;
  c.validate();
  return c;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string algo = "both";
  std::string functions = "all";
  std::size_t dim = 30;
  std::size_t pop = 30;
  std::size_t iters = 500;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
  std::string trace_dir;
  bool list = false;
  CrossoverFlags crossover;
};

int run_bench(const BenchArgs& a) {
  if (a.list) {
    for (const auto& obj : benchmark_suite(a.dim)) {
      std::cout << obj.name() << " [" << format_double(obj.box().lower[0]) << ", "
                << format_double(obj.box().upper[0]) << "]^" << obj.dim()
                << " optimum=" << format_double(obj.known_optimum())
                << (obj.noisy() ? " noisy" : "") << '\n';
    }
    return 0;
  }

  std::vector<Objective> objectives;
  if (a.functions == "all") {
    objectives = benchmark_suite(a.dim);
  } else {
    for (const auto& name : split_list(a.functions)) objectives.push_back(benchmark(name, a.dim));
  }
  if (objectives.empty()) throw ConfigError("no benchmark functions selected");

  std::vector<OptimizerConfig> configs;
  for (Algorithm algo : algorithms_for(a.algo)) {
    configs.push_back(make_config(algo, a.pop, a.iters, a.seed, a.crossover));
  }

  std::vector<StatsRow> rows;
  for (const auto& objective : objectives) {
    for (const auto& config : configs) {
      const BatchResult batch = run_batch(config, objective, a.runs, a.threads);
      rows.push_back({to_string(config.algorithm), objective.name(), a.dim, a.pop, a.iters, batch.stats});
      if (!a.trace_dir.empty()) {
        for (const auto& run : batch.runs) {
          write_trace_csv(fs::path(a.trace_dir) / (run.algorithm + "_" + run.objective + "_seed" +
                                                   std::to_string(run.seed) + ".csv"),
                          run);
        }
      }
    }
  }

  if (a.out.empty()) {
    write_stats_csv(std::cout, rows);
  } else {
    write_stats_csv(fs::path(a.out), rows);
  }
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string param;
  std::string values;
  std::string function = "sphere";
  std::string algo = "cicrdbo";
  std::size_t dim = 30;
  std::size_t pop = 30;
  std::size_t iters = 500;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
  CrossoverFlags crossover;
};

int run_sweep(const SweepArgs& a) {
  std::vector<double> values;
  for (const auto& v : split_list(a.values)) values.push_back(parse_double(v));
  if (values.empty()) throw ConfigError("--values must list at least one value");

  const OptimizerConfig base = make_config(parse_algorithm(a.algo), a.pop, a.iters, a.seed, a.crossover);
  const Objective objective = benchmark(a.function, a.dim);
  const auto rows = sweep(base, objective, a.param, values, a.runs, a.threads);

  if (a.out.empty()) {
    std::cout << "param,value," << kStatsHeader << '\n';
    for (const auto& row : rows) {
      const OptimizerConfig c = with_parameter(base, a.param, row.value);
      std::vector<StatsRow> one{{to_string(c.algorithm), objective.name(), a.dim, c.pop_size,
                                 c.max_iters, row.stats}};
      std::ostringstream line;
      write_stats_csv(line, one);
      const std::string text = line.str();
      std::cout << a.param << ',' << format_double(row.value) << ','
                << text.substr(text.find('\n') + 1);
    }
  } else {
    write_sweep_csv(a.out, a.param, base, objective.name(), a.dim, rows);
  }
  return 0;
}

// ---------------------------------------------------------------- tune-rf

struct TuneArgs {
  std::string data;
  std::int64_t synthetic_seed = -1;
  std::string algo = "cicrdbo";
  std::size_t pop = 10;
  std::size_t iters = 20;
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  std::size_t cv_folds = 5;
  std::string out;
  std::string report_table;
  CrossoverFlags crossover;
};

nlohmann::json hyperparams_json(const rf::RfHyperparams& hp) {
  return {{"n_trees", hp.n_trees},
          {"max_depth", hp.max_depth},
          {"min_samples_split", hp.min_samples_split},
          {"feature_fraction", hp.feature_fraction}};
}

nlohmann::json result_json(const rf::TuneResult& r) {
  return {{"algorithm", r.algorithm},
          {"seed", r.run.seed},
          {"best_hyperparams", hyperparams_json(r.best)},
          {"cv_auc", r.cv_auc},
          {"default_cv_auc", r.default_cv_auc},
          {"test_precision", r.test_metrics.precision},
          {"test_recall", r.test_metrics.recall},
          {"test_f1", r.test_metrics.f1},
          {"test_auc", r.test_metrics.auc},
          {"distinct_evaluations", r.distinct_evaluations}};
}

// Best of `runs` tuning runs with consecutive optimizer seeds; ties keep the earlier seed.
std::vector<rf::TuneResult> tune_runs(const rf::Dataset& data, Algorithm algo, const TuneArgs& a,
                                      const rf::TuneOptions& options) {
  std::vector<rf::TuneResult> results;
  for (std::size_t r = 0; r < a.runs; ++r) {
    const OptimizerConfig config = make_config(algo, a.pop, a.iters, a.seed + r, a.crossover);
    results.push_back(rf::tune(data, config, options));
  }
  return results;
}

const rf::TuneResult& best_of(const std::vector<rf::TuneResult>& results) {
  const rf::TuneResult* best = &results.front();
  for (const auto& r : results) {
    if (r.cv_auc > best->cv_auc) best = &r;
  }
  return *best;
}

int run_tune(const TuneArgs& a) {
  if (a.runs == 0) throw ConfigError("--runs must be at least 1");
  rf::Dataset data;
  std::string source;
  if (!a.data.empty()) {
    data = rf::load_dataset(a.data);
    source = a.data;
  } else if (a.synthetic_seed >= 0) {
    data = rf::synthetic_wholesale(static_cast<std::uint64_t>(a.synthetic_seed));
    source = "synthetic:" + std::to_string(a.synthetic_seed);
  } else {
    throw ConfigError("tune-rf needs --data FILE or --synthetic SEED");
  }

  rf::TuneOptions options;
  options.cv_folds = a.cv_folds;
  options.data_seed = a.seed;

  const Algorithm algo = parse_algorithm(a.algo);
  const auto results = tune_runs(data, algo, a, options);
  const rf::TuneResult& best = best_of(results);

  nlohmann::json out = result_json(best);
  out["data"] = source;
  out["runs"] = nlohmann::json::array();
  for (const auto& r : results) out["runs"].push_back(result_json(r));

  if (!a.report_table.empty()) {
    const Algorithm other = algo == Algorithm::dbo ? Algorithm::cicrdbo : Algorithm::dbo;
    const auto other_results = tune_runs(data, other, a, options);
    const rf::TuneResult& dbo = algo == Algorithm::dbo ? best : best_of(other_results);
    const rf::TuneResult& cicr = algo == Algorithm::cicrdbo ? best : best_of(other_results);
    const rf::ClassificationMetrics def = rf::holdout_metrics(data, rf::default_hyperparams(), options);

    std::ostringstream table;
    table << "model,precision,recall,f1,auc\n";
    auto line = [&](const char* name, const rf::ClassificationMetrics& m) {
      table << name << ',' << format_double(m.precision) << ',' << format_double(m.recall) << ','
            << format_double(m.f1) << ',' << format_double(m.auc) << '\n';
    };
    line("Default Parameters", def);
    line("DBO", dbo.test_metrics);
    line("CICRDBO", cicr.test_metrics);
    write_text_file(a.report_table, table.str());
  }

  const std::string text = out.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(a.out, text);
  }
  return 0;
}

// ---------------------------------------------------------------- gen-synthetic

int run_gen_synthetic(const std::string& out, std::uint64_t seed) {
  std::ostringstream text;
  rf::write_wholesale_csv(text, rf::synthetic_wholesale(seed));
  if (out.empty()) {
    std::cout << text.str();
  } else {
    write_text_file(out, text.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dung beetle optimizer (DBO / CICRDBO) benchmarks and random-forest tuning"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark campaign and emit best/mean/std");
  bench_cmd->add_option("--algo", bench.algo, "dbo, cicrdbo or both")
      ->check(CLI::IsMember({"dbo", "cicrdbo", "both"}))
      ->capture_default_str();
  bench_cmd->add_option("--functions", bench.functions, "'all' or a comma-separated list")
      ->capture_default_str();
  bench_cmd->add_option("--dim", bench.dim)->capture_default_str();
  bench_cmd->add_option("--pop", bench.pop)->capture_default_str();
  bench_cmd->add_option("--iters", bench.iters)->capture_default_str();
  bench_cmd->add_option("--runs", bench.runs)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed of the first run")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0 = all cores)")->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Stats CSV path (stdout if omitted)");
  bench_cmd->add_option("--trace-dir", bench.trace_dir, "Directory for per-run trace CSVs");
  bench_cmd->add_flag("--list", bench.list, "List the benchmark functions and exit");
  bench.crossover.add_to(bench_cmd);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one optimizer parameter");
  sweep_cmd->add_option("--param", sw.param, "pop_size, max_iters, k, b_roll, ph or pv")->required();
  sweep_cmd->add_option("--values", sw.values, "Comma-separated values")->required();
  sweep_cmd->add_option("--function", sw.function)->capture_default_str();
  sweep_cmd->add_option("--algo", sw.algo)->check(CLI::IsMember({"dbo", "cicrdbo"}))->capture_default_str();
  sweep_cmd->add_option("--dim", sw.dim)->capture_default_str();
  sweep_cmd->add_option("--pop", sw.pop)->capture_default_str();
  sweep_cmd->add_option("--iters", sw.iters)->capture_default_str();
  sweep_cmd->add_option("--runs", sw.runs)->capture_default_str();
  sweep_cmd->add_option("--seed", sw.seed)->capture_default_str();
  sweep_cmd->add_option("--threads", sw.threads)->capture_default_str();
  sweep_cmd->add_option("--out", sw.out, "Sweep CSV path (stdout if omitted)");
  sw.crossover.add_to(sweep_cmd);

  TuneArgs tn;
  auto* tune_cmd = app.add_subcommand("tune-rf", "Tune random-forest hyperparameters");
  tune_cmd->add_option("--data", tn.data, "Wholesale customers CSV");
  tune_cmd->add_option("--synthetic", tn.synthetic_seed,
                       "Use the synthetic wholesale-shaped table with this seed instead of --data");
  tune_cmd->add_option("--algo", tn.algo)->check(CLI::IsMember({"dbo", "cicrdbo"}))->capture_default_str();
  tune_cmd->add_option("--pop", tn.pop)->capture_default_str();
  tune_cmd->add_option("--iters", tn.iters)->capture_default_str();
  tune_cmd->add_option("--runs", tn.runs)->capture_default_str();
  tune_cmd->add_option("--seed", tn.seed, "Data split seed and first optimizer seed")->capture_default_str();
  tune_cmd->add_option("--cv-folds", tn.cv_folds)->capture_default_str();
  tune_cmd->add_option("--out", tn.out, "Result JSON path (stdout if omitted)");
  tune_cmd->add_option("--report-table", tn.report_table,
                       "Also write a default/DBO/CICRDBO test-metric CSV to this path");
  tn.crossover.add_to(tune_cmd);

  std::string gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write the synthetic wholesale-shaped CSV");
  gen_cmd->add_option("--out", gen_out);
  gen_cmd->add_option("--seed", gen_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (bench_cmd->parsed()) return run_bench(bench);
    if (sweep_cmd->parsed()) return run_sweep(sw);
    if (tune_cmd->parsed()) return run_tune(tn);
    if (gen_cmd->parsed()) return run_gen_synthetic(gen_out, gen_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
