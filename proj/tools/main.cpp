// Command-line front door: dataset generation, single-model training,
// benchmark orchestration, prediction export.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparseae/benchmark.hpp"
#include "sparseae/csv.hpp"
#include "sparseae/errors.hpp"
#include "sparseae/synthetic.hpp"

namespace fs = std::filesystem;
using namespace sparseae;

namespace {

// Exit codes: 0 success, 1 usage/config, 2 data/parse, 3 numeric failure.
template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const EvalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct HyperOpts {
  int hidden1 = 1000;
  int hidden2 = 3000;
  double lambda = 0.01;
  double train_pct = 80.0;
  int epochs = 100;
  std::string enc_activation = "sigmoid";
  std::string dec_activation = "identity";
  std::string corruption = "masking";
  double corruption_level = 0.1;
  double lr = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::string normalization = "zscore";
  std::uint64_t seed = 42;
  bool dense_target_loss = false;

  RunConfig to_run_config() const {
    RunConfig cfg;
    cfg.hidden1 = hidden1;
    cfg.hidden2 = hidden2;
    cfg.lambda = lambda;
    cfg.train_pct = train_pct;
    cfg.epochs = epochs;
    cfg.enc_act = activation_from_name(enc_activation);
    cfg.dec_act = activation_from_name(dec_activation);
    cfg.corruption = CorruptionSpec{corruption_kind_from_name(corruption), corruption_level};
    cfg.adam = AdamConfig{lr, beta1, beta2, epsilon};
    cfg.normalization = norm_scheme_from_name(normalization);
    cfg.seed = seed;
    cfg.dense_target_loss = dense_target_loss;
    return cfg;
  }
};

void add_hyper_options(CLI::App* cmd, HyperOpts& h) {
  cmd->add_option("--hidden1", h.hidden1, "First hidden layer width (clamped to input dim)")
      ->capture_default_str();
  cmd->add_option("--hidden2", h.hidden2,
                  "Second hidden layer width, stacks and iae (clamped to input dim)")
      ->capture_default_str();
  cmd->add_option("--lambda", h.lambda, "L2 penalty on the iae's joint autoencoder weights")
      ->capture_default_str();
  cmd->add_option("--train-pct", h.train_pct, "Percent of observed cells used for training")
      ->capture_default_str();
  cmd->add_option("--epochs", h.epochs, "Training epochs per optimization phase")
      ->capture_default_str();
  cmd->add_option("--enc-activation", h.enc_activation, "Encoder activation")
      ->capture_default_str();
  cmd->add_option("--dec-activation", h.dec_activation, "Decoder activation")
      ->capture_default_str();
  cmd->add_option("--corruption", h.corruption, "Corruption for dae/sdae: none|masking|gaussian")
      ->capture_default_str();
  cmd->add_option("--corruption-level", h.corruption_level,
                  "Masking probability or gaussian noise sd")
      ->capture_default_str();
  cmd->add_option("--lr", h.lr, "Adam learning rate")->capture_default_str();
  cmd->add_option("--beta1", h.beta1, "Adam beta1")->capture_default_str();
  cmd->add_option("--beta2", h.beta2, "Adam beta2")->capture_default_str();
  cmd->add_option("--epsilon", h.epsilon, "Adam epsilon")->capture_default_str();
  cmd->add_option("--normalization", h.normalization,
                  "Value transform fitted on train observations: none|minmax|zscore")
      ->capture_default_str();
  cmd->add_option("--seed", h.seed, "Base random seed")->capture_default_str();
  cmd->add_flag("--dense-target-loss", h.dense_target_loss,
                "iae: include unobserved target cells in the joined loss");
}

std::vector<std::string> default_col_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t j = 0; j < n; ++j) names.push_back("c" + std::to_string(j));
  return names;
}

void write_reports(const fs::path& dir, const std::vector<EvalReport>& reports,
                   const RunConfig& cfg, const std::vector<Algorithm>& algos, bool multi_seed) {
  fs::create_directories(dir);
  atomic_write_file((dir / "comparison.csv").string(), comparison_table_csv(reports));
  atomic_write_file((dir / "report_meta.txt").string(), config_dump(cfg, algos));
  for (const EvalReport& r : reports) {
    if (!r.ok) continue;
    std::string name = "trace_" + r.algorithm + "_" + r.target;
    if (multi_seed) name += "_s" + std::to_string(r.seed);
    atomic_write_file((dir / (name + ".csv")).string(), trace_csv(r));
  }
}

int cmd_generate(const SynthSpec& spec, const std::string& out_dir, bool header) {
  validate_synth_spec(spec);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const SynthData data = synth_generate(spec);
  save_values_csv((dir / "values.csv").string(), data.observed,
                  header ? default_col_names(spec.cols) : std::vector<std::string>{});
  save_dense_csv((dir / "aux.csv").string(), data.aux,
                 header ? default_col_names(spec.rows) : std::vector<std::string>{});
  save_manifest((dir / "manifest.json").string(), spec);
  std::cout << "wrote " << (dir / "values.csv").string() << " (" << spec.rows << "x" << spec.cols
            << ", " << data.observed.observed.count() << " observed), aux.csv, manifest.json\n";
  return 0;
}

int cmd_train(const HyperOpts& hyper, const std::string& algorithm, const std::string& values_path,
              const std::string& aux_path, const std::string& model_out,
              const std::string& report_dir, const std::string& target_name, bool header) {
  const RunConfig cfg = hyper.to_run_config();
  const Algorithm algo = algorithm_from_name(algorithm);

  const MaskedMatrix values = load_values_csv(values_path, header);
  Matrix aux;
  const bool has_aux = !aux_path.empty();
  if (has_aux) {
    aux = load_dense_csv(aux_path, header);
    if (aux.rows != values.values.rows)
      throw DataError(aux_path + ": row count " + std::to_string(aux.rows) +
                      " does not match values file (" + std::to_string(values.values.rows) + ")");
  }
  const std::string target =
      target_name.empty() ? fs::path(values_path).stem().string() : target_name;

  SplitSpec split_spec;
  split_spec.train_pct = cfg.train_pct;
  split_spec.seed = derive_split_seed(cfg.seed, target);
  const auto parts = split(values, split_spec);

  TrainedModel model;
  const EvalReport report =
      run_single(parts.first, parts.second, has_aux ? &aux : nullptr, algo, cfg,
                 derive_model_seed(cfg.seed, algo), target, &model, /*catch_errors=*/false);

  write_reports(report_dir, {report}, cfg, {algo}, false);
  save_model(model_out, model);
  std::cout << "trained " << report.algorithm << " on '" << target << "': rmse "
            << format_double(report.final_rmse) << ", avg epoch "
            << format_double(report.avg_epoch_time_s) << " s, model -> " << model_out << '\n';
  return 0;
}

int cmd_benchmark(const HyperOpts& hyper, std::vector<std::string> algorithm_names,
                  const std::vector<std::string>& values_paths, const std::string& aux_path,
                  const std::string& out_dir, int num_seeds, bool parallel, bool header) {
  RunConfig cfg = hyper.to_run_config();
  cfg.num_seeds = num_seeds;
  cfg.parallel = parallel;

  std::vector<Algorithm> algos;
  for (const std::string& n : algorithm_names) algos.push_back(algorithm_from_name(n));

  const Matrix aux = load_dense_csv(aux_path, header);
  std::vector<BenchmarkTarget> targets;
  for (const std::string& p : values_paths) {
    BenchmarkTarget t;
    t.values = load_values_csv(p, header);
    t.name = fs::path(p).stem().string();
    if (t.values.values.rows != aux.rows)
      throw DataError(p + ": row count " + std::to_string(t.values.values.rows) +
                      " does not match aux file (" + std::to_string(aux.rows) + ")");
    targets.push_back(std::move(t));
  }

  const auto reports = run_benchmark(targets, aux, algos, cfg);
  write_reports(out_dir, reports, cfg, algos, num_seeds > 1);

  std::size_t failed = 0;
  for (const EvalReport& r : reports) {
    if (!r.ok) {
      ++failed;
      std::cerr << "failed: " << r.algorithm << " on '" << r.target << "': " << r.error << '\n';
    }
  }
  std::cout << comparison_table_csv(reports);
  if (failed == reports.size()) {
    std::cerr << "error: every benchmark run failed\n";
    return 1;
  }
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& values_path,
                const std::string& aux_path, const std::string& out_path, bool header) {
  const TrainedModel model = load_model(model_path);
  std::vector<std::string> col_names;
  const MaskedMatrix values = load_values_csv(values_path, header, &col_names);
  Matrix aux;
  const bool has_aux = !aux_path.empty();
  if (has_aux) aux = load_dense_csv(aux_path, header);
  const Matrix pred = predict(model, values, has_aux ? &aux : nullptr);
  save_dense_csv(out_path, pred, col_names);
  std::cout << "wrote " << out_path << " (" << pred.shape_str() << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparseae: autoencoder toolkit for sparse-matrix prediction"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic sparse dataset");
  gen->set_config("--config", "", "Config file (key=value lines)");
  SynthSpec spec;
  std::string gen_out = "dataset";
  std::string from_manifest;
  bool gen_header = false;
  gen->add_option("--out", gen_out, "Output directory")->capture_default_str();
  gen->add_option("--rows", spec.rows, "Row count")->capture_default_str();
  gen->add_option("--cols", spec.cols, "Column count")->capture_default_str();
  gen->add_option("--rank", spec.rank, "Ground-truth rank")->capture_default_str();
  gen->add_option("--density", spec.density, "Observed fraction of cells")->capture_default_str();
  gen->add_option("--noise-sd", spec.noise_sd, "Observation noise sd")->capture_default_str();
  gen->add_option("--aux-informativeness", spec.aux_informativeness,
                  "1 = aux is pure row similarity, 0 = pure noise")
      ->capture_default_str();
  gen->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  gen->add_option("--from-manifest", from_manifest,
                  "Regenerate from a manifest written by a previous run");
  gen->add_flag("--header", gen_header, "Write a header row in the CSV files");

  // train
  auto* train = app.add_subcommand("train", "Train one model and persist it");
  train->set_config("--config", "", "Config file (key=value lines)");
  HyperOpts train_hyper;
  std::string train_algorithm;
  std::string train_values, train_aux, train_model_out = "model.json", train_report_dir = ".";
  std::string train_target;
  bool train_header = false;
  train->add_option("--algorithm", train_algorithm, "One of ae|dae|sae|sdae|iae")->required();
  train->add_option("--values", train_values, "Values CSV (empty field = unobserved)")->required();
  train->add_option("--aux", train_aux, "Auxiliary CSV (required for iae)");
  train->add_option("--model-out", train_model_out, "Model file path")->capture_default_str();
  train->add_option("--report-dir", train_report_dir, "Directory for report and trace CSVs")
      ->capture_default_str();
  train->add_option("--target-name", train_target, "Target label (default: values file stem)");
  train->add_flag("--header", train_header, "Input CSVs carry a header row");
  add_hyper_options(train, train_hyper);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Compare algorithms on one or two targets");
  bench->set_config("--config", "", "Config file (key=value lines)");
  HyperOpts bench_hyper;
  std::vector<std::string> bench_values;
  std::vector<std::string> bench_algos{"ae", "dae", "sae", "sdae", "iae"};
  std::string bench_aux, bench_out = "benchmark";
  int bench_num_seeds = 1;
  bool bench_parallel = false, bench_header = false;
  bench->add_option("--values", bench_values, "Values CSV per target (repeatable)")
      ->required()
      ->expected(1, 2);
  bench->add_option("--aux", bench_aux, "Auxiliary CSV shared by all targets")->required();
  bench->add_option("--algorithms", bench_algos, "Algorithms to run")
      ->capture_default_str()
      ->delimiter(',');
  bench->add_option("--out", bench_out, "Output directory")->capture_default_str();
  bench->add_option("--num-seeds", bench_num_seeds, "Consecutive seeds per target")
      ->capture_default_str();
  bench->add_flag("--parallel", bench_parallel, "Train algorithms concurrently");
  bench->add_flag("--header", bench_header, "Input CSVs carry a header row");
  add_hyper_options(bench, bench_hyper);

  // predict
  auto* pred = app.add_subcommand("predict", "Export dense predictions from a saved model");
  pred->set_config("--config", "", "Config file (key=value lines)");
  std::string pred_model, pred_values, pred_aux, pred_out = "predictions.csv";
  bool pred_header = false;
  pred->add_option("--model", pred_model, "Model file from the train command")->required();
  pred->add_option("--values", pred_values, "Values CSV to complete")->required();
  pred->add_option("--aux", pred_aux, "Auxiliary CSV (required for iae models)");
  pred->add_option("--out", pred_out, "Output CSV path")->capture_default_str();
  pred->add_flag("--header", pred_header, "Input CSVs carry a header row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (gen->parsed()) {
    return guarded([&] {
      SynthSpec s = spec;
      if (!from_manifest.empty()) {
        s = load_manifest(from_manifest);
        // explicit flags still override manifest values
        if (gen->count("--rows")) s.rows = spec.rows;
        if (gen->count("--cols")) s.cols = spec.cols;
        if (gen->count("--rank")) s.rank = spec.rank;
        if (gen->count("--density")) s.density = spec.density;
        if (gen->count("--noise-sd")) s.noise_sd = spec.noise_sd;
        if (gen->count("--aux-informativeness")) s.aux_informativeness = spec.aux_informativeness;
        if (gen->count("--seed")) s.seed = spec.seed;
      }
      return cmd_generate(s, gen_out, gen_header);
    });
  }
  if (train->parsed()) {
    return guarded([&] {
      return cmd_train(train_hyper, train_algorithm, train_values, train_aux, train_model_out,
                       train_report_dir, train_target, train_header);
    });
  }
  if (bench->parsed()) {
    return guarded([&] {
      return cmd_benchmark(bench_hyper, bench_algos, bench_values, bench_aux, bench_out,
                           bench_num_seeds, bench_parallel, bench_header);
    });
  }
  return guarded([&] {
    return cmd_predict(pred_model, pred_values, pred_aux, pred_out, pred_header);
  });
}
