#include "sparseae/benchmark.hpp"

#include <future>
#include <iostream>
#include <sstream>

#include "sparseae/csv.hpp"
#include "sparseae/errors.hpp"
#include "sparseae/rng.hpp"

namespace sparseae {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Ae: return "ae";
    case Algorithm::Dae: return "dae";
    case Algorithm::Sae: return "sae";
    case Algorithm::Sdae: return "sdae";
    case Algorithm::Iae: return "iae";
  }
  return "ae";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "ae") return Algorithm::Ae;
  if (name == "dae") return Algorithm::Dae;
  if (name == "sae") return Algorithm::Sae;
  if (name == "sdae") return Algorithm::Sdae;
  if (name == "iae") return Algorithm::Iae;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected ae|dae|sae|sdae|iae)");
}

TrainConfig RunConfig::train_config() const {
  TrainConfig tc;
  tc.epochs = epochs;
  tc.adam = adam;
  tc.corruption = corruption;
  tc.seed = seed;
  tc.dense_target_loss = dense_target_loss;
  return tc;
}

std::size_t clamp_width(int configured, std::size_t input_dim, const std::string& what,
                        bool quiet) {
  if (configured <= 0) throw ConfigError(what + " must be positive");
  const auto wanted = static_cast<std::size_t>(configured);
  if (wanted <= input_dim) return wanted;
  if (!quiet)
    std::cerr << "notice: " << what << " clamped from " << wanted << " to " << input_dim
              << " (input dimension)\n";
  return input_dim;
}

FitResult fit_model(Algorithm algo, const MaskedMatrix& train_raw, const Matrix* aux,
                    const RunConfig& cfg, std::uint64_t seed, const PredictHook& hook) {
  if (train_raw.observed.count() == 0)
    throw ConfigError("training data has no observed cells");

  FitResult out;
  out.model.algorithm = std::string(algorithm_name(algo));
  out.model.norm = fit_normalizer(train_raw, cfg.normalization);
  out.model.cfg = cfg.train_config();
  out.model.cfg.seed = seed;
  if (algo != Algorithm::Dae && algo != Algorithm::Sdae)
    out.model.cfg.corruption = CorruptionSpec{};

  const MaskedMatrix scaled = out.model.norm.apply(train_raw);
  const Matrix& x = scaled.values;
  const Mask& mask = scaled.observed;

  TrainConfig tc = out.model.cfg;
  Rng rng(seed);

  switch (algo) {
    case Algorithm::Ae:
    case Algorithm::Dae: {
      const bool denoise = algo == Algorithm::Dae;
      const CorruptionSpec spec = denoise ? cfg.corruption : CorruptionSpec{};
      const std::size_t hidden = clamp_width(cfg.hidden1, x.cols, "hidden1", cfg.quiet);
      AeParams p = make_autoencoder(x.cols, hidden, rng, cfg.enc_act, cfg.dec_act);
      EpochFn on_epoch;
      if (hook)
        on_epoch = [&](int epoch, double loss) { hook(epoch, loss, ae_forward(p, x).out); };
      out.train = train_dae(p, x, mask, spec, tc, denoise ? &rng : nullptr, on_epoch);
      out.model.net = std::move(p);
      break;
    }
    case Algorithm::Sae:
    case Algorithm::Sdae: {
      const CorruptionSpec spec =
          algo == Algorithm::Sdae ? cfg.corruption : CorruptionSpec{};
      const std::size_t h1 = clamp_width(cfg.hidden1, x.cols, "hidden1", cfg.quiet);
      const std::size_t h2 = clamp_width(cfg.hidden2, h1, "hidden2", cfg.quiet);
      const std::size_t sizes[] = {h1, h2};
      StackModel stack = make_stack(x.cols, sizes, rng, cfg.enc_act, cfg.dec_act);
      const auto phases = stack_pretrain(stack, x, mask, spec, tc, &rng);
      LayerStack net = unroll(stack);
      EpochFn on_epoch;
      if (hook)
        on_epoch = [&](int epoch, double loss) { hook(epoch, loss, forward_stack(net, x)); };
      out.train = stack_finetune(net, x, mask, tc, on_epoch);
      out.train.phases += static_cast<int>(phases.size());
      for (const PhaseResult& p : phases) out.train.seconds += p.seconds;
      out.model.net = std::move(net);
      break;
    }
    case Algorithm::Iae: {
      if (aux == nullptr)
        throw ConfigError("iae requires an auxiliary matrix");
      if (aux->rows != x.rows)
        throw ShapeError("iae: auxiliary " + aux->shape_str() + " vs values " + x.shape_str() +
                         " row mismatch");
      const std::size_t h1 = clamp_width(cfg.hidden1, aux->cols, "hidden1", cfg.quiet);
      const std::size_t h2 =
          clamp_width(cfg.hidden2, x.cols + aux->cols, "hidden2", cfg.quiet);
      IaeModel m = make_iae(x.cols, aux->cols, h1, h2, cfg.lambda, rng, cfg.enc_act, cfg.dec_act);
      EpochFn on_epoch;
      if (hook)
        on_epoch = [&](int epoch, double loss) { hook(epoch, loss, predict_iae(m, x, *aux)); };
      out.train = iae_train(m, x, *aux, mask, tc, on_epoch);
      out.model.net = std::move(m);
      break;
    }
  }
  return out;
}

std::uint64_t derive_split_seed(std::uint64_t run_seed, std::string_view target) {
  return mix_seed(run_seed, fnv1a(target) ^ fnv1a("split"));
}

std::uint64_t derive_model_seed(std::uint64_t run_seed, Algorithm algo) {
  return mix_seed(run_seed, fnv1a(algorithm_name(algo)));
}

EvalReport run_single(const MaskedMatrix& v_train, const MaskedMatrix& v_test, const Matrix* aux,
                      Algorithm algo, const RunConfig& cfg, std::uint64_t seed,
                      const std::string& target, TrainedModel* model_out, bool catch_errors) {
  EvalReport report;
  report.algorithm = std::string(algorithm_name(algo));
  report.target = target;
  report.seed = seed;
  try {
    // same fit as inside fit_model; lets the hook report RMSE in original units
    const Normalizer norm = fit_normalizer(v_train, cfg.normalization);
    const PredictHook hook = [&](int, double, const Matrix& pred_scaled) {
      report.rmse_trace.push_back(rmse(norm.invert(pred_scaled), v_test));
    };
    FitResult fit = fit_model(algo, v_train, aux, cfg, seed, hook);
    report.loss_trace = std::move(fit.train.loss_trace);
    report.phases = fit.train.phases;
    report.total_time_s = fit.train.seconds;
    report.avg_epoch_time_s = avg_epoch_time(fit.train.seconds, cfg.epochs);
    const Matrix pred = predict(fit.model, v_train, aux);
    if (!all_finite(pred)) throw NumericError("non-finite predictions after training");
    report.final_rmse = rmse(pred, v_test);
    report.ok = true;
    if (model_out) *model_out = std::move(fit.model);
  } catch (const std::exception& e) {
    if (!catch_errors) throw;
    report.ok = false;
    report.error = e.what();
  }
  return report;
}

std::vector<EvalReport> run_benchmark(const std::vector<BenchmarkTarget>& targets,
                                      const Matrix& aux, const std::vector<Algorithm>& algorithms,
                                      const RunConfig& cfg) {
  if (algorithms.empty()) throw ConfigError("benchmark needs at least one algorithm");
  if (targets.empty()) throw ConfigError("benchmark needs at least one target");
  if (cfg.num_seeds < 1) throw ConfigError("num_seeds must be at least 1");

  std::vector<EvalReport> reports;
  for (const BenchmarkTarget& target : targets) {
    if (aux.rows != target.values.values.rows)
      throw ShapeError("benchmark: auxiliary " + aux.shape_str() + " vs target '" + target.name +
                       "' " + target.values.values.shape_str() + " row mismatch");
    for (int si = 0; si < cfg.num_seeds; ++si) {
      const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(si);
      // one split per (target, seed), shared by all algorithms
      SplitSpec split_spec;
      split_spec.train_pct = cfg.train_pct;
      split_spec.seed = derive_split_seed(run_seed, target.name);
      const auto parts = split(target.values, split_spec);
      const MaskedMatrix& tr = parts.first;
      const MaskedMatrix& te = parts.second;

      auto one = [&, run_seed](Algorithm a) {
        return run_single(tr, te, &aux, a, cfg, derive_model_seed(run_seed, a), target.name);
      };
      if (cfg.parallel) {
        std::vector<std::future<EvalReport>> futures;
        futures.reserve(algorithms.size());
        for (Algorithm a : algorithms)
          futures.push_back(std::async(std::launch::async, one, a));
        for (auto& f : futures) reports.push_back(f.get());
      } else {
        for (Algorithm a : algorithms) reports.push_back(one(a));
      }
    }
  }
  return reports;
}

std::string comparison_table_csv(const std::vector<EvalReport>& reports) {
  std::ostringstream os;
  os << "algorithm,target,rmse,total_time_s,avg_epoch_time_s,seed\n";
  for (const EvalReport& r : reports) {
    os << r.algorithm << ',' << r.target << ',' << (r.ok ? format_double(r.final_rmse) : "nan")
       << ',' << format_double(r.total_time_s) << ',' << format_double(r.avg_epoch_time_s) << ','
       << r.seed << '\n';
  }
  return os.str();
}

std::string trace_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "epoch,train_loss,test_rmse\n";
  for (std::size_t e = 0; e < report.loss_trace.size(); ++e) {
    os << (e + 1) << ',' << format_double(report.loss_trace[e]) << ',';
    if (e < report.rmse_trace.size()) os << format_double(report.rmse_trace[e]);
    os << '\n';
  }
  return os.str();
}

std::string config_dump(const RunConfig& cfg, const std::vector<Algorithm>& algorithms) {
  std::ostringstream os;
  os << "algorithms=";
  for (std::size_t i = 0; i < algorithms.size(); ++i)
    os << (i ? "," : "") << algorithm_name(algorithms[i]);
  os << '\n';
  os << "hidden1=" << cfg.hidden1 << '\n';
  os << "hidden2=" << cfg.hidden2 << '\n';
  os << "lambda=" << format_double(cfg.lambda) << '\n';
  os << "train_pct=" << format_double(cfg.train_pct) << '\n';
  os << "epochs=" << cfg.epochs << '\n';
  os << "enc_activation=" << activation_name(cfg.enc_act) << '\n';
  os << "dec_activation=" << activation_name(cfg.dec_act) << '\n';
  os << "corruption=" << corruption_kind_name(cfg.corruption.kind) << '\n';
  os << "corruption_level=" << format_double(cfg.corruption.level) << '\n';
  os << "lr=" << format_double(cfg.adam.lr) << '\n';
  os << "beta1=" << format_double(cfg.adam.beta1) << '\n';
  os << "beta2=" << format_double(cfg.adam.beta2) << '\n';
  os << "epsilon=" << format_double(cfg.adam.epsilon) << '\n';
  os << "normalization=" << norm_scheme_name(cfg.normalization) << '\n';
  os << "seed=" << cfg.seed << '\n';
  os << "num_seeds=" << cfg.num_seeds << '\n';
  os << "dense_target_loss=" << (cfg.dense_target_loss ? "true" : "false") << '\n';
  os << "parallel=" << (cfg.parallel ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace sparseae
