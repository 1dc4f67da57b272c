#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sparseae/benchmark.hpp"
#include "sparseae/errors.hpp"
#include "sparseae/metrics.hpp"
#include "sparseae/synthetic.hpp"
#include "support.hpp"

using namespace sparseae;
using namespace testsupport;

TEST_CASE("rmse hand cases") {
  Rng rng(1);
  const Matrix truth_vals = random_matrix(3, 3, rng);
  const MaskedMatrix truth = make_masked(truth_vals, Mask(3, 3, true));
  CHECK(rmse(truth.values, truth) == 0.0);

  // errors {+1, -1} over two cells -> 1.0
  Matrix pred(1, 2);
  Matrix target(1, 2);
  target(0, 0) = 2.0;
  target(0, 1) = 5.0;
  pred(0, 0) = 3.0;  // -1 error
  pred(0, 1) = 4.0;  // +1 error
  CHECK(rmse(pred, make_masked(target, Mask(1, 2, true))) == 1.0);

  // errors {3, 4} -> sqrt(25/2)
  pred(0, 0) = target(0, 0) + 3.0;
  pred(0, 1) = target(0, 1) + 4.0;
  CHECK(rmse(pred, make_masked(target, Mask(1, 2, true))) ==
        doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
}

TEST_CASE("rmse rejects an empty evaluation set") {
  const MaskedMatrix empty = make_masked(Matrix(2, 2), Mask(2, 2));
  CHECK_THROWS_AS(rmse(Matrix(2, 2), empty), EvalError);
  CHECK_THROWS_AS(rmse(Matrix(2, 3), make_masked(Matrix(2, 2), Mask(2, 2, true))), ShapeError);
}

TEST_CASE("rmse matches the scalar-loop oracle on 100 random instances") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const auto rows = static_cast<std::size_t>(rng.uniform(1, 101));
    const auto cols = static_cast<std::size_t>(rng.uniform(1, 101));
    const Matrix pred = random_matrix(rows, cols, rng, -10, 10);
    Matrix truth_vals = random_matrix(rows, cols, rng, -10, 10);
    Mask mask = random_mask(rows, cols, rng, 0.5);
    if (mask.count() == 0) mask(0, 0) = 1;
    const double got = rmse(pred, make_masked(truth_vals, mask));
    const Matrix zeroed = make_masked(truth_vals, mask).values;
    const double want = rmse_oracle(pred, zeroed, mask);
    CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("rmse depends only on the observed set") {
  Rng rng(2);
  const Matrix pred = random_matrix(6, 6, rng);
  const Matrix vals = random_matrix(6, 6, rng);
  Mask m1 = random_mask(6, 6, rng, 0.5);
  if (m1.count() == 0) m1(0, 0) = 1;
  // same set built in a different order
  Mask m2(6, 6);
  for (std::size_t i = m2.size(); i-- > 0;) m2.data[i] = m1.data[i];
  CHECK(rmse(pred, make_masked(vals, m1)) == rmse(pred, make_masked(vals, m2)));
}

TEST_CASE("avg_epoch_time formula") {
  CHECK(avg_epoch_time(100.0, 100) == 1.0);
  CHECK(avg_epoch_time(2383.0, 100) == doctest::Approx(23.83).epsilon(1e-12));
  CHECK(avg_epoch_time(17.5, 1) == 17.5);
  CHECK_THROWS_AS(avg_epoch_time(1.0, 0), EvalError);
}

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.hidden1 = 6;
  cfg.hidden2 = 5;
  cfg.epochs = 8;
  cfg.train_pct = 75.0;
  cfg.seed = 11;
  cfg.quiet = true;
  return cfg;
}

BenchmarkTarget tiny_target() {
  SynthSpec spec;
  spec.rows = 16;
  spec.cols = 8;
  spec.rank = 2;
  spec.density = 0.8;
  spec.noise_sd = 0.05;
  spec.seed = 21;
  SynthData data = synth_generate(spec);
  return BenchmarkTarget{std::move(data.observed), "toy"};
}

}  // namespace

TEST_CASE("run_benchmark produces coherent reports") {
  const BenchmarkTarget target = tiny_target();
  SynthSpec spec;
  spec.rows = 16;
  spec.cols = 8;
  spec.rank = 2;
  spec.density = 0.8;
  spec.noise_sd = 0.05;
  spec.seed = 21;
  const Matrix aux = synth_generate(spec).aux;

  const RunConfig cfg = tiny_config();
  const std::vector<Algorithm> algos{Algorithm::Ae, Algorithm::Dae, Algorithm::Sae,
                                     Algorithm::Sdae, Algorithm::Iae};
  const auto reports = run_benchmark({target}, aux, algos, cfg);
  REQUIRE(reports.size() == 5);
  for (const EvalReport& r : reports) {
    CAPTURE(r.algorithm);
    CAPTURE(r.error);
    CHECK(r.ok);
    CHECK(r.rmse_trace.size() == 8);
    CHECK(r.loss_trace.size() == 8);
    CHECK(r.final_rmse >= 0.0);
    for (double v : r.rmse_trace) CHECK(std::isfinite(v));
    // report arithmetic: A_t * epochs = T_t
    CHECK(std::fabs(r.avg_epoch_time_s * cfg.epochs - r.total_time_s) <=
          1e-9 * std::max(1.0, std::fabs(r.total_time_s)));
  }
  CHECK(reports[0].phases == 1);  // ae
  CHECK(reports[2].phases == 3);  // sae, k=2
  CHECK(reports[3].phases == 3);  // sdae
  CHECK(reports[4].phases == 1);  // iae
}

TEST_CASE("benchmark rmse columns are deterministic; timing may differ") {
  const BenchmarkTarget target = tiny_target();
  const Matrix aux(16, 16, 0.5);
  const RunConfig cfg = tiny_config();
  const std::vector<Algorithm> algos{Algorithm::Ae, Algorithm::Iae};
  const auto a = run_benchmark({target}, aux, algos, cfg);
  const auto b = run_benchmark({target}, aux, algos, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].final_rmse == b[i].final_rmse);
    CHECK(a[i].rmse_trace == b[i].rmse_trace);
    CHECK(a[i].loss_trace == b[i].loss_trace);
    CHECK(a[i].seed == b[i].seed);
  }
}

TEST_CASE("per-algorithm failures do not stop the harness") {
  const BenchmarkTarget target = tiny_target();
  const Matrix aux(16, 16, 0.5);
  RunConfig cfg = tiny_config();
  cfg.hidden1 = 4;
  // an impossible corruption level fails the dae run only
  cfg.corruption = CorruptionSpec{CorruptionKind::Masking, 2.0};
  const auto reports =
      run_benchmark({target}, aux, {Algorithm::Ae, Algorithm::Dae, Algorithm::Iae}, cfg);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].ok);
  CHECK_FALSE(reports[1].ok);
  CHECK(reports[1].error.find("corruption") != std::string::npos);
  CHECK(reports[2].ok);
}

TEST_CASE("csv emitters have the documented schemas") {
  EvalReport r;
  r.algorithm = "iae";
  r.target = "toy";
  r.final_rmse = 1.25;
  r.total_time_s = 2.0;
  r.avg_epoch_time_s = 0.25;
  r.seed = 9;
  r.ok = true;
  r.loss_trace = {3.0, 2.0};
  r.rmse_trace = {1.5, 1.25};

  const std::string table = comparison_table_csv({r});
  CHECK(table.find("algorithm,target,rmse,total_time_s,avg_epoch_time_s,seed\n") == 0);
  CHECK(table.find("iae,toy,1.25,2,0.25,9\n") != std::string::npos);

  const std::string trace = trace_csv(r);
  CHECK(trace.find("epoch,train_loss,test_rmse\n") == 0);
  CHECK(trace.find("1,3,1.5\n") != std::string::npos);
  CHECK(trace.find("2,2,1.25\n") != std::string::npos);
}
