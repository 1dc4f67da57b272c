#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "gradcheck.hpp"
#include "sparseae/autoencoder.hpp"
#include "sparseae/errors.hpp"
#include "sparseae/model_io.hpp"
#include "support.hpp"

using namespace sparseae;
using namespace testsupport;

namespace {

AeParams identity_copy_params(std::size_t n) {
  AeParams p;
  p.enc_w = Matrix::identity(n);
  p.enc_b.assign(n, 0.0);
  p.dec_w = Matrix::identity(n);
  p.dec_b.assign(n, 0.0);
  p.enc_act = Activation::Identity;
  p.dec_act = Activation::Identity;
  return p;
}

Matrix rank1(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  std::vector<double> u(rows), w(cols);
  for (auto& v : u) v = rng.uniform(-1, 1);
  for (auto& v : w) v = rng.uniform(-1, 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = u[i] * w[j];
  return m;
}

}  // namespace

TEST_CASE("ae_forward zero parameters with identity activations") {
  AeParams p;
  p.enc_w = Matrix(3, 4);
  p.enc_b.assign(3, 0.0);
  p.dec_w = Matrix(4, 3);
  p.dec_b.assign(4, 0.0);
  p.enc_act = p.dec_act = Activation::Identity;
  Rng rng(1);
  const Matrix x = random_matrix(5, 4, rng);
  const AeForward f = ae_forward(p, x);
  CHECK(f.hidden == Matrix(5, 3));
  CHECK(f.out == Matrix(5, 4));
}

TEST_CASE("ae_forward identity weights copy the input") {
  const AeParams p = identity_copy_params(4);
  Rng rng(2);
  const Matrix x = random_matrix(6, 4, rng);
  CHECK(ae_forward(p, x).out == x);
}

TEST_CASE("ae_forward hand-evaluated sigmoid unit") {
  AeParams p;
  p.enc_w = Matrix::from_rows({{0.5, -0.25}});
  p.enc_b = {0.1};
  p.dec_w = Matrix::from_rows({{1.0}, {1.0}});
  p.dec_b = {0.0, 0.0};
  p.enc_act = Activation::Sigmoid;
  p.dec_act = Activation::Identity;
  const Matrix x = Matrix::from_rows({{1.0, 2.0}});
  const AeForward f = ae_forward(p, x);
  CHECK(f.z_hidden(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(f.hidden(0, 0) == doctest::Approx(0.524979).epsilon(1e-6));
}

TEST_CASE("ae_forward shape mismatch") {
  Rng rng(3);
  AeParams p = make_autoencoder(4, 3, rng);
  CHECK_THROWS_AS(ae_forward(p, Matrix(5, 6)), ShapeError);
}

TEST_CASE("ae_loss trivial cases") {
  const AeParams copy = identity_copy_params(3);
  Rng rng(4);
  const Matrix x = random_matrix(4, 3, rng);
  CHECK(ae_loss(copy, x, Mask(4, 3, true)) == 0.0);

  AeParams p = make_autoencoder(3, 2, rng);
  CHECK(ae_loss(p, x, Mask(4, 3)) == 0.0);
}

TEST_CASE("ae_loss single observed cell matches hand computation") {
  Rng rng(5);
  AeParams p = make_autoencoder(2, 2, rng);
  const Matrix x = Matrix::from_rows({{0.3, -0.7}, {1.1, 0.4}});
  Mask one(2, 2);
  one(1, 0) = 1;
  const Matrix out = ae_forward(p, x).out;
  const double expect = (x(1, 0) - out(1, 0)) * (x(1, 0) - out(1, 0));
  CHECK(ae_loss(p, x, one) == expect);
}

TEST_CASE("ae_backward is zero at an exact minimum and under an empty mask") {
  const AeParams copy = identity_copy_params(3);
  Rng rng(6);
  const Matrix x = random_matrix(5, 3, rng);
  AeParams p = copy;
  const AeBackward at_min = ae_backward(p, x, Mask(5, 3, true));
  CHECK(at_min.loss == 0.0);
  for (double g : at_min.grads.enc_w.data) CHECK(g == 0.0);
  for (double g : at_min.grads.dec_w.data) CHECK(g == 0.0);

  AeParams q = make_autoencoder(3, 2, rng);
  const AeBackward empty = ae_backward(q, x, Mask(5, 3));
  CHECK(empty.loss == 0.0);
  for (double g : empty.grads.enc_w.data) CHECK(g == 0.0);
  for (double g : empty.grads.enc_b) CHECK(g == 0.0);
  for (double g : empty.grads.dec_w.data) CHECK(g == 0.0);
  for (double g : empty.grads.dec_b) CHECK(g == 0.0);
}

TEST_CASE("ae_backward matches finite differences on a 6x4 instance") {
  Rng rng(7);
  AeParams p = make_autoencoder(4, 3, rng);
  const Matrix x = random_matrix(6, 4, rng);
  const Mask mask = random_mask(6, 4, rng, 0.6);
  const GradCheckResult res = check_ae_gradients(p, x, x, mask);
  CAPTURE(res.worst_at);
  CHECK(res.worst <= 1e-5);
}

TEST_CASE("corrupt trivial and statistical behaviour") {
  Rng rng(8);
  const Matrix x = random_matrix(10, 8, rng, 0.5, 2.0);

  Rng r1(1);
  CHECK(corrupt(x, {CorruptionKind::Masking, 0.0}, r1) == x);
  Rng r2(2);
  CHECK(corrupt(x, {CorruptionKind::Masking, 1.0}, r2) == Matrix(10, 8));
  Rng r3(3);
  CHECK(corrupt(x, {CorruptionKind::None, 0.0}, r3) == x);

  // zeroed fraction concentrates around the level
  Rng r4(4);
  const Matrix big = random_matrix(1000, 100, r4, 0.5, 2.0);
  Rng r5(5);
  const Matrix corrupted = corrupt(big, {CorruptionKind::Masking, 0.3}, r5);
  std::size_t zeroed = 0;
  for (double v : corrupted.data) zeroed += v == 0.0;
  const double frac = static_cast<double>(zeroed) / corrupted.size();
  CHECK(frac == doctest::Approx(0.3).epsilon(0.02 / 0.3));

  // gaussian corruption: empirical sd of the perturbation
  Rng r6(6);
  const Matrix noisy = corrupt(big, {CorruptionKind::GaussianAdditive, 0.5}, r6);
  double var = 0.0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    const double d = noisy.data[i] - big.data[i];
    var += d * d;
  }
  var /= big.size();
  CHECK(std::sqrt(var) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("corrupt rejects invalid levels") {
  Rng rng(9);
  const Matrix x(2, 2);
  Rng r(1);
  CHECK_THROWS_AS(corrupt(x, {CorruptionKind::Masking, 1.5}, r), ConfigError);
  CHECK_THROWS_AS(corrupt(x, {CorruptionKind::GaussianAdditive, -0.1}, r), ConfigError);
}

TEST_CASE("dae with corruption none reproduces ae training bit for bit") {
  Rng data_rng(10);
  const Matrix x = random_matrix(8, 5, data_rng);
  const Mask mask = random_mask(8, 5, data_rng, 0.7);
  TrainConfig cfg;
  cfg.epochs = 50;

  Rng init_a(123);
  AeParams pa = make_autoencoder(5, 3, init_a);
  const TrainResult ra = train_ae(pa, x, mask, cfg);

  Rng init_b(123);
  AeParams pb = make_autoencoder(5, 3, init_b);
  Rng train_rng(99);
  const TrainResult rb = train_dae(pb, x, mask, CorruptionSpec{}, cfg, &train_rng);

  CHECK(pa.enc_w == pb.enc_w);
  CHECK(pa.enc_b == pb.enc_b);
  CHECK(pa.dec_w == pb.dec_w);
  CHECK(pa.dec_b == pb.dec_b);
  CHECK(ra.loss_trace == rb.loss_trace);
}

TEST_CASE("dae loss trace length equals epochs and corruption trains") {
  Rng rng(11);
  const Matrix x = rank1(20, 10, rng);
  const Mask mask(20, 10, true);
  TrainConfig cfg;
  cfg.epochs = 100;
  cfg.adam.lr = 0.01;

  Rng init(42);
  AeParams p = make_autoencoder(10, 6, init);
  Rng noise(7);
  const TrainResult r = train_dae(p, x, mask, {CorruptionKind::Masking, 0.1}, cfg, &noise);
  CHECK(r.loss_trace.size() == 100);
  CHECK(r.phases == 1);
  CHECK(r.loss_trace.back() < r.loss_trace.front());
}

TEST_CASE("training rejects an all-unobserved target") {
  Rng rng(12);
  AeParams p = make_autoencoder(4, 2, rng);
  const Matrix x(5, 4);
  CHECK_THROWS_AS(train_ae(p, x, Mask(5, 4), TrainConfig{}), ConfigError);
}

TEST_CASE("mask monotonicity: adding observations never lowers ae_loss") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    AeParams p = make_autoencoder(5, 3, rng);
    const Matrix x = random_matrix(6, 5, rng, -2, 2);
    Mask small = random_mask(6, 5, rng, 0.3);
    Mask big = small;
    for (std::size_t i = 0; i < big.size(); ++i)
      if (!big.data[i] && rng.uniform(0, 1) < 0.4) big.data[i] = 1;
    CHECK(ae_loss(p, x, big) >= ae_loss(p, x, small));
  }
}

TEST_CASE("model save/load round trip is bit exact") {
  Rng rng(13);
  const Matrix x = random_matrix(7, 4, rng);
  const Mask mask = random_mask(7, 4, rng, 0.8);
  TrainConfig cfg;
  cfg.epochs = 5;

  Rng init(14);
  AeParams p = make_autoencoder(4, 3, init);
  train_ae(p, x, mask, cfg);

  TrainedModel model;
  model.algorithm = "ae";
  model.net = p;
  model.norm = Normalizer{NormScheme::ZScore, 0.37, 1.21};
  model.cfg = cfg;

  const auto path = std::filesystem::temp_directory_path() / "sparseae_model_roundtrip.json";
  save_model(path.string(), model);
  const TrainedModel loaded = load_model(path.string());

  CHECK(loaded.algorithm == "ae");
  CHECK(loaded.norm.scheme == NormScheme::ZScore);
  CHECK(loaded.norm.p1 == model.norm.p1);
  CHECK(loaded.norm.p2 == model.norm.p2);
  const auto& q = std::get<AeParams>(loaded.net);
  CHECK(q.enc_w == p.enc_w);
  CHECK(q.enc_b == p.enc_b);
  CHECK(q.dec_w == p.dec_w);
  CHECK(q.dec_b == p.dec_b);

  // identical predictions through the full predict path
  const MaskedMatrix mm = make_masked(x, mask);
  CHECK(predict(model, mm) == predict(loaded, mm));
  std::filesystem::remove(path);
}

TEST_CASE("corrupt model file raises a data error") {
  const auto path = std::filesystem::temp_directory_path() / "sparseae_model_bad.json";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    std::fputs("{\"format\": \"sparseae-model\", \"algorithm\": ", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_model(path.string()), DataError);
  std::filesystem::remove(path);
}
