#include "sparseae/synthetic.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "sparseae/csv.hpp"
#include "sparseae/errors.hpp"
#include "sparseae/rng.hpp"

namespace sparseae {

using nlohmann::json;

void validate_synth_spec(const SynthSpec& s) {
  if (s.rows == 0 || s.cols == 0) throw ConfigError("generator needs positive dimensions");
  if (s.rank == 0 || s.rank > std::min(s.rows, s.cols))
    throw ConfigError("rank must lie in [1, min(rows, cols)], got " + std::to_string(s.rank));
  if (s.density <= 0.0 || s.density > 1.0)
    throw ConfigError("density must lie in (0, 1], got " + std::to_string(s.density));
  if (s.noise_sd < 0.0) throw ConfigError("noise_sd must be nonnegative");
  if (s.aux_informativeness < 0.0 || s.aux_informativeness > 1.0)
    throw ConfigError("aux_informativeness must lie in [0, 1], got " +
                      std::to_string(s.aux_informativeness));
}

SynthData synth_generate(const SynthSpec& spec) {
  validate_synth_spec(spec);
  Rng rng(spec.seed);

  Matrix lf(spec.rows, spec.rank);
  for (double& v : lf.data) v = rng.normal(0.0, 1.0);
  Matrix rf(spec.cols, spec.rank);
  for (double& v : rf.data) v = rng.normal(0.0, 1.0);

  SynthData out;
  out.ground_truth = matmul_nt(lf, rf);

  // observed cells: seeded shuffle, exact count
  const std::size_t total = spec.rows * spec.cols;
  std::vector<std::size_t> cells(total);
  for (std::size_t i = 0; i < total; ++i) cells[i] = i;
  rng.shuffle(cells.begin(), cells.end());
  const auto n_obs = static_cast<std::size_t>(
      std::floor(static_cast<long double>(total) * static_cast<long double>(spec.density)));

  Mask observed(spec.rows, spec.cols);
  for (std::size_t k = 0; k < n_obs; ++k) observed.data[cells[k]] = 1;

  Matrix values(spec.rows, spec.cols);
  for (std::size_t i = 0; i < total; ++i) {
    if (observed.data[i])
      values.data[i] = out.ground_truth.data[i] +
                       (spec.noise_sd > 0.0 ? rng.normal(0.0, spec.noise_sd) : 0.0);
  }
  out.observed = MaskedMatrix{std::move(values), std::move(observed)};

  // row similarity L * L^T rescaled into [0, 1]
  Matrix sim = matmul_nt(lf, lf);
  double lo = sim.data[0], hi = sim.data[0];
  for (double v : sim.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi > lo) {
    for (double& v : sim.data) v = (v - lo) / (hi - lo);
  } else {
    for (double& v : sim.data) v = 0.0;
  }
  out.row_similarity = sim;

  out.aux = Matrix(spec.rows, spec.rows);
  const double w = spec.aux_informativeness;
  for (std::size_t i = 0; i < out.aux.size(); ++i)
    out.aux.data[i] = w * sim.data[i] + (1.0 - w) * rng.uniform(0.0, 1.0);
  return out;
}

std::string manifest_string(const SynthSpec& s) {
  json j;
  j["kind"] = "synthetic-dataset";
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  j["rank"] = s.rank;
  j["density"] = s.density;
  j["noise_sd"] = s.noise_sd;
  j["aux_informativeness"] = s.aux_informativeness;
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

void save_manifest(const std::string& path, const SynthSpec& spec) {
  atomic_write_file(path, manifest_string(spec));
}

SynthSpec load_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  if (j.value("kind", "") != "synthetic-dataset")
    throw DataError(path + ": not a synthetic dataset manifest");
  SynthSpec s;
  try {
    s.rows = j.at("rows").get<std::size_t>();
    s.cols = j.at("cols").get<std::size_t>();
    s.rank = j.at("rank").get<std::size_t>();
    s.density = j.at("density").get<double>();
    s.noise_sd = j.at("noise_sd").get<double>();
    s.aux_informativeness = j.at("aux_informativeness").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  validate_synth_spec(s);
  return s;
}

}  // namespace sparseae
