#pragma once

#include <string>
#include <variant>

#include "sparseae/autoencoder.hpp"
#include "sparseae/dataset.hpp"
#include "sparseae/iae.hpp"
#include "sparseae/stack.hpp"

namespace sparseae {

/// A trained predictor plus everything needed to run it on new data:
/// the network, the value-space transform it was trained in, and the
/// training configuration snapshot.
struct TrainedModel {
  std::string algorithm;  // ae | dae | sae | sdae | iae
  std::variant<AeParams, LayerStack, IaeModel> net;
  Normalizer norm;
  TrainConfig cfg;
};

/// Dense prediction for every cell of v, in original units. `aux` is
/// required for the iae and ignored otherwise.
Matrix predict(const TrainedModel& model, const MaskedMatrix& v, const Matrix* aux = nullptr);

std::string model_json_string(const TrainedModel& model);
void save_model(const std::string& path, const TrainedModel& model);
TrainedModel load_model(const std::string& path);

}  // namespace sparseae
