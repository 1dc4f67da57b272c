#include "sparseae/model_io.hpp"

#include <nlohmann/json.hpp>

#include "sparseae/csv.hpp"
#include "sparseae/errors.hpp"

namespace sparseae {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  m.data = j.at("data").get<std::vector<double>>();
  if (m.data.size() != m.rows * m.cols)
    throw DataError("model file: matrix payload size does not match its shape");
  return m;
}

json ae_to_json(const AeParams& p) {
  return json{{"enc_w", matrix_to_json(p.enc_w)},
              {"enc_b", p.enc_b},
              {"dec_w", matrix_to_json(p.dec_w)},
              {"dec_b", p.dec_b},
              {"enc_act", activation_name(p.enc_act)},
              {"dec_act", activation_name(p.dec_act)}};
}

AeParams ae_from_json(const json& j) {
  AeParams p;
  p.enc_w = matrix_from_json(j.at("enc_w"));
  p.enc_b = j.at("enc_b").get<std::vector<double>>();
  p.dec_w = matrix_from_json(j.at("dec_w"));
  p.dec_b = j.at("dec_b").get<std::vector<double>>();
  p.enc_act = activation_from_name(j.at("enc_act").get<std::string>());
  p.dec_act = activation_from_name(j.at("dec_act").get<std::string>());
  return p;
}

json layer_to_json(const DenseLayer& l) {
  return json{{"w", matrix_to_json(l.w)}, {"b", l.b}, {"act", activation_name(l.act)}};
}

DenseLayer layer_from_json(const json& j) {
  DenseLayer l;
  l.w = matrix_from_json(j.at("w"));
  l.b = j.at("b").get<std::vector<double>>();
  l.act = activation_from_name(j.at("act").get<std::string>());
  return l;
}

}  // namespace

Matrix predict(const TrainedModel& model, const MaskedMatrix& v, const Matrix* aux) {
  const MaskedMatrix scaled = model.norm.apply(v);
  Matrix pred;
  if (const auto* ae = std::get_if<AeParams>(&model.net)) {
    pred = ae_forward(*ae, scaled.values).out;
  } else if (const auto* net = std::get_if<LayerStack>(&model.net)) {
    pred = forward_stack(*net, scaled.values);
  } else {
    const auto& iae = std::get<IaeModel>(model.net);
    if (aux == nullptr)
      throw ConfigError("iae prediction requires the auxiliary matrix");
    pred = predict_iae(iae, scaled.values, *aux);
  }
  return model.norm.invert(pred);
}

std::string model_json_string(const TrainedModel& model) {
  json j;
  j["format"] = "sparseae-model";
  j["version"] = 1;
  j["algorithm"] = model.algorithm;
  j["normalizer"] = {{"scheme", norm_scheme_name(model.norm.scheme)},
                     {"p1", model.norm.p1},
                     {"p2", model.norm.p2}};
  j["train_config"] = {{"epochs", model.cfg.epochs},
                       {"lr", model.cfg.adam.lr},
                       {"beta1", model.cfg.adam.beta1},
                       {"beta2", model.cfg.adam.beta2},
                       {"epsilon", model.cfg.adam.epsilon},
                       {"corruption", corruption_kind_name(model.cfg.corruption.kind)},
                       {"corruption_level", model.cfg.corruption.level},
                       {"seed", model.cfg.seed},
                       {"dense_target_loss", model.cfg.dense_target_loss}};

  if (const auto* ae = std::get_if<AeParams>(&model.net)) {
    j["ae"] = ae_to_json(*ae);
  } else if (const auto* net = std::get_if<LayerStack>(&model.net)) {
    json layers = json::array();
    for (const DenseLayer& l : *net) layers.push_back(layer_to_json(l));
    j["layers"] = layers;
  } else {
    const auto& iae = std::get<IaeModel>(model.net);
    j["iae"] = {{"aux_ae", ae_to_json(iae.aux_ae)},
                {"joint_ae", ae_to_json(iae.joint_ae)},
                {"l2_penalty", iae.l2_penalty},
                {"target_cols", iae.target_cols}};
  }
  return j.dump(2) + "\n";
}

void save_model(const std::string& path, const TrainedModel& model) {
  atomic_write_file(path, model_json_string(model));
}

TrainedModel load_model(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  try {
    if (j.value("format", "") != "sparseae-model")
      throw DataError(path + ": not a model file");
    TrainedModel m;
    m.algorithm = j.at("algorithm").get<std::string>();
    const json& n = j.at("normalizer");
    m.norm.scheme = norm_scheme_from_name(n.at("scheme").get<std::string>());
    m.norm.p1 = n.at("p1").get<double>();
    m.norm.p2 = n.at("p2").get<double>();
    const json& tc = j.at("train_config");
    m.cfg.epochs = tc.at("epochs").get<int>();
    m.cfg.adam.lr = tc.at("lr").get<double>();
    m.cfg.adam.beta1 = tc.at("beta1").get<double>();
    m.cfg.adam.beta2 = tc.at("beta2").get<double>();
    m.cfg.adam.epsilon = tc.at("epsilon").get<double>();
    m.cfg.corruption.kind = corruption_kind_from_name(tc.at("corruption").get<std::string>());
    m.cfg.corruption.level = tc.at("corruption_level").get<double>();
    m.cfg.seed = tc.at("seed").get<std::uint64_t>();
    m.cfg.dense_target_loss = tc.at("dense_target_loss").get<bool>();

    if (j.contains("ae")) {
      m.net = ae_from_json(j.at("ae"));
    } else if (j.contains("layers")) {
      LayerStack net;
      for (const json& l : j.at("layers")) net.push_back(layer_from_json(l));
      m.net = std::move(net);
    } else if (j.contains("iae")) {
      const json& q = j.at("iae");
      IaeModel iae;
      iae.aux_ae = ae_from_json(q.at("aux_ae"));
      iae.joint_ae = ae_from_json(q.at("joint_ae"));
      iae.l2_penalty = q.at("l2_penalty").get<double>();
      iae.target_cols = q.at("target_cols").get<std::size_t>();
      m.net = std::move(iae);
    } else {
      throw DataError(path + ": model file carries no network payload");
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace sparseae
