#include "gedembed/model/checkpoint.hpp"

#include <fstream>

#include "gedembed/errors.hpp"

namespace gedembed {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "gedembed-checkpoint";
constexpr int kVersion = 1;

json tensor_to_json(const Tensor& t) {
  return json{{"rows", t.rows}, {"cols", t.cols}, {"data", t.data}};
}

Tensor tensor_from_json(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw_parse("checkpoint: tensor '" + what + "' is malformed");
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  std::vector<double> data = j.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || data.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
    throw_parse("checkpoint: tensor '" + what + "' has inconsistent shape");
  return Tensor(rows, cols, std::move(data));
}

json tensor_list(const std::vector<Tensor>& ts) {
  json arr = json::array();
  for (const Tensor& t : ts) arr.push_back(tensor_to_json(t));
  return arr;
}

std::vector<Tensor> tensor_list_from(const json& j, const std::string& what) {
  if (!j.is_array()) throw_parse("checkpoint: '" + what + "' must be an array");
  std::vector<Tensor> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(tensor_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

json config_to_json(const ModelConfig& cfg) {
  return json{{"gin_dims", cfg.gin_dims},
              {"epsilon_mode", to_string(cfg.epsilon_mode)},
              {"epsilon_value", cfg.epsilon_value},
              {"pooling", to_string(cfg.pooling)},
              {"head_hidden", cfg.head_hidden},
              {"embed_dim", cfg.embed_dim},
              {"input_dim", cfg.input_dim}};
}

ModelConfig config_from_json(const json& j) {
  ModelConfig cfg;
  if (!j.is_object()) throw_parse("model config: expected a JSON object");
  if (j.contains("gin_dims")) cfg.gin_dims = j.at("gin_dims").get<std::vector<int>>();
  if (j.contains("epsilon_mode"))
    cfg.epsilon_mode = parse_epsilon_mode(j.at("epsilon_mode").get<std::string>());
  if (j.contains("epsilon_value")) cfg.epsilon_value = j.at("epsilon_value").get<double>();
  if (j.contains("pooling")) cfg.pooling = parse_pooling(j.at("pooling").get<std::string>());
  if (j.contains("head_hidden")) cfg.head_hidden = j.at("head_hidden").get<std::vector<int>>();
  if (j.contains("embed_dim")) cfg.embed_dim = j.at("embed_dim").get<int>();
  if (j.contains("input_dim")) cfg.input_dim = j.at("input_dim").get<int>();
  cfg.validate();
  return cfg;
}

void save_checkpoint(const std::string& path, const ModelParams& params, const ModelConfig& cfg,
                     const std::optional<LabelVocab>& vocab, const json& meta) {
  json gin = json::array();
  for (const GinLayerParams& layer : params.gin)
    gin.push_back(json{{"w1", tensor_to_json(layer.w1)},
                       {"b1", tensor_to_json(layer.b1)},
                       {"w2", tensor_to_json(layer.w2)},
                       {"b2", tensor_to_json(layer.b2)},
                       {"eps", tensor_to_json(layer.eps)}});
  json doc{{"format", kFormat},
           {"version", kVersion},
           {"config", config_to_json(cfg)},
           {"vocab", vocab ? json(vocab->labels) : json(nullptr)},
           {"meta", meta.is_null() ? json::object() : meta},
           {"params",
            json{{"gin", std::move(gin)},
                 {"theta", tensor_list(params.theta)},
                 {"head_w", tensor_list(params.head_w)},
                 {"head_b", tensor_list(params.head_b)},
                 {"class_w", tensor_list(params.class_w)},
                 {"class_b", tensor_list(params.class_b)}}}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_validation("cannot open checkpoint file for writing: " + path);
  out << doc.dump(1, '\t') << "\n";
  if (!out) throw_resource("failed writing checkpoint file: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open checkpoint file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw_parse("checkpoint '" + path + "': " + e.what());
  }
  if (!doc.is_object() || doc.value("format", std::string()) != kFormat)
    throw_parse("checkpoint '" + path + "': not a " + std::string(kFormat) + " file");
  if (doc.value("version", -1) != kVersion)
    throw_parse("checkpoint '" + path + "': unsupported version");
  Checkpoint ck;
  try {
    ck.config = config_from_json(doc.at("config"));
    const json& p = doc.at("params");
    const json& gin = p.at("gin");
    if (!gin.is_array() || gin.size() != ck.config.gin_dims.size())
      throw_parse("checkpoint: gin layer count does not match config");
    for (size_t k = 0; k < gin.size(); ++k) {
      std::string what = "gin[" + std::to_string(k) + "]";
      GinLayerParams layer;
      layer.w1 = tensor_from_json(gin[k].at("w1"), what + ".w1");
      layer.b1 = tensor_from_json(gin[k].at("b1"), what + ".b1");
      layer.w2 = tensor_from_json(gin[k].at("w2"), what + ".w2");
      layer.b2 = tensor_from_json(gin[k].at("b2"), what + ".b2");
      layer.eps = tensor_from_json(gin[k].at("eps"), what + ".eps");
      ck.params.gin.push_back(std::move(layer));
    }
    ck.params.theta = tensor_list_from(p.at("theta"), "theta");
    ck.params.head_w = tensor_list_from(p.at("head_w"), "head_w");
    ck.params.head_b = tensor_list_from(p.at("head_b"), "head_b");
    ck.params.class_w = tensor_list_from(p.at("class_w"), "class_w");
    ck.params.class_b = tensor_list_from(p.at("class_b"), "class_b");
    if (ck.params.theta.size() != ck.config.gin_dims.size())
      throw_parse("checkpoint: theta count does not match config");
    if (ck.params.head_w.size() != ck.config.head_hidden.size() + 1 ||
        ck.params.head_b.size() != ck.params.head_w.size())
      throw_parse("checkpoint: head layer count does not match config");
    const json& vocab = doc.at("vocab");
    if (!vocab.is_null()) ck.vocab = LabelVocab{vocab.get<std::vector<std::string>>()};
    ck.meta = doc.value("meta", json::object());
  } catch (const json::exception& e) {
    throw_parse("checkpoint '" + path + "': " + e.what());
  }
  return ck;
}

}  // namespace gedembed
