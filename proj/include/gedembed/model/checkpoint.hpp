#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gedembed/graph.hpp"
#include "gedembed/model/model.hpp"

namespace gedembed {

struct Checkpoint {
  ModelConfig config;
  ModelParams params;
  std::optional<LabelVocab> vocab;
  nlohmann::json meta;  // free-form run metadata (seeds, loss mode, splits)
};

nlohmann::json config_to_json(const ModelConfig& cfg);
ModelConfig config_from_json(const nlohmann::json& j);

// JSON checkpoint with a config echo and flat tensors. Doubles are written in
// shortest round-trip form, so save followed by load is bit-exact.
void save_checkpoint(const std::string& path, const ModelParams& params, const ModelConfig& cfg,
                     const std::optional<LabelVocab>& vocab, const nlohmann::json& meta = {});
Checkpoint load_checkpoint(const std::string& path);

}  // namespace gedembed
