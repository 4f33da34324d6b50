#pragma once

#include <string>

#include <json.hpp>

#include "cc/datagen.hpp"
#include "cc/eval.hpp"
#include "cc/trainer.hpp"

namespace cc {

// Parsers default every missing field to the values above, so an empty JSON
// object yields the stock configuration. Unknown keys are rejected.
TrainConfig train_config_from_json(const nlohmann::json& j);
nlohmann::json train_config_to_json(const TrainConfig& cfg);

GenParams gen_params_from_json(const nlohmann::json& j);
nlohmann::json gen_params_to_json(const GenParams& p);

struct Checkpoint {
  TrainConfig config;
  Encoder encoder;
  std::string rng_state;
  std::vector<EpochReport> reports;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

std::string epoch_report_json_line(const EpochReport& r);

nlohmann::json eval_report_to_json(const EvalReport& r);

RetrievalSplit split_from_json(const nlohmann::json& j);
nlohmann::json split_to_json(const RetrievalSplit& s);

}  // namespace cc
