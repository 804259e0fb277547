#pragma once

#include <deque>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cursamp/errors.hpp"
#include "cursamp/sampler_registry.hpp"

namespace cursamp {

inline constexpr const char* kCheckpointFormat = "cursamp-registry/1";

inline nlohmann::json to_json(const CurriculumConfig& cfg) {
  return nlohmann::json{{"alpha", cfg.alpha},
                        {"epsilon", cfg.epsilon},
                        {"window_c", cfg.window_c},
                        {"n_epoch", cfg.n_epoch},
                        {"batch_size", cfg.batch_size}};
}

inline CurriculumConfig curriculum_config_from_json(const nlohmann::json& j) {
  CurriculumConfig cfg;
  try {
    cfg.alpha = j.at("alpha").get<double>();
    cfg.epsilon = j.at("epsilon").get<double>();
    cfg.window_c = j.at("window_c").get<std::size_t>();
    cfg.n_epoch = j.at("n_epoch").get<std::size_t>();
    cfg.batch_size = j.at("batch_size").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

/// Checkpoint document: config, epoch_index and one {id, losses, visits}
/// entry per sample. Doubles are written in shortest round-trip form so a
/// restored registry is bit-identical.
inline nlohmann::json to_json(const SamplerRegistry& registry) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : registry.states()) {
    states.push_back({{"id", s.id()},
                      {"losses", std::vector<double>(s.recent_losses().begin(),
                                                     s.recent_losses().end())},
                      {"visits", s.visit_count()}});
  }
  return nlohmann::json{{"format", kCheckpointFormat},
                        {"config", to_json(registry.config())},
                        {"epoch_index", registry.epoch_index()},
                        {"states", std::move(states)}};
}

inline SamplerRegistry registry_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("format", std::string{}) != kCheckpointFormat) {
    throw ValidationError(std::string("format: expected ") + kCheckpointFormat);
  }
  const auto cfg = curriculum_config_from_json(doc.at("config"));
  std::vector<SampleState> states;
  try {
    const auto& arr = doc.at("states");
    states.reserve(arr.size());
    for (const auto& entry : arr) {
      auto losses = entry.at("losses").get<std::vector<double>>();
      states.push_back(SampleState::restore(entry.at("id").get<SampleId>(), cfg.window_c,
                                            std::deque<double>(losses.begin(), losses.end()),
                                            entry.at("visits").get<std::uint64_t>()));
    }
    return SamplerRegistry(cfg, std::move(states), doc.at("epoch_index").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("states: ") + e.what());
  }
}

inline std::string dump_checkpoint(const SamplerRegistry& registry) {
  return to_json(registry).dump(2) + "\n";
}

inline SamplerRegistry load_checkpoint(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("checkpoint: ") + e.what());
  }
  return registry_from_json(doc);
}

}  // namespace cursamp
