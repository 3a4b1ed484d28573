#ifndef ARENA_CONFIG_H_
#define ARENA_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/pool.h"
#include "arena/rating.h"

namespace arena {

struct PoolSettings {
  std::string pool_id = "pool";
  int games_per_ordered_pair = 1;
  int max_parallel = 4;
  uint64_t seed = 0;
};

struct RatingSettings {
  double virtual_draws = 1.0;
  int bootstrap_resamples = 0;
  double confidence = 0.95;
  uint64_t seed = 0;
};

// The JSON configuration file. Every field is checked before anything runs;
// errors name the offending path, e.g. "models[1].endpoint: must be a string".
struct RootConfig {
  std::vector<ModelSpec> models;
  std::vector<GameSpec> games;
  PoolSettings pool;
  AttemptPolicy player;
  RatingSettings rating;
  TransportOptions transport;

  const ModelSpec* FindModel(const std::string& name) const;
  const GameSpec* FindGame(const std::string& name) const;
  PoolConfig ToPoolConfig() const;
};

// Throws ConfigError.
RootConfig ParseRootConfig(const nlohmann::json& json);
// Throws ConfigError, including for unreadable files and invalid JSON.
RootConfig LoadRootConfig(const std::filesystem::path& path);

}  // namespace arena

#endif  // ARENA_CONFIG_H_
