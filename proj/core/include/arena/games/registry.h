#ifndef ARENA_GAMES_REGISTRY_H_
#define ARENA_GAMES_REGISTRY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/game.h"

namespace arena {

struct GameParams {
  // Drives every random choice the game makes (dice, passwords, targets).
  uint64_t seed = 0;
  // Overrides the game's ply / exchange cap when set.
  std::optional<int> max_turns;
  // Game-specific options; null means none. Unknown keys are a ConfigError.
  nlohmann::json options = nlohmann::json::object();
};

// Throws ConfigError for unknown games or invalid options.
std::unique_ptr<Game> MakeGame(std::string_view name, const GameParams& params);

// Validates options without building a session.
void ValidateGameOptions(std::string_view name, const nlohmann::json& options);

const std::vector<std::string>& KnownGames();

}  // namespace arena

#endif  // ARENA_GAMES_REGISTRY_H_
