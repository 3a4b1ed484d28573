#ifndef ARENA_MANAGER_H_
#define ARENA_MANAGER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/players/player.h"
#include "arena/transcript.h"
#include "arena/types.h"

namespace arena {

struct MatchConfig {
  std::string match_id;
  std::string game;
  uint64_t seed = 0;
  std::optional<int> max_turns;
  nlohmann::json game_options = nlohmann::json::object();
  // Exactly one per role of the game.
  std::vector<PlayerSpec> players;
};

struct AttemptStats {
  int attempts = 0;
  int accepted = 0;
  int rejected = 0;
  // Most attempts spent on a single move.
  int max_attempts_for_move = 0;

  friend bool operator==(const AttemptStats&, const AttemptStats&) = default;
};

struct MatchResult {
  std::string match_id;
  std::string game;
  // role -> player id, in seat order.
  std::vector<std::pair<std::string, std::string>> seats;
  Scores scores;
  // Player id of the winner; nullopt for draws and aborted matches.
  std::optional<std::string> winner;
  bool draw = false;
  bool aborted = false;
  std::string reason;
  int move_count = 0;
  std::map<std::string, AttemptStats> attempts;

  nlohmann::json ToJson() const;
};

struct RunOptions {
  // Milliseconds since the epoch for transcript timestamps; unset means no
  // timestamps are recorded.
  std::function<int64_t()> clock;
  TransportOptions transport;
};

struct MatchRun {
  MatchResult result;
  std::vector<TranscriptEvent> events;
};

// Throws ConfigError when the game, its options or the seating is invalid.
void ValidateMatchConfig(const MatchConfig& config);

// Plays one match to completion. Rejected moves are retried with feedback up
// to the player's attempt budget, after which the player forfeits. A backend
// that stays unreachable aborts the match.
MatchRun RunMatch(const MatchConfig& config, const RunOptions& options = {});

// Wall clock in milliseconds since the Unix epoch.
int64_t SystemClockMillis();

}  // namespace arena

#endif  // ARENA_MANAGER_H_
