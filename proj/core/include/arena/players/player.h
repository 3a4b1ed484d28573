#ifndef ARENA_PLAYERS_PLAYER_H_
#define ARENA_PLAYERS_PLAYER_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arena/errors.h"
#include "arena/game.h"

namespace arena {

struct AttemptPolicy {
  int max_attempts = 3;
  bool include_prior_feedback = true;
};

// Replays a fixed list of moves. moves_by_role, when it has an entry for the
// acting role, takes precedence over the shared list, which lets one scripted
// model play either seat.
struct ScriptedBackend {
  std::vector<std::string> moves;
  std::map<std::string, std::vector<std::string>> moves_by_role;
};

// Uniform choice over the game's legal-move enumeration.
struct RandomBackend {
  uint64_t seed = 0;
};

// "greedy-material": delivers mate in one when available, otherwise the
// capture or promotion that wins the most material, ties broken at random.
// Chess only.
struct HeuristicBackend {
  std::string name = "greedy-material";
  uint64_t seed = 0;
};

// OpenAI-compatible chat completions endpoint. The API key is read from the
// environment variable named by api_key_env at request time.
struct RemoteBackend {
  std::string endpoint;
  std::string model;
  std::string api_key_env;
  double temperature = 0.0;
  int max_tokens = 1024;
};

using BackendSpec =
    std::variant<ScriptedBackend, RandomBackend, HeuristicBackend, RemoteBackend>;

std::string_view BackendKind(const BackendSpec& backend);

struct PlayerSpec {
  std::string id;
  std::string role;
  BackendSpec backend;
  AttemptPolicy attempt_policy;
};

// What the player produced last time and why the game refused it.
struct PriorFeedback {
  std::string previous_output;
  std::string feedback;
};

// Transport-level failure talking to a remote backend, after retries.
class BackendUnavailable : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class EmptyOutput : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class ScriptExhausted : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

struct TransportOptions {
  int max_tries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
};

// Text after the last line starting with "Move:", else the last non-empty
// line, trimmed. Throws EmptyOutput when there is no non-empty line.
std::string ExtractMove(std::string_view model_output);

class Player {
 public:
  explicit Player(PlayerSpec spec) : spec_(std::move(spec)) {}
  virtual ~Player() = default;

  const PlayerSpec& spec() const { return spec_; }

  // Answers `request` without touching `game`. Throws ContractError when the
  // request is for another role.
  Move Act(const ActionRequest& request, const Game& game,
           const std::optional<PriorFeedback>& feedback);

 protected:
  virtual std::string Answer(const ActionRequest& request, const Game& game,
                             const std::optional<PriorFeedback>& feedback) = 0;

  // Number of Act calls so far in this match, starting at 0.
  uint64_t request_index() const { return request_index_; }

 private:
  PlayerSpec spec_;
  uint64_t request_index_ = 0;
};

// Builds the runtime player. `match_seed` is mixed into random and heuristic
// seeds so every match of a pool plays differently yet reproducibly.
std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec, uint64_t match_seed = 0,
                                   const TransportOptions& transport = {});

// Throws ConfigError when the backend cannot play `game` (random needs a
// legal-move enumeration, the heuristic needs chess).
void CheckBackendSupportsGame(const BackendSpec& backend, const Game& game);

}  // namespace arena

#endif  // ARENA_PLAYERS_PLAYER_H_
