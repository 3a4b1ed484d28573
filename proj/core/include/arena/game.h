#ifndef ARENA_GAME_H_
#define ARENA_GAME_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/types.h"

namespace arena {

// A turn-based zero-sum game session.
//
// The public surface is the game contract: PlayerDefinitions, GetNextAction,
// Update, IsOver and GetScores. The non-virtual entry points enforce the
// parts of the contract every game shares (terminal absorption, role and
// action checks, forfeits, provisional zero scores); concrete games implement
// the protected hooks.
class Game {
 public:
  virtual ~Game() = default;

  const std::string& name() const { return name_; }

  // Fixed for the lifetime of the session; order is seat order.
  virtual std::vector<PlayerRoleDef> PlayerDefinitions() const = 0;

  // Throws ContractError once the game is over.
  ActionRequest GetNextAction() const;

  // Applies `move` if it answers the pending request and is valid. On
  // acceptance sets move.parsed and returns nullopt. On rejection the session
  // is left exactly as it was.
  std::optional<Rejection> Update(Move& move);

  GameStatus IsOver() const;

  // Zeros for every role while the game is in progress.
  Scores GetScores() const;

  // Ends the game with `role` losing. Used by the manager when a player
  // exhausts its attempts.
  void Forfeit(std::string_view role);

  virtual std::unique_ptr<Game> Clone() const = 0;

  // Complete referee view of the state, canonical text. Two sessions with the
  // same StateView are in the same state.
  virtual std::string StateView() const = 0;

  // Legal answers to the pending request for games that can enumerate them
  // (chess, liar's dice). Empty for free-text games.
  virtual bool HasMoveEnumeration() const { return false; }
  virtual std::vector<std::string> LegalMoves() const { return {}; }

  // Free-text actions take the player's whole output as the move instead of
  // extracting a single move line.
  virtual bool IsFreeText(std::string_view /*action*/) const { return false; }

  virtual std::optional<VerificationRecord> verification() const {
    return std::nullopt;
  }

  std::vector<std::string> RoleNames() const;

 protected:
  explicit Game(std::string name) : name_(std::move(name)) {}
  Game(const Game&) = default;
  Game& operator=(const Game&) = default;

  virtual ActionRequest NextAction() const = 0;
  // Role and action of the pending request without building the observation.
  virtual std::pair<std::string, std::string> PendingTurn() const {
    ActionRequest r = NextAction();
    return {std::move(r.role), std::move(r.action)};
  }
  virtual std::optional<Rejection> Apply(Move& move) = 0;
  virtual GameStatus Status() const = 0;
  // Only called once Status() reports Over.
  virtual Scores FinalScores(const GameStatus& status) const = 0;

 private:
  std::string name_;
  std::optional<std::string> forfeited_role_;
};

}  // namespace arena

#endif  // ARENA_GAME_H_
