#ifndef ARENA_GAMES_CHESS_GAME_H_
#define ARENA_GAMES_CHESS_GAME_H_

#include <memory>
#include <string>
#include <vector>

#include "arena/chess/board.h"
#include "arena/game.h"

namespace arena {

// Chess between roles "white" and "black", one make_move action each.
// Moves may be given in UCI or SAN; the game ends automatically on checkmate,
// stalemate, insufficient material, the fifty-move rule, threefold
// repetition, or after max_plies half-moves (adjudicated draw).
class ChessGame : public Game {
 public:
  static constexpr int kDefaultMaxPlies = 200;

  explicit ChessGame(chess::BoardState start = chess::InitialState(),
                     int max_plies = kDefaultMaxPlies);

  std::vector<PlayerRoleDef> PlayerDefinitions() const override;
  std::unique_ptr<Game> Clone() const override;
  std::string StateView() const override;
  bool HasMoveEnumeration() const override { return true; }
  std::vector<std::string> LegalMoves() const override;

  const chess::BoardState& state() const { return state_; }
  const std::vector<std::string>& moves_played() const { return moves_played_; }
  int max_plies() const { return max_plies_; }

 protected:
  ActionRequest NextAction() const override;
  std::pair<std::string, std::string> PendingTurn() const override;
  std::optional<Rejection> Apply(Move& move) override;
  GameStatus Status() const override;
  Scores FinalScores(const GameStatus& status) const override;

 private:
  void Refresh();

  chess::BoardState state_;
  int max_plies_;
  std::vector<std::string> moves_played_;
  chess::Termination termination_;
};

}  // namespace arena

#endif  // ARENA_GAMES_CHESS_GAME_H_
