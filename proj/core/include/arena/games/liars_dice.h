#ifndef ARENA_GAMES_LIARS_DICE_H_
#define ARENA_GAMES_LIARS_DICE_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arena/game.h"

namespace arena {

namespace dice {

struct Bid {
  int quantity = 0;
  int face = 0;

  // Bids are ordered by quantity, then face.
  friend auto operator<=>(const Bid&, const Bid&) = default;
};

struct Call {
  friend bool operator==(const Call&, const Call&) = default;
};

using Action = std::variant<Bid, Call>;

// Grammar, case-insensitive: "bid <q> <face>", "<q> <face>s" (q may be a
// number word such as "three"), or "call". Range checks are left to the game.
std::variant<Action, Rejection> ParseAction(std::string_view raw);

std::string FormatBid(const Bid& bid);

}  // namespace dice

// Two-player, single-round Liar's Dice without wild ones. Each player rolls
// dice_per_player dice from the match seed and sees only their own hand.
// Bids must strictly increase; a call ends the game and the caller loses iff
// the bid face appears at least `quantity` times across both hands.
class LiarsDiceGame : public Game {
 public:
  static constexpr int kDefaultDicePerPlayer = 5;

  using Hand = std::vector<int>;

  LiarsDiceGame(uint64_t seed, int dice_per_player = kDefaultDicePerPlayer);
  LiarsDiceGame(std::array<Hand, 2> hands);

  std::vector<PlayerRoleDef> PlayerDefinitions() const override;
  std::unique_ptr<Game> Clone() const override;
  std::string StateView() const override;
  bool HasMoveEnumeration() const override { return true; }
  std::vector<std::string> LegalMoves() const override;

  const std::array<Hand, 2>& hands() const { return hands_; }
  const std::vector<dice::Bid>& bids() const { return bids_; }
  std::optional<dice::Bid> current_bid() const;
  int total_dice() const;
  int CountFace(int face) const;
  // Index of the losing player once the game is resolved.
  std::optional<int> loser() const { return loser_; }

 protected:
  ActionRequest NextAction() const override;
  std::pair<std::string, std::string> PendingTurn() const override;
  std::optional<Rejection> Apply(Move& move) override;
  GameStatus Status() const override;
  Scores FinalScores(const GameStatus& status) const override;

 private:
  int turn() const { return static_cast<int>(bids_.size() % 2); }

  std::array<Hand, 2> hands_;
  std::vector<dice::Bid> bids_;
  std::optional<int> loser_;
};

}  // namespace arena

#endif  // ARENA_GAMES_LIARS_DICE_H_
