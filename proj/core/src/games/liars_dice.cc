#include "arena/games/liars_dice.h"

#include <algorithm>
#include <charconv>

#include "arena/errors.h"
#include "arena/random.h"
#include "arena/text.h"

namespace arena {
namespace dice {
namespace {

constexpr std::array<std::string_view, 13> kNumberWords = {
    "zero", "one", "two",   "three",  "four",   "five",  "six",
    "seven", "eight", "nine", "ten", "eleven", "twelve"};
constexpr std::array<std::string_view, 7> kFaceWords = {
    "", "ones", "twos", "threes", "fours", "fives", "sixes"};

std::optional<int> ParseCount(std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc() && ptr == token.data() + token.size()) return value;
  for (size_t i = 0; i < kNumberWords.size(); ++i) {
    if (token == kNumberWords[i]) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> ParseFace(std::string_view token) {
  for (size_t i = 1; i < kFaceWords.size(); ++i) {
    if (token == kFaceWords[i]) return static_cast<int>(i);
  }
  if (token.ends_with("'s")) {
    token.remove_suffix(2);
  } else if (token.ends_with("s")) {
    token.remove_suffix(1);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc() && ptr == token.data() + token.size()) return value;
  return std::nullopt;
}

}  // namespace

std::variant<Action, Rejection> ParseAction(std::string_view raw) {
  std::string text = ToLower(Trim(raw));
  while (!text.empty() && (text.back() == '.' || text.back() == '!')) text.pop_back();
  std::vector<std::string_view> tokens = SplitWhitespace(text);
  const auto format_error = Rejection::Format(
      "could not read action '" + std::string(Trim(raw)) +
      "'; answer 'bid <quantity> <face>' or 'call'");
  if (tokens.size() == 1 && tokens[0] == "call") return Action{Call{}};
  if (!tokens.empty() && tokens[0] == "bid") tokens.erase(tokens.begin());
  if (tokens.size() != 2) return format_error;
  std::optional<int> quantity = ParseCount(tokens[0]);
  std::optional<int> face = ParseFace(tokens[1]);
  if (!quantity || !face) return format_error;
  return Action{Bid{*quantity, *face}};
}

std::string FormatBid(const Bid& bid) {
  return "bid " + std::to_string(bid.quantity) + " " + std::to_string(bid.face);
}

}  // namespace dice

namespace {

constexpr std::string_view kRules =
    "Liar's Dice for two players. Each player has a hidden hand of dice. "
    "Players alternate; on your turn either raise the bid or call the "
    "previous bid a bluff. A bid 'q f' claims that at least q dice across "
    "BOTH hands show face f. A new bid must have a higher quantity, or the "
    "same quantity and a higher face. Ones are not wild. After a call all "
    "dice are revealed: if the bid holds the caller loses, otherwise the "
    "bidder loses. Answer 'bid <quantity> <face>' or 'call', ending with "
    "'Move: <action>'.";

std::string RoleName(int index) { return "player_" + std::to_string(index); }

std::string HandText(const LiarsDiceGame::Hand& hand) {
  std::string out;
  for (size_t i = 0; i < hand.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(hand[i]);
  }
  return out;
}

}  // namespace

LiarsDiceGame::LiarsDiceGame(uint64_t seed, int dice_per_player)
    : Game("liars_dice") {
  if (dice_per_player < 1) throw ConfigError("dice_per_player must be >= 1");
  Rng rng(DeriveSeed({seed, 0xD1CE}));
  for (Hand& hand : hands_) {
    for (int i = 0; i < dice_per_player; ++i) {
      hand.push_back(static_cast<int>(rng.UniformRange(1, 6)));
    }
    std::sort(hand.begin(), hand.end());
  }
}

LiarsDiceGame::LiarsDiceGame(std::array<Hand, 2> hands)
    : Game("liars_dice"), hands_(std::move(hands)) {
  for (const Hand& hand : hands_) {
    if (hand.empty()) throw ConfigError("liar's dice hands must not be empty");
    for (int face : hand) {
      if (face < 1 || face > 6) throw ConfigError("die faces must be in 1..6");
    }
  }
}

std::vector<PlayerRoleDef> LiarsDiceGame::PlayerDefinitions() const {
  return {{"player_0", {"bid_or_call"}, std::nullopt},
          {"player_1", {"bid_or_call"}, std::nullopt}};
}

std::unique_ptr<Game> LiarsDiceGame::Clone() const {
  return std::make_unique<LiarsDiceGame>(*this);
}

std::optional<dice::Bid> LiarsDiceGame::current_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.back();
}

int LiarsDiceGame::total_dice() const {
  return static_cast<int>(hands_[0].size() + hands_[1].size());
}

int LiarsDiceGame::CountFace(int face) const {
  int count = 0;
  for (const Hand& hand : hands_) {
    count += static_cast<int>(std::count(hand.begin(), hand.end(), face));
  }
  return count;
}

std::string LiarsDiceGame::StateView() const {
  std::string out = "hands: [" + HandText(hands_[0]) + "] [" +
                    HandText(hands_[1]) + "]\nbids:";
  for (const dice::Bid& bid : bids_) {
    out += ' ' + std::to_string(bid.quantity) + 'x' + std::to_string(bid.face);
  }
  if (loser_) out += "\ncalled; loser: " + RoleName(*loser_);
  return out;
}

std::vector<std::string> LiarsDiceGame::LegalMoves() const {
  std::vector<std::string> out;
  if (IsOver().over()) return out;
  const std::optional<dice::Bid> current = current_bid();
  for (int q = 1; q <= total_dice(); ++q) {
    for (int f = 1; f <= 6; ++f) {
      const dice::Bid bid{q, f};
      if (!current || *current < bid) out.push_back(dice::FormatBid(bid));
    }
  }
  if (current) out.push_back("call");
  return out;
}

ActionRequest LiarsDiceGame::NextAction() const {
  const int me = turn();
  Observation obs;
  obs.rules = std::string(kRules);
  obs.state = "You are " + RoleName(me) + ".\nYour dice: " + HandText(hands_[me]) +
              "\nYour opponent holds " + std::to_string(hands_[1 - me].size()) +
              " hidden dice (" + std::to_string(total_dice()) + " in play).\n";
  if (const auto bid = current_bid()) {
    obs.state += "Current bid: " + std::to_string(bid->quantity) + " x " +
                 std::to_string(bid->face) + "s";
  } else {
    obs.state += "No bid yet; you must open with a bid.";
  }
  std::string history;
  for (size_t i = 0; i < bids_.size(); ++i) {
    if (i > 0) history += '\n';
    history += RoleName(static_cast<int>(i % 2)) + ": " + dice::FormatBid(bids_[i]);
  }
  obs.history = history;
  return {"bid_or_call", RoleName(me), std::move(obs)};
}

std::pair<std::string, std::string> LiarsDiceGame::PendingTurn() const {
  return {RoleName(turn()), "bid_or_call"};
}

std::optional<Rejection> LiarsDiceGame::Apply(Move& move) {
  auto parsed = dice::ParseAction(move.raw);
  if (auto* rejection = std::get_if<Rejection>(&parsed)) return *rejection;
  const dice::Action action = std::get<dice::Action>(parsed);
  const std::optional<dice::Bid> current = current_bid();

  if (std::holds_alternative<dice::Call>(action)) {
    if (!current) return Rejection::Rule("cannot call: there is no bid yet");
    const int caller = turn();
    const int bidder = 1 - caller;
    loser_ = CountFace(current->face) >= current->quantity ? caller : bidder;
    move.parsed = "call";
    return std::nullopt;
  }

  const dice::Bid bid = std::get<dice::Bid>(action);
  if (bid.face < 1 || bid.face > 6) {
    return Rejection::Rule("bid face must be between 1 and 6");
  }
  if (bid.quantity < 1) return Rejection::Rule("bid quantity must be at least 1");
  if (bid.quantity > total_dice()) {
    return Rejection::Rule("bid quantity exceeds the " +
                           std::to_string(total_dice()) + " dice in play");
  }
  if (current && !(*current < bid)) {
    return Rejection::Rule("bid does not increase: raise the quantity, or keep "
                           "it and raise the face");
  }
  bids_.push_back(bid);
  move.parsed = dice::FormatBid(bid);
  return std::nullopt;
}

GameStatus LiarsDiceGame::Status() const {
  if (loser_) return GameStatus::Over("call");
  return GameStatus::InProgress();
}

Scores LiarsDiceGame::FinalScores(const GameStatus&) const {
  return {{RoleName(*loser_), 0.0}, {RoleName(1 - *loser_), 1.0}};
}

}  // namespace arena
