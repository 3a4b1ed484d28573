#include "arena/games/chess_game.h"

#include <variant>

namespace arena {

namespace {

constexpr std::string_view kRules =
    "You are playing chess. Reply with exactly one move for your side in "
    "standard algebraic notation (e.g. Nf3, exd5, O-O, e8=Q) or UCI "
    "coordinates (e.g. g1f3). End your answer with a line of the form "
    "'Move: <move>'. Illegal or unreadable moves are rejected with feedback; "
    "repeated failures forfeit the game.";

std::string RoleOf(chess::Color c) { return std::string(chess::ColorName(c)); }

}  // namespace

ChessGame::ChessGame(chess::BoardState start, int max_plies)
    : Game("chess"), state_(std::move(start)), max_plies_(max_plies) {
  Refresh();
}

std::vector<PlayerRoleDef> ChessGame::PlayerDefinitions() const {
  return {{"white", {"make_move"}, std::nullopt},
          {"black", {"make_move"}, std::nullopt}};
}

std::unique_ptr<Game> ChessGame::Clone() const {
  return std::make_unique<ChessGame>(*this);
}

std::string ChessGame::StateView() const { return chess::ToFen(state_.board); }

std::vector<std::string> ChessGame::LegalMoves() const {
  std::vector<std::string> out;
  if (IsOver().over()) return out;
  for (const chess::ChessMove& m : chess::LegalMoves(state_.board)) {
    out.push_back(m.ToUci());
  }
  return out;
}

ActionRequest ChessGame::NextAction() const {
  const chess::Board& b = state_.board;
  const std::string role = RoleOf(b.side_to_move);
  Observation obs;
  obs.rules = std::string(kRules);
  obs.state = "You play " + role + ".\nPosition (FEN): " + chess::ToFen(b) +
              "\n" + chess::RenderBoard(b);
  if (chess::InCheck(b)) obs.state += "\nYou are in check.";
  std::string history;
  for (size_t i = 0; i < moves_played_.size(); ++i) {
    if (i > 0) history += ' ';
    history += moves_played_[i];
  }
  obs.history = history;
  return {"make_move", role, std::move(obs)};
}

std::pair<std::string, std::string> ChessGame::PendingTurn() const {
  return {RoleOf(state_.board.side_to_move), "make_move"};
}

std::optional<Rejection> ChessGame::Apply(Move& move) {
  auto parsed = chess::ParseMove(state_.board, move.raw);
  if (auto* rejection = std::get_if<Rejection>(&parsed)) return *rejection;
  const chess::ChessMove m = std::get<chess::ChessMove>(parsed);
  chess::MakeMove(state_.board, m);
  state_.history.push_back(chess::PositionKey(state_.board));
  move.parsed = m.ToUci();
  moves_played_.push_back(move.parsed);
  Refresh();
  return std::nullopt;
}

void ChessGame::Refresh() { termination_ = chess::TerminalStatus(state_); }

GameStatus ChessGame::Status() const {
  if (termination_.status.over()) return termination_.status;
  if (static_cast<int>(moves_played_.size()) >= max_plies_) {
    return GameStatus::Over(std::string(reason::kMaxTurns));
  }
  return GameStatus::InProgress();
}

Scores ChessGame::FinalScores(const GameStatus& status) const {
  if (status == termination_.status && termination_.winner) {
    const chess::Color w = *termination_.winner;
    return {{RoleOf(w), 1.0}, {RoleOf(chess::Opponent(w)), 0.0}};
  }
  return {{"white", 0.5}, {"black", 0.5}};
}

}  // namespace arena
