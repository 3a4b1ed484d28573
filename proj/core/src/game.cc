#include "arena/game.h"

#include <algorithm>

#include "arena/errors.h"
#include "arena/text.h"

namespace arena {

std::string_view RejectionCodeName(RejectionCode code) {
  switch (code) {
    case RejectionCode::kFormat:
      return "format";
    case RejectionCode::kRule:
      return "rule";
    case RejectionCode::kContract:
      return "contract";
  }
  return "unknown";
}

std::string Observation::ToText() const {
  std::string out;
  out += "## Rules\n";
  out += rules;
  out += "\n\n## State\n";
  out += state;
  out += "\n\n## History\n";
  out += history.empty() ? "(none)" : history;
  out += "\n";
  return out;
}

ActionRequest Game::GetNextAction() const {
  if (IsOver().over()) {
    throw ContractError("get_next_action called on a finished " + name_ +
                        " game");
  }
  return NextAction();
}

std::optional<Rejection> Game::Update(Move& move) {
  if (IsOver().over()) {
    return Rejection::Contract("the game is already over");
  }
  const auto [role, action] = PendingTurn();
  if (move.role != role) {
    return Rejection::Contract("it is " + role + "'s turn, not " + move.role +
                               "'s");
  }
  if (move.action != action) {
    return Rejection::Contract("expected action " + action + ", got " +
                               move.action);
  }
  if (Trim(move.raw).empty()) {
    return Rejection::Format("empty move");
  }
  return Apply(move);
}

GameStatus Game::IsOver() const {
  if (forfeited_role_) return GameStatus::Over(std::string(reason::kForfeit));
  return Status();
}

Scores Game::GetScores() const {
  Scores scores;
  const std::vector<std::string> roles = RoleNames();
  if (forfeited_role_) {
    for (const std::string& role : roles) {
      scores[role] = role == *forfeited_role_ ? 0.0 : 1.0;
    }
    return scores;
  }
  const GameStatus status = Status();
  if (!status.over()) {
    for (const std::string& role : roles) scores[role] = 0.0;
    return scores;
  }
  return FinalScores(status);
}

void Game::Forfeit(std::string_view role) {
  const std::vector<std::string> roles = RoleNames();
  if (std::find(roles.begin(), roles.end(), role) == roles.end()) {
    throw ContractError("unknown role " + std::string(role));
  }
  if (IsOver().over()) {
    throw ContractError("cannot forfeit a finished game");
  }
  forfeited_role_ = std::string(role);
}

std::vector<std::string> Game::RoleNames() const {
  std::vector<std::string> names;
  for (const PlayerRoleDef& def : PlayerDefinitions()) {
    names.push_back(def.role_name);
  }
  return names;
}

}  // namespace arena
