#ifndef ARENA_TYPES_H_
#define ARENA_TYPES_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace arena {

struct PlayerRoleDef {
  std::string role_name;
  std::vector<std::string> actions;
  std::optional<std::string> default_backend;

  friend bool operator==(const PlayerRoleDef&, const PlayerRoleDef&) = default;
};

// What a player is shown when asked to act. Each section is plain text; the
// serialized form is what remote backends receive as the user message.
struct Observation {
  std::string rules;
  std::string state;
  std::string history;

  std::string ToText() const;
};

struct ActionRequest {
  std::string action;
  std::string role;
  Observation observation;
};

struct Move {
  std::string role;
  std::string action;
  std::string raw;
  // Canonical form of the move, filled in by the game on acceptance.
  std::string parsed;
};

// Per-role score. Two-player games use 1 / 0.5 / 0.
using Scores = std::map<std::string, double>;

class GameStatus {
 public:
  static GameStatus InProgress() { return GameStatus(false, ""); }
  static GameStatus Over(std::string reason) {
    return GameStatus(true, std::move(reason));
  }

  bool over() const { return over_; }
  const std::string& reason() const { return reason_; }

  friend bool operator==(const GameStatus&, const GameStatus&) = default;

 private:
  GameStatus(bool over, std::string reason)
      : over_(over), reason_(std::move(reason)) {}

  bool over_;
  std::string reason_;
};

// Termination reasons shared across games.
namespace reason {
inline constexpr std::string_view kForfeit = "forfeit";
inline constexpr std::string_view kMaxTurns = "max-turns";
inline constexpr std::string_view kBackendFailure = "backend-failure";
inline constexpr std::string_view kVerificationFailure = "verification-failure";
}  // namespace reason

enum class RejectionCode { kFormat, kRule, kContract };

std::string_view RejectionCodeName(RejectionCode code);

// A move the game refused. The feedback states why, never what would have
// been legal.
struct Rejection {
  RejectionCode code;
  std::string feedback;

  static Rejection Format(std::string feedback) {
    return {RejectionCode::kFormat, std::move(feedback)};
  }
  static Rejection Rule(std::string feedback) {
    return {RejectionCode::kRule, std::move(feedback)};
  }
  static Rejection Contract(std::string feedback) {
    return {RejectionCode::kContract, std::move(feedback)};
  }
};

// Result of a generate-then-verify check, exposed by games that run one.
struct VerificationRecord {
  bool passed = false;
  std::string answer;
};

}  // namespace arena

#endif  // ARENA_TYPES_H_
