#include "arena/manager.h"

#include <algorithm>
#include <chrono>
#include <memory>
#include <set>

#include "arena/games/registry.h"

namespace arena {
namespace {

std::unique_ptr<Game> BuildGame(const MatchConfig& config) {
  GameParams params;
  params.seed = config.seed;
  params.max_turns = config.max_turns;
  params.options = config.game_options.is_null() ? nlohmann::json::object()
                                                  : config.game_options;
  return MakeGame(config.game, params);
}

const PlayerSpec* FindSeat(const MatchConfig& config, const std::string& role) {
  for (const PlayerSpec& p : config.players) {
    if (p.role == role) return &p;
  }
  return nullptr;
}

void CheckSeating(const MatchConfig& config, const Game& game) {
  std::set<std::string> ids;
  std::set<std::string> roles;
  for (const PlayerSpec& p : config.players) {
    if (p.id.empty()) throw ConfigError(config.match_id + ": player id must not be empty");
    if (!ids.insert(p.id).second) {
      throw ConfigError(config.match_id + ": duplicate player id '" + p.id + "'");
    }
    if (!roles.insert(p.role).second) {
      throw ConfigError(config.match_id + ": role '" + p.role + "' seated twice");
    }
    if (p.attempt_policy.max_attempts < 1) {
      throw ConfigError(config.match_id + ": player " + p.id + ": max_attempts must be >= 1");
    }
  }
  const std::vector<std::string> game_roles = game.RoleNames();
  for (const std::string& role : game_roles) {
    if (roles.count(role) == 0) {
      throw ConfigError(config.match_id + ": no player for role '" + role + "'");
    }
  }
  for (const std::string& role : roles) {
    if (std::find(game_roles.begin(), game_roles.end(), role) == game_roles.end()) {
      throw ConfigError(config.match_id + ": " + config.game + " has no role '" + role + "'");
    }
  }
  for (const PlayerSpec& p : config.players) CheckBackendSupportsGame(p.backend, game);
}

class EventLog {
 public:
  EventLog(std::string match_id, std::function<int64_t()> clock)
      : match_id_(std::move(match_id)), clock_(std::move(clock)) {}

  TranscriptEvent& Add(EventType type) {
    TranscriptEvent e;
    e.match_id = match_id_;
    e.seq = static_cast<int64_t>(events_.size());
    if (clock_) e.ts = clock_();
    e.event = type;
    events_.push_back(std::move(e));
    return events_.back();
  }

  std::vector<TranscriptEvent> Take() { return std::move(events_); }

 private:
  std::string match_id_;
  std::function<int64_t()> clock_;
  std::vector<TranscriptEvent> events_;
};

}  // namespace

nlohmann::json MatchResult::ToJson() const {
  nlohmann::json j;
  j["match_id"] = match_id;
  j["game"] = game;
  j["seats"] = nlohmann::json::array();
  for (const auto& [role, id] : seats) j["seats"].push_back({{"role", role}, {"player_id", id}});
  j["scores"] = scores;
  j["winner"] = winner ? nlohmann::json(*winner) : nlohmann::json(nullptr);
  j["draw"] = draw;
  j["aborted"] = aborted;
  j["reason"] = reason;
  j["move_count"] = move_count;
  j["attempts"] = nlohmann::json::object();
  for (const auto& [id, s] : attempts) {
    j["attempts"][id] = {{"attempts", s.attempts},
                         {"accepted", s.accepted},
                         {"rejected", s.rejected},
                         {"max_attempts_for_move", s.max_attempts_for_move}};
  }
  return j;
}

int64_t SystemClockMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void ValidateMatchConfig(const MatchConfig& config) {
  if (config.match_id.empty()) throw ConfigError("match_id must not be empty");
  if (config.max_turns && *config.max_turns < 1) {
    throw ConfigError(config.match_id + ": max_turns must be >= 1");
  }
  const std::unique_ptr<Game> game = BuildGame(config);
  CheckSeating(config, *game);
}

MatchRun RunMatch(const MatchConfig& config, const RunOptions& options) {
  ValidateMatchConfig(config);
  std::unique_ptr<Game> game = BuildGame(config);

  MatchResult result;
  result.match_id = config.match_id;
  result.game = config.game;

  std::map<std::string, std::unique_ptr<Player>> players;
  nlohmann::json seat_json = nlohmann::json::array();
  for (const std::string& role : game->RoleNames()) {
    const PlayerSpec& spec = *FindSeat(config, role);
    players[role] = MakePlayer(spec, config.seed, options.transport);
    result.seats.emplace_back(role, spec.id);
    result.attempts[spec.id] = AttemptStats{};
    seat_json.push_back({{"role", role},
                         {"player_id", spec.id},
                         {"backend", std::string(BackendKind(spec.backend))}});
  }

  EventLog log(config.match_id, options.clock);
  {
    TranscriptEvent& e = log.Add(EventType::kGameStart);
    e.parsed = {{"game", config.game}, {"seed", config.seed}, {"players", seat_json}};
    e.state_view = game->StateView();
  }

  bool aborted = false;
  std::string abort_detail;
  while (!game->IsOver().over()) {
    const ActionRequest request = game->GetNextAction();
    Player& player = *players.at(request.role);
    const PlayerSpec& spec = player.spec();
    AttemptStats& stats = result.attempts[spec.id];
    const bool had_verification = game->verification().has_value();

    std::optional<PriorFeedback> feedback;
    bool accepted = false;
    for (int attempt = 1; attempt <= spec.attempt_policy.max_attempts; ++attempt) {
      ++stats.attempts;
      stats.max_attempts_for_move = std::max(stats.max_attempts_for_move, attempt);
      auto add_attempt_event = [&](EventType type) -> TranscriptEvent& {
        TranscriptEvent& e = log.Add(type);
        e.role = request.role;
        e.player_id = spec.id;
        e.action = request.action;
        e.attempt_index = attempt;
        return e;
      };

      Move move;
      try {
        move = player.Act(request, *game, feedback);
      } catch (const BackendUnavailable& err) {
        TranscriptEvent& e = add_attempt_event(EventType::kMoveAttempt);
        e.error_code = "backend-unavailable";
        e.feedback = err.what();
        aborted = true;
        abort_detail = err.what();
        break;
      } catch (const EmptyOutput& err) {
        ++stats.rejected;
        TranscriptEvent& e = add_attempt_event(EventType::kMoveRejected);
        e.raw_output = "";
        e.error_code = "empty-output";
        e.feedback = err.what();
        feedback = PriorFeedback{"", err.what()};
        continue;
      } catch (const ScriptExhausted& err) {
        ++stats.rejected;
        TranscriptEvent& e = add_attempt_event(EventType::kMoveRejected);
        e.error_code = "script-exhausted";
        e.feedback = err.what();
        feedback = PriorFeedback{"", err.what()};
        continue;
      }

      std::optional<Rejection> rejection = game->Update(move);
      if (rejection) {
        ++stats.rejected;
        TranscriptEvent& e = add_attempt_event(EventType::kMoveRejected);
        e.raw_output = move.raw;
        e.error_code = std::string(RejectionCodeName(rejection->code));
        e.feedback = rejection->feedback;
        feedback = PriorFeedback{move.raw, rejection->feedback};
        continue;
      }

      ++stats.accepted;
      ++result.move_count;
      {
        TranscriptEvent& e = add_attempt_event(EventType::kMoveAccepted);
        e.raw_output = move.raw;
        e.parsed = move.parsed;
        e.state_view = game->StateView();
      }
      if (!had_verification) {
        if (std::optional<VerificationRecord> v = game->verification()) {
          TranscriptEvent& e = log.Add(EventType::kVerification);
          e.role = request.role;
          e.player_id = spec.id;
          e.action = request.action;
          e.parsed = {{"passed", v->passed}, {"answer", v->answer}};
        }
      }
      accepted = true;
      break;
    }

    if (aborted) break;
    if (!accepted) game->Forfeit(request.role);
  }

  if (aborted) {
    result.aborted = true;
    result.reason = std::string(reason::kBackendFailure);
    for (const std::string& role : game->RoleNames()) result.scores[role] = 0.0;
  } else {
    result.reason = game->IsOver().reason();
    result.scores = game->GetScores();
    double best = -1.0;
    int best_count = 0;
    std::string best_role;
    for (const auto& [role, score] : result.scores) {
      if (score > best) {
        best = score;
        best_count = 1;
        best_role = role;
      } else if (score == best) {
        ++best_count;
      }
    }
    if (best_count == 1) {
      result.winner = FindSeat(config, best_role)->id;
    } else {
      result.draw = true;
    }
  }

  {
    TranscriptEvent& e = log.Add(EventType::kGameEnd);
    e.scores = result.scores;
    e.parsed = {{"reason", result.reason},
                {"winner", result.winner ? nlohmann::json(*result.winner) : nlohmann::json()},
                {"aborted", result.aborted}};
    if (aborted) e.feedback = abort_detail;
    e.state_view = game->StateView();
  }
  return MatchRun{std::move(result), log.Take()};
}

}  // namespace arena
