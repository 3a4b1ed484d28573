#include "arena/players/player.h"

#include <algorithm>

#include "arena/chess/board.h"
#include "arena/games/chess_game.h"
#include "arena/players/chat_client.h"
#include "arena/random.h"
#include "arena/text.h"

namespace arena {
namespace {

class ScriptedPlayer : public Player {
 public:
  ScriptedPlayer(PlayerSpec spec, ScriptedBackend script)
      : Player(std::move(spec)), script_(std::move(script)) {}

 protected:
  std::string Answer(const ActionRequest& request, const Game&,
                     const std::optional<PriorFeedback>&) override {
    auto by_role = script_.moves_by_role.find(request.role);
    const std::vector<std::string>& moves =
        by_role != script_.moves_by_role.end() ? by_role->second : script_.moves;
    size_t& next = next_index_[request.role];
    if (next >= moves.size()) {
      throw ScriptExhausted("script for " + spec().id + " exhausted after " +
                            std::to_string(moves.size()) + " moves");
    }
    return moves[next++];
  }

 private:
  ScriptedBackend script_;
  std::map<std::string, size_t> next_index_;
};

class RandomPlayer : public Player {
 public:
  RandomPlayer(PlayerSpec spec, uint64_t seed) : Player(std::move(spec)), seed_(seed) {}

 protected:
  std::string Answer(const ActionRequest&, const Game& game,
                     const std::optional<PriorFeedback>&) override {
    const std::vector<std::string> legal = game.LegalMoves();
    if (legal.empty()) throw EmptyOutput("no legal moves to choose from");
    Rng rng(DeriveSeed({seed_, request_index()}));
    return legal[rng.Uniform(legal.size())];
  }

 private:
  uint64_t seed_;
};

int MaterialValue(chess::PieceType t) {
  switch (t) {
    case chess::kPawn: return 1;
    case chess::kKnight: return 3;
    case chess::kBishop: return 3;
    case chess::kRook: return 5;
    case chess::kQueen: return 9;
    default: return 0;
  }
}

class GreedyMaterialPlayer : public Player {
 public:
  GreedyMaterialPlayer(PlayerSpec spec, uint64_t seed)
      : Player(std::move(spec)), seed_(seed) {}

 protected:
  std::string Answer(const ActionRequest&, const Game& game,
                     const std::optional<PriorFeedback>&) override {
    const auto* chess_game = dynamic_cast<const ChessGame*>(&game);
    if (chess_game == nullptr) {
      throw ContractError("greedy-material heuristic only plays chess");
    }
    const chess::Board& board = chess_game->state().board;
    const std::vector<chess::ChessMove> legal = chess::LegalMoves(board);
    if (legal.empty()) throw EmptyOutput("no legal moves to choose from");

    constexpr int kMate = 1000;
    int best = -1;
    std::vector<size_t> best_moves;
    for (size_t i = 0; i < legal.size(); ++i) {
      const chess::ChessMove& m = legal[i];
      int score = 0;
      if (chess::IsCapture(board, m)) {
        const chess::Piece victim = board.at(m.to);
        score += victim == chess::kEmpty ? 1 : MaterialValue(chess::TypeOf(victim));
      }
      if (m.promotion != chess::kNoPiece) score += MaterialValue(m.promotion) - 1;
      chess::Board after = board;
      chess::MakeMove(after, m);
      if (chess::InCheck(after) && !chess::HasLegalMove(after)) score = kMate;
      if (score > best) {
        best = score;
        best_moves.clear();
      }
      if (score == best) best_moves.push_back(i);
    }
    Rng rng(DeriveSeed({seed_, request_index()}));
    return legal[best_moves[rng.Uniform(best_moves.size())]].ToUci();
  }

 private:
  uint64_t seed_;
};

std::string UserMessage(const ActionRequest& request,
                        const std::optional<PriorFeedback>& feedback) {
  const Observation& obs = request.observation;
  std::string out = "## State\n" + obs.state + "\n\n## History\n" +
                    (obs.history.empty() ? "(none)" : obs.history) + "\n";
  if (feedback) {
    out += "\n## Feedback\nYour previous answer was:\n" + feedback->previous_output +
           "\nIt was rejected: " + feedback->feedback + "\nPlease try again.\n";
  }
  return out;
}

class RemotePlayer : public Player {
 public:
  RemotePlayer(PlayerSpec spec, RemoteBackend backend, const TransportOptions& transport)
      : Player(std::move(spec)), client_(std::move(backend), transport) {}

 protected:
  std::string Answer(const ActionRequest& request, const Game& game,
                     const std::optional<PriorFeedback>& feedback) override {
    const std::string system = "You are playing the role '" + request.role +
                               "' and must perform the action '" + request.action +
                               "'.\n\n" + request.observation.rules;
    const std::string content =
        client_.Complete({{"system", system}, {"user", UserMessage(request, feedback)}});
    if (game.IsFreeText(request.action)) {
      const std::string_view text = Trim(content);
      if (text.empty()) throw EmptyOutput("model returned no text");
      return std::string(text);
    }
    return ExtractMove(content);
  }

 private:
  ChatClient client_;
};

}  // namespace

std::string_view BackendKind(const BackendSpec& backend) {
  struct Visitor {
    std::string_view operator()(const ScriptedBackend&) const { return "scripted"; }
    std::string_view operator()(const RandomBackend&) const { return "random"; }
    std::string_view operator()(const HeuristicBackend&) const { return "heuristic"; }
    std::string_view operator()(const RemoteBackend&) const { return "remote"; }
  };
  return std::visit(Visitor{}, backend);
}

std::string ExtractMove(std::string_view model_output) {
  const std::vector<std::string_view> lines = SplitLines(model_output);
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    std::string_view line = Trim(*it);
    if (line.starts_with("Move:")) {
      line = Trim(line.substr(5));
      if (line.empty()) break;
      return std::string(line);
    }
  }
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const std::string_view line = Trim(*it);
    if (!line.empty()) return std::string(line);
  }
  throw EmptyOutput("model output has no non-empty line");
}

Move Player::Act(const ActionRequest& request, const Game& game,
                 const std::optional<PriorFeedback>& feedback) {
  if (request.role != spec_.role) {
    throw ContractError("player " + spec_.id + " plays " + spec_.role +
                        ", asked to act for " + request.role);
  }
  const std::optional<PriorFeedback> shown =
      spec_.attempt_policy.include_prior_feedback ? feedback : std::nullopt;
  std::string raw = Answer(request, game, shown);
  ++request_index_;
  if (Trim(raw).empty()) throw EmptyOutput("player " + spec_.id + " produced no move");
  return Move{request.role, request.action, std::move(raw), ""};
}

std::unique_ptr<Player> MakePlayer(const PlayerSpec& spec, uint64_t match_seed,
                                   const TransportOptions& transport) {
  if (spec.attempt_policy.max_attempts < 1) {
    throw ConfigError("player " + spec.id + ": max_attempts must be >= 1");
  }
  struct Visitor {
    const PlayerSpec& spec;
    uint64_t match_seed;
    const TransportOptions& transport;

    std::unique_ptr<Player> operator()(const ScriptedBackend& b) const {
      return std::make_unique<ScriptedPlayer>(spec, b);
    }
    std::unique_ptr<Player> operator()(const RandomBackend& b) const {
      return std::make_unique<RandomPlayer>(spec, DeriveSeed({b.seed, match_seed}));
    }
    std::unique_ptr<Player> operator()(const HeuristicBackend& b) const {
      if (b.name != "greedy-material") {
        throw ConfigError("unknown heuristic '" + b.name + "'");
      }
      return std::make_unique<GreedyMaterialPlayer>(spec, DeriveSeed({b.seed, match_seed}));
    }
    std::unique_ptr<Player> operator()(const RemoteBackend& b) const {
      return std::make_unique<RemotePlayer>(spec, b, transport);
    }
  };
  return std::visit(Visitor{spec, match_seed, transport}, spec.backend);
}

void CheckBackendSupportsGame(const BackendSpec& backend, const Game& game) {
  if (std::holds_alternative<RandomBackend>(backend) && !game.HasMoveEnumeration()) {
    throw ConfigError("random backend needs a legal-move enumeration; " + game.name() +
                      " has none");
  }
  if (std::holds_alternative<HeuristicBackend>(backend) && game.name() != "chess") {
    throw ConfigError("heuristic backend only plays chess, not " + game.name());
  }
}

}  // namespace arena
