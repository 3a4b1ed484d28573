#include "arena/analysis/report.h"

#include <unordered_map>
#include <variant>

#include "arena/chess/board.h"
#include "arena/text.h"

namespace arena::analysis {
namespace {

// Evaluation of `state` from its side to move, in centipawns.
class CachedEvaluator {
 public:
  CachedEvaluator(PositionEvaluator& evaluator, int depth)
      : evaluator_(evaluator), depth_(depth) {}

  int Evaluate(const chess::BoardState& state) {
    const chess::Termination t = chess::TerminalStatus(state);
    if (t.status.over()) {
      if (t.winner) return *t.winner == state.board.side_to_move ? kMateCentipawns
                                                                   : -kMateCentipawns;
      return 0;
    }
    const std::string fen = chess::ToFen(state.board);
    auto it = cache_.find(fen);
    if (it != cache_.end()) return it->second;
    const int cp = ToCentipawns(evaluator_.Evaluate(fen, depth_));
    cache_.emplace(fen, cp);
    return cp;
  }

 private:
  PositionEvaluator& evaluator_;
  int depth_;
  std::unordered_map<std::string, int> cache_;
};

}  // namespace

bool IsCorrectMove(int eval_before, int eval_after, int threshold_cp) {
  return eval_after >= eval_before - threshold_cp;
}

void MoveQualityReport::Merge(const MoveQualityReport& other) {
  for (const auto& [id, q] : other.players) {
    players[id].total += q.total;
    players[id].correct += q.correct;
  }
  moves.insert(moves.end(), other.moves.begin(), other.moves.end());
}

nlohmann::json MoveQualityReport::ToJson() const {
  nlohmann::json j;
  j["threshold_cp"] = threshold_cp;
  j["players"] = nlohmann::json::object();
  for (const auto& [id, q] : players) {
    j["players"][id] = {{"total", q.total},
                        {"correct", q.correct},
                        {"proportion", q.proportion()}};
  }
  return j;
}

MoveQualityReport ClassifyMoves(const std::vector<TranscriptEvent>& events,
                                PositionEvaluator& evaluator, const ClassifyOptions& options) {
  MoveQualityReport report;
  report.threshold_cp = options.threshold_cp;
  if (events.empty()) return report;
  const TranscriptEvent& start = events.front();
  if (start.event != EventType::kGameStart || !start.parsed.is_object() ||
      start.parsed.value("game", "") != "chess" || !start.state_view) {
    throw ArenaError("move classification needs a chess transcript starting with game_start");
  }

  chess::BoardState state = chess::ParseFen(*start.state_view);
  CachedEvaluator eval(evaluator, options.depth);
  int ply = 0;
  for (const TranscriptEvent& e : events) {
    if (e.event != EventType::kMoveAccepted) continue;
    ++ply;
    if (!e.parsed.is_string()) {
      throw ArenaError("move_accepted at seq " + std::to_string(e.seq) + " has no parsed move");
    }
    const std::string uci = e.parsed.get<std::string>();
    std::variant<chess::ChessMove, Rejection> parsed = chess::ParseMove(state.board, uci);
    if (std::holds_alternative<Rejection>(parsed)) {
      throw ArenaError("transcript move " + uci + " at seq " + std::to_string(e.seq) +
                       " is not legal: " + std::get<Rejection>(parsed).feedback);
    }
    const chess::BoardState next = chess::ApplyMove(state, std::get<chess::ChessMove>(parsed));
    if (ply <= options.max_plies) {
      MoveAssessment m;
      m.ply = ply;
      m.player_id = e.player_id.value_or("");
      m.move = uci;
      m.eval_before = eval.Evaluate(state);
      m.eval_after = -eval.Evaluate(next);
      m.correct = IsCorrectMove(m.eval_before, m.eval_after, options.threshold_cp);
      PlayerQuality& q = report.players[m.player_id];
      ++q.total;
      if (m.correct) ++q.correct;
      report.moves.push_back(std::move(m));
    }
    state = next;
  }
  return report;
}

std::map<std::string, ReasoningStat> ReasoningStats(const std::vector<TranscriptEvent>& events) {
  std::map<std::string, ReasoningStat> stats;
  for (const TranscriptEvent& e : events) {
    if (e.event != EventType::kMoveAccepted || !e.player_id) continue;
    ReasoningStat& s = stats[*e.player_id];
    ++s.outputs;
    s.total_words += static_cast<long>(SplitWhitespace(e.raw_output.value_or("")).size());
  }
  return stats;
}

nlohmann::json ReasoningStatsJson(const std::map<std::string, ReasoningStat>& stats) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, s] : stats) {
    j[id] = {{"outputs", s.outputs}, {"total_words", s.total_words}, {"mean_words", s.mean_words()}};
  }
  return j;
}

}  // namespace arena::analysis
