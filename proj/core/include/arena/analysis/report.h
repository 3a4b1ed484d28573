#ifndef ARENA_ANALYSIS_REPORT_H_
#define ARENA_ANALYSIS_REPORT_H_

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arena/analysis/engine.h"
#include "arena/transcript.h"

namespace arena::analysis {

struct ClassifyOptions {
  int depth = 15;
  int threshold_cp = 30;
  // Moves beyond this ply are not classified.
  int max_plies = 200;
};

struct MoveAssessment {
  int ply = 0;
  std::string player_id;
  std::string move;
  // Both from the mover's point of view, mate scores mapped to centipawns.
  int eval_before = 0;
  int eval_after = 0;
  bool correct = false;
};

struct PlayerQuality {
  int total = 0;
  int correct = 0;
  double proportion() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
};

struct MoveQualityReport {
  int threshold_cp = 30;
  std::map<std::string, PlayerQuality> players;
  std::vector<MoveAssessment> moves;

  void Merge(const MoveQualityReport& other);
  nlohmann::json ToJson() const;
};

// A move is correct when eval_after >= eval_before - threshold_cp. Throws
// ArenaError when the transcript is not a chess game.
MoveQualityReport ClassifyMoves(const std::vector<TranscriptEvent>& events,
                                PositionEvaluator& evaluator,
                                const ClassifyOptions& options = {});

// Whether a move with these mover-perspective evaluations keeps the position.
bool IsCorrectMove(int eval_before, int eval_after, int threshold_cp);

struct ReasoningStat {
  int outputs = 0;
  long total_words = 0;
  double mean_words() const {
    return outputs == 0 ? 0.0 : static_cast<double>(total_words) / outputs;
  }
};

// Whitespace-separated word counts over the raw output of accepted moves.
std::map<std::string, ReasoningStat> ReasoningStats(const std::vector<TranscriptEvent>& events);
nlohmann::json ReasoningStatsJson(const std::map<std::string, ReasoningStat>& stats);

}  // namespace arena::analysis

#endif  // ARENA_ANALYSIS_REPORT_H_
