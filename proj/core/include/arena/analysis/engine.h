#ifndef ARENA_ANALYSIS_ENGINE_H_
#define ARENA_ANALYSIS_ENGINE_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>

#include "arena/errors.h"

namespace arena::analysis {

enum class EvalKind { kCentipawns, kMate };

// Score from the side to move's point of view: centipawns, or signed moves
// to mate (positive when the side to move mates).
struct EngineEval {
  EvalKind kind = EvalKind::kCentipawns;
  int value = 0;

  static EngineEval Centipawns(int cp) { return {EvalKind::kCentipawns, cp}; }
  static EngineEval Mate(int moves) { return {EvalKind::kMate, moves}; }

  friend bool operator==(const EngineEval&, const EngineEval&) = default;
};

inline constexpr int kMateCentipawns = 10000;

// Mate scores become +/- kMateCentipawns.
int ToCentipawns(const EngineEval& eval);

class EngineProtocolError : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

class EngineTimeout : public ArenaError {
 public:
  using ArenaError::ArenaError;
};

// Score carried by a UCI "info" line, nullopt when the line has none.
// Throws EngineProtocolError for a malformed score or a mate distance of 0.
std::optional<EngineEval> ParseInfoScore(std::string_view line);

class PositionEvaluator {
 public:
  virtual ~PositionEvaluator() = default;
  // `fen` is never a terminal position.
  virtual EngineEval Evaluate(const std::string& fen, int depth) = 0;
};

// Material count (pawn 100, knight and bishop 300, rook 500, queen 900) from
// the side to move, searched by plain negamax to min(depth, 2) plies.
// Deterministic and colour-symmetric.
class MaterialEvaluator : public PositionEvaluator {
 public:
  EngineEval Evaluate(const std::string& fen, int depth) override;

  static constexpr int kMaxDepth = 2;
};

// An external engine speaking UCI over stdin/stdout.
class UciEngine : public PositionEvaluator {
 public:
  // Starts `path` and completes the uci / isready handshake. Requests a
  // single search thread. Throws EngineProtocolError or EngineTimeout.
  explicit UciEngine(const std::string& path,
                     std::chrono::milliseconds timeout = std::chrono::seconds(30));
  ~UciEngine() override;

  UciEngine(const UciEngine&) = delete;
  UciEngine& operator=(const UciEngine&) = delete;

  // Last score reported before "bestmove". Throws EngineProtocolError or
  // EngineTimeout.
  EngineEval Evaluate(const std::string& fen, int depth) override;

  const std::string& name() const { return name_; }

 private:
  void Shutdown();
  void Send(std::string_view command);
  // Next output line; throws EngineTimeout past the deadline.
  std::string ReadLine(std::chrono::steady_clock::time_point deadline);
  void WaitFor(std::string_view token);

  std::string path_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int to_engine_ = -1;
  int from_engine_ = -1;
  std::string buffer_;
  std::string name_;
};

}  // namespace arena::analysis

#endif  // ARENA_ANALYSIS_ENGINE_H_
