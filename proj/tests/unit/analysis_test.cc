#include <gtest/gtest.h>

#include <cctype>
#include <sstream>

#include "arena/analysis/engine.h"
#include "arena/analysis/report.h"
#include "arena/chess/board.h"
#include "arena/manager.h"

namespace arena::analysis {
namespace {

// Colour-flipped FEN: ranks reversed, piece case swapped, side swapped.
std::string MirrorFen(const std::string& fen) {
  std::istringstream in(fen);
  std::string placement, side, castling, ep, half, full;
  in >> placement >> side >> castling >> ep >> half >> full;
  std::vector<std::string> ranks;
  std::stringstream ps(placement);
  for (std::string r; std::getline(ps, r, '/');) ranks.push_back(r);
  std::string out;
  for (auto it = ranks.rbegin(); it != ranks.rend(); ++it) {
    if (!out.empty()) out += '/';
    for (char c : *it) {
      out += std::isupper(c) ? std::tolower(c) : std::isalpha(c) ? std::toupper(c) : c;
    }
  }
  std::string flipped_castling;
  for (char c : castling) flipped_castling += std::isupper(c) ? std::tolower(c) : std::toupper(c);
  if (flipped_castling == "-") flipped_castling = "-";
  std::string flipped_ep = ep;
  if (ep != "-") flipped_ep[1] = ep[1] == '3' ? '6' : '3';
  return out + (side == "w" ? " b " : " w ") + flipped_castling + " " + flipped_ep + " " + half +
         " " + full;
}

TEST(ParseInfoScoreTest, ReadsCentipawnsAndMates) {
  EXPECT_EQ(ParseInfoScore("info depth 10 seldepth 12 score cp 35 nodes 1000 pv e2e4"),
            EngineEval::Centipawns(35));
  EXPECT_EQ(ParseInfoScore("info depth 5 score mate -3 pv a1a2"), EngineEval::Mate(-3));
  EXPECT_EQ(ParseInfoScore("info depth 3 score cp -20 lowerbound"), EngineEval::Centipawns(-20));
  EXPECT_FALSE(ParseInfoScore("info string hello").has_value());
  EXPECT_FALSE(ParseInfoScore("bestmove e2e4").has_value());
  EXPECT_FALSE(ParseInfoScore("info depth 4 nodes 20").has_value());
  EXPECT_THROW(ParseInfoScore("info score cp x"), EngineProtocolError);
  EXPECT_THROW(ParseInfoScore("info score"), EngineProtocolError);
  EXPECT_THROW(ParseInfoScore("info score mate 0"), EngineProtocolError);
  EXPECT_THROW(ParseInfoScore("info score wdl 1 2 3"), EngineProtocolError);
}

TEST(ToCentipawnsTest, MapsMatesToLargeValues) {
  EXPECT_EQ(ToCentipawns(EngineEval::Centipawns(-45)), -45);
  EXPECT_EQ(ToCentipawns(EngineEval::Mate(2)), kMateCentipawns);
  EXPECT_EQ(ToCentipawns(EngineEval::Mate(-1)), -kMateCentipawns);
}

TEST(MaterialEvaluatorTest, CountsMaterialFromSideToMove) {
  MaterialEvaluator eval;
  EXPECT_EQ(eval.Evaluate("4k3/8/8/8/8/8/8/3QK3 w - - 0 1", 0), EngineEval::Centipawns(900));
  EXPECT_EQ(eval.Evaluate("4k3/8/8/8/8/8/8/3QK3 b - - 0 1", 0), EngineEval::Centipawns(-900));
  // A queen en prise is lost at depth 1 for the side not to move.
  EXPECT_EQ(eval.Evaluate("4k3/8/8/3q4/8/8/3R4/4K3 w - - 0 1", 1),
            EngineEval::Centipawns(500));
  // Mate in one is reported as a mate score.
  EXPECT_EQ(eval.Evaluate("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1", 2), EngineEval::Mate(1));
  EXPECT_THROW(eval.Evaluate("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1", 1), ContractError);
}

TEST(MaterialEvaluatorTest, ColourSymmetric) {
  MaterialEvaluator eval;
  for (const char* fen : {
           "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
           "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
           "rnbqkbnr/ppp1pppp/8/3p4/4P3/8/PPPP1PPP/RNBQKBNR w KQkq d6 0 2",
       }) {
    for (int depth : {0, 1, 2}) {
      EXPECT_EQ(eval.Evaluate(fen, depth), eval.Evaluate(MirrorFen(fen), depth))
          << fen << " depth " << depth;
    }
  }
}

TEST(UciEngineTest, TalksToMockEngine) {
  UciEngine engine(ARENA_MOCK_ENGINE);
  EXPECT_EQ(engine.name(), "arena-mock");
  MaterialEvaluator reference;
  for (const char* fen : {"4k3/8/8/3q4/8/8/3R4/4K3 w - - 0 1",
                          "6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1",
                          "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"}) {
    EXPECT_EQ(engine.Evaluate(fen, 2), reference.Evaluate(fen, 2)) << fen;
  }
}

TEST(UciEngineTest, FailuresAreReported) {
  EXPECT_THROW(UciEngine("/nonexistent/engine", std::chrono::milliseconds(2000)),
               EngineProtocolError);
  // cat echoes "uci" but never answers "uciok".
  EXPECT_THROW(UciEngine("/bin/cat", std::chrono::milliseconds(200)), EngineTimeout);
}

std::vector<TranscriptEvent> ScriptedChess(std::vector<std::string> white,
                                           std::vector<std::string> black) {
  MatchConfig c;
  c.match_id = "a";
  c.game = "chess";
  c.max_turns = static_cast<int>(white.size() + black.size());
  c.players = {PlayerSpec{"w", "white", ScriptedBackend{std::move(white), {}}, {}},
               PlayerSpec{"b", "black", ScriptedBackend{std::move(black), {}}, {}}};
  return RunMatch(c).events;
}

TEST(ClassifyMovesTest, HangingQueenIsIncorrectAndRecaptureIsCorrect) {
  const auto events = ScriptedChess({"e4", "exd5", "Qg4"}, {"d5", "Qxd5"});
  MaterialEvaluator evaluator;
  ClassifyOptions options;
  options.depth = 2;
  const MoveQualityReport report = ClassifyMoves(events, evaluator, options);
  ASSERT_EQ(report.moves.size(), 5u);
  const MoveAssessment& recapture = report.moves[3];
  EXPECT_EQ(recapture.move, "d8d5");
  EXPECT_EQ(recapture.player_id, "b");
  EXPECT_TRUE(recapture.correct);
  const MoveAssessment& blunder = report.moves[4];
  EXPECT_EQ(blunder.move, "d1g4");
  EXPECT_EQ(blunder.player_id, "w");
  EXPECT_FALSE(blunder.correct);
  EXPECT_LE(blunder.eval_after, blunder.eval_before - 500);
  EXPECT_EQ(report.players.at("w").total, 3);
  EXPECT_EQ(report.players.at("b").total, 2);

  UciEngine engine(ARENA_MOCK_ENGINE);
  const MoveQualityReport via_uci = ClassifyMoves(events, engine, options);
  EXPECT_EQ(via_uci.ToJson(), report.ToJson());
}

TEST(ClassifyMovesTest, CheckmatingMoveIsCorrect) {
  const auto events = ScriptedChess({"f3", "g4"}, {"e5", "Qh4#"});
  MaterialEvaluator evaluator;
  const MoveQualityReport report = ClassifyMoves(events, evaluator, {2, 30, 200});
  ASSERT_EQ(report.moves.size(), 4u);
  EXPECT_EQ(report.moves[3].eval_after, kMateCentipawns);
  EXPECT_TRUE(report.moves[3].correct);
  EXPECT_FALSE(report.moves[2].correct);
}

TEST(ClassifyMovesTest, ThresholdAndPlyLimit) {
  EXPECT_TRUE(IsCorrectMove(50, 20, 30));
  EXPECT_FALSE(IsCorrectMove(50, 19, 30));
  EXPECT_TRUE(IsCorrectMove(-100, 300, 0));
  const auto events = ScriptedChess({"e4", "Nf3"}, {"e5", "Nc6"});
  MaterialEvaluator evaluator;
  EXPECT_EQ(ClassifyMoves(events, evaluator, {1, 30, 3}).moves.size(), 3u);
  const auto not_chess = std::vector<TranscriptEvent>{events.back()};
  EXPECT_THROW(ClassifyMoves(not_chess, evaluator), ArenaError);
}

TEST(ReasoningStatsTest, CountsWordsOfAcceptedOutputs) {
  std::vector<TranscriptEvent> events(3);
  events[0].event = EventType::kMoveAccepted;
  events[0].player_id = "x";
  events[0].raw_output = "I will play\nMove: e4";
  events[1].event = EventType::kMoveRejected;
  events[1].player_id = "x";
  events[1].raw_output = "many many words ignored here";
  events[2].event = EventType::kMoveAccepted;
  events[2].player_id = "x";
  events[2].raw_output = "Nf3";
  const auto stats = ReasoningStats(events);
  EXPECT_EQ(stats.at("x").outputs, 2);
  EXPECT_EQ(stats.at("x").total_words, 6);
  EXPECT_DOUBLE_EQ(stats.at("x").mean_words(), 3.0);
}

}  // namespace
}  // namespace arena::analysis
