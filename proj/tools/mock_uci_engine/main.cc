// Deterministic UCI engine for tests: material count from the side to move,
// searched at most two plies deep.
#include <iostream>
#include <sstream>
#include <string>

#include "arena/analysis/engine.h"
#include "arena/chess/board.h"
#include "arena/text.h"

namespace {

std::string ScoreText(const arena::analysis::EngineEval& eval) {
  return eval.kind == arena::analysis::EvalKind::kMate ? "mate " + std::to_string(eval.value)
                                                       : "cp " + std::to_string(eval.value);
}

}  // namespace

int main() {
  std::ios::sync_with_stdio(false);
  arena::analysis::MaterialEvaluator evaluator;
  std::string fen = std::string(arena::chess::kInitialFen);
  std::string line;
  while (std::getline(std::cin, line)) {
    const std::string_view command = arena::Trim(line);
    if (command == "uci") {
      std::cout << "id name arena-mock\nid author arena\nuciok\n" << std::flush;
    } else if (command == "isready") {
      std::cout << "readyok\n" << std::flush;
    } else if (command == "quit") {
      break;
    } else if (command.starts_with("position fen ")) {
      fen = std::string(command.substr(13));
    } else if (command.starts_with("position startpos")) {
      fen = std::string(arena::chess::kInitialFen);
    } else if (command.starts_with("go")) {
      int depth = 1;
      std::istringstream in{std::string(command)};
      std::string token;
      while (in >> token) {
        if (token == "depth") in >> depth;
      }
      try {
        const arena::chess::BoardState state = arena::chess::ParseFen(fen);
        const std::vector<arena::chess::ChessMove> moves = arena::chess::LegalMoves(state.board);
        if (moves.empty()) {
          std::cout << "info depth 0 score "
                    << (arena::chess::InCheck(state.board) ? "mate 0" : "cp 0")
                    << "\nbestmove (none)\n"
                    << std::flush;
          continue;
        }
        const arena::analysis::EngineEval eval = evaluator.Evaluate(fen, depth);
        std::cout << "info depth " << depth << " score " << ScoreText(eval) << "\n"
                  << "bestmove " << moves.front().ToUci() << "\n"
                  << std::flush;
      } catch (const std::exception& e) {
        std::cout << "info string error " << e.what() << "\nbestmove (none)\n" << std::flush;
      }
    }
  }
  return 0;
}
