#include "arena/analysis/engine.h"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <thread>
#include <vector>

#include "arena/chess/board.h"
#include "arena/text.h"

namespace arena::analysis {
namespace {

constexpr int kMateScore = 100000;

int PieceValue(chess::PieceType t) {
  switch (t) {
    case chess::kPawn: return 100;
    case chess::kKnight: return 300;
    case chess::kBishop: return 300;
    case chess::kRook: return 500;
    case chess::kQueen: return 900;
    default: return 0;
  }
}

int Material(const chess::Board& board) {
  int score = 0;
  for (chess::Square s = 0; s < 64; ++s) {
    const chess::Piece p = board.at(s);
    if (p == chess::kEmpty) continue;
    const int v = PieceValue(chess::TypeOf(p));
    score += chess::ColorOf(p) == board.side_to_move ? v : -v;
  }
  return score;
}

int Negamax(const chess::Board& board, int depth, int ply) {
  const std::vector<chess::ChessMove> moves = chess::LegalMoves(board);
  if (moves.empty()) return chess::InCheck(board) ? -(kMateScore - ply) : 0;
  if (depth == 0) return Material(board);
  int best = -kMateScore - 1;
  for (const chess::ChessMove& m : moves) {
    chess::Board child = board;
    chess::MakeMove(child, m);
    best = std::max(best, -Negamax(child, depth - 1, ply + 1));
  }
  return best;
}

std::optional<int> ParseInt(std::string_view text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

int ToCentipawns(const EngineEval& eval) {
  if (eval.kind == EvalKind::kCentipawns) return eval.value;
  return eval.value > 0 ? kMateCentipawns : -kMateCentipawns;
}

std::optional<EngineEval> ParseInfoScore(std::string_view line) {
  const std::vector<std::string_view> tokens = SplitWhitespace(line);
  if (tokens.empty() || tokens[0] != "info") return std::nullopt;
  auto it = std::find(tokens.begin(), tokens.end(), "score");
  if (it == tokens.end()) return std::nullopt;
  if (std::distance(it, tokens.end()) < 3) {
    throw EngineProtocolError("truncated score in: " + std::string(line));
  }
  const std::string_view kind = *(it + 1);
  const std::optional<int> value = ParseInt(*(it + 2));
  if (!value) throw EngineProtocolError("bad score value in: " + std::string(line));
  if (kind == "cp") return EngineEval::Centipawns(*value);
  if (kind == "mate") {
    if (*value == 0) throw EngineProtocolError("mate distance 0 in: " + std::string(line));
    return EngineEval::Mate(*value);
  }
  throw EngineProtocolError("unknown score kind in: " + std::string(line));
}

EngineEval MaterialEvaluator::Evaluate(const std::string& fen, int depth) {
  const chess::BoardState state = chess::ParseFen(fen);
  if (!chess::HasLegalMove(state.board)) {
    throw ContractError("cannot evaluate a position without legal moves: " + fen);
  }
  const int score = Negamax(state.board, std::clamp(depth, 0, kMaxDepth), 0);
  if (std::abs(score) > kMateScore / 2) {
    const int plies = kMateScore - std::abs(score);
    return EngineEval::Mate(score > 0 ? (plies + 1) / 2 : -(plies / 2));
  }
  return EngineEval::Centipawns(score);
}

UciEngine::UciEngine(const std::string& path, std::chrono::milliseconds timeout)
    : path_(path), timeout_(timeout) {
  int fds[2];
  if (socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) {
    throw EngineProtocolError("socketpair failed: " + std::string(std::strerror(errno)));
  }
  pid_ = fork();
  if (pid_ < 0) {
    close(fds[0]);
    close(fds[1]);
    throw EngineProtocolError("fork failed: " + std::string(std::strerror(errno)));
  }
  if (pid_ == 0) {
    close(fds[0]);
    dup2(fds[1], STDIN_FILENO);
    dup2(fds[1], STDOUT_FILENO);
    close(fds[1]);
    execl(path.c_str(), path.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  to_engine_ = fds[0];
  from_engine_ = fds[0];

  try {
    const auto deadline = std::chrono::steady_clock::now() + timeout_;
    Send("uci");
    for (;;) {
      const std::string line = ReadLine(deadline);
      if (line.starts_with("id name ")) name_ = line.substr(8);
      if (Trim(line) == "uciok") break;
    }
    Send("setoption name Threads value 1");
    WaitFor("readyok");
  } catch (...) {
    Shutdown();
    throw;
  }
}

UciEngine::~UciEngine() { Shutdown(); }

void UciEngine::Shutdown() {
  if (to_engine_ >= 0) {
    const char quit[] = "quit\n";
    send(to_engine_, quit, sizeof(quit) - 1, MSG_NOSIGNAL);
    close(to_engine_);
    to_engine_ = -1;
    from_engine_ = -1;
  }
  if (pid_ > 0) {
    for (int i = 0; i < 100; ++i) {
      if (waitpid(pid_, nullptr, WNOHANG) != 0) {
        pid_ = -1;
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

void UciEngine::Send(std::string_view command) {
  std::string line(command);
  line += '\n';
  size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n = send(to_engine_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw EngineProtocolError(path_ + ": write failed: " + std::strerror(errno));
    }
    sent += static_cast<size_t>(n);
  }
}

std::string UciEngine::ReadLine(std::chrono::steady_clock::time_point deadline) {
  for (;;) {
    const size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) throw EngineTimeout(path_ + ": no answer within timeout");
    pollfd pfd{from_engine_, POLLIN, 0};
    const int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw EngineProtocolError(path_ + ": poll failed: " + std::strerror(errno));
    }
    if (ready == 0) throw EngineTimeout(path_ + ": no answer within timeout");
    char chunk[4096];
    const ssize_t n = read(from_engine_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw EngineProtocolError(path_ + ": read failed: " + std::strerror(errno));
    }
    if (n == 0) throw EngineProtocolError(path_ + ": engine closed its output");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

void UciEngine::WaitFor(std::string_view token) {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  Send("isready");
  while (Trim(ReadLine(deadline)) != token) {
  }
}

EngineEval UciEngine::Evaluate(const std::string& fen, int depth) {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  Send("position fen " + fen);
  Send("go depth " + std::to_string(depth));
  std::optional<EngineEval> last;
  for (;;) {
    const std::string line = ReadLine(deadline);
    if (line.starts_with("bestmove")) break;
    if (std::optional<EngineEval> eval = ParseInfoScore(line)) last = eval;
  }
  if (!last) throw EngineProtocolError(path_ + ": no score before bestmove for " + fen);
  return *last;
}

}  // namespace arena::analysis
