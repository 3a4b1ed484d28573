#include "reference_chess.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace reference {
namespace {

constexpr int kKnight[8] = {33, 31, 18, 14, -33, -31, -18, -14};
constexpr int kKing[8] = {1, -1, 16, -16, 15, 17, -15, -17};
constexpr int kDiagonal[4] = {15, 17, -15, -17};
constexpr int kStraight[4] = {1, -1, 16, -16};

bool OnBoard(int sq) { return sq >= 0 && sq < 128 && (sq & 0x88) == 0; }
bool IsWhite(char c) { return c >= 'A' && c <= 'Z'; }
bool IsBlack(char c) { return c >= 'a' && c <= 'z'; }
bool Own(char c, bool white) { return white ? IsWhite(c) : IsBlack(c); }
bool Enemy(char c, bool white) { return white ? IsBlack(c) : IsWhite(c); }

int SquareFromName(const std::string& name) {
  if (name.size() != 2) throw std::runtime_error("bad square " + name);
  return (name[1] - '1') * 16 + (name[0] - 'a');
}

std::string SquareName(int sq) {
  return std::string{static_cast<char>('a' + (sq & 7)), static_cast<char>('1' + (sq >> 4))};
}

void AddPawnMove(std::vector<Move>& out, int from, int to, bool white) {
  const int last_rank = white ? 7 : 0;
  if ((to >> 4) == last_rank) {
    for (char p : {'q', 'r', 'b', 'n'}) out.push_back({from, to, p});
  } else {
    out.push_back({from, to, 0});
  }
}

std::vector<Move> Pseudo(const Position& pos) {
  std::vector<Move> out;
  const bool white = pos.white_to_move;
  for (int sq = 0; sq < 128; ++sq) {
    if (!OnBoard(sq)) continue;
    const char piece = pos.board[sq];
    if (!Own(piece, white)) continue;
    const char kind = static_cast<char>(std::tolower(piece));
    if (kind == 'p') {
      const int dir = white ? 16 : -16;
      const int start_rank = white ? 1 : 6;
      const int one = sq + dir;
      if (OnBoard(one) && pos.board[one] == '.') {
        AddPawnMove(out, sq, one, white);
        const int two = one + dir;
        if ((sq >> 4) == start_rank && pos.board[two] == '.') out.push_back({sq, two, 0});
      }
      for (int side : {-1, 1}) {
        const int to = sq + dir + side;
        if (!OnBoard(to)) continue;
        if (Enemy(pos.board[to], white) || to == pos.ep) AddPawnMove(out, sq, to, white);
      }
    } else if (kind == 'n' || kind == 'k') {
      const int* offsets = kind == 'n' ? kKnight : kKing;
      for (int i = 0; i < 8; ++i) {
        const int to = sq + offsets[i];
        if (OnBoard(to) && !Own(pos.board[to], white)) out.push_back({sq, to, 0});
      }
    } else {
      std::vector<int> dirs;
      if (kind == 'b' || kind == 'q') dirs.insert(dirs.end(), kDiagonal, kDiagonal + 4);
      if (kind == 'r' || kind == 'q') dirs.insert(dirs.end(), kStraight, kStraight + 4);
      for (int d : dirs) {
        for (int to = sq + d; OnBoard(to); to += d) {
          if (Own(pos.board[to], white)) break;
          out.push_back({sq, to, 0});
          if (pos.board[to] != '.') break;
        }
      }
    }
  }
  // Castling: the king may not start, pass through or land in check.
  const int home = white ? 0 : 112;
  const char king = white ? 'K' : 'k';
  const char rook = white ? 'R' : 'r';
  if (pos.board[home + 4] == king && !Attacked(pos, home + 4, !white)) {
    const bool can_k = white ? pos.castle_wk : pos.castle_bk;
    const bool can_q = white ? pos.castle_wq : pos.castle_bq;
    if (can_k && pos.board[home + 7] == rook && pos.board[home + 5] == '.' &&
        pos.board[home + 6] == '.' && !Attacked(pos, home + 5, !white) &&
        !Attacked(pos, home + 6, !white)) {
      out.push_back({home + 4, home + 6, 0});
    }
    if (can_q && pos.board[home + 0] == rook && pos.board[home + 1] == '.' &&
        pos.board[home + 2] == '.' && pos.board[home + 3] == '.' &&
        !Attacked(pos, home + 3, !white) && !Attacked(pos, home + 2, !white)) {
      out.push_back({home + 4, home + 2, 0});
    }
  }
  return out;
}

}  // namespace

Position FromFen(const std::string& fen) {
  std::istringstream in(fen);
  std::string placement, side, castling, ep;
  in >> placement >> side >> castling >> ep;
  Position pos;
  std::fill(std::begin(pos.board), std::end(pos.board), '.');
  int rank = 7;
  int file = 0;
  for (char c : placement) {
    if (c == '/') {
      --rank;
      file = 0;
    } else if (c >= '1' && c <= '8') {
      file += c - '0';
    } else {
      pos.board[rank * 16 + file] = c;
      ++file;
    }
  }
  pos.white_to_move = side == "w";
  pos.castle_wk = castling.find('K') != std::string::npos;
  pos.castle_wq = castling.find('Q') != std::string::npos;
  pos.castle_bk = castling.find('k') != std::string::npos;
  pos.castle_bq = castling.find('q') != std::string::npos;
  pos.ep = ep == "-" || ep.empty() ? -1 : SquareFromName(ep);
  if (!(in >> pos.halfmove)) pos.halfmove = 0;
  if (!(in >> pos.fullmove)) pos.fullmove = 1;
  return pos;
}

std::string ToFen(const Position& pos) {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const char c = pos.board[rank * 16 + file];
      if (c == '.') {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += c;
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (rank) out += '/';
  }
  out += pos.white_to_move ? " w " : " b ";
  std::string castling;
  if (pos.castle_wk) castling += 'K';
  if (pos.castle_wq) castling += 'Q';
  if (pos.castle_bk) castling += 'k';
  if (pos.castle_bq) castling += 'q';
  out += castling.empty() ? "-" : castling;
  out += " " + (pos.ep < 0 ? std::string("-") : SquareName(pos.ep));
  out += " " + std::to_string(pos.halfmove) + " " + std::to_string(pos.fullmove);
  return out;
}

std::string MoveToUci(const Move& m) {
  std::string s = SquareName(m.from) + SquareName(m.to);
  if (m.promo) s += m.promo;
  return s;
}

bool Attacked(const Position& pos, int square, bool by_white) {
  // Pawns: a white pawn on s attacks s+15 and s+17.
  for (int d : {15, 17}) {
    const int from = by_white ? square - d : square + d;
    if (OnBoard(from) && pos.board[from] == (by_white ? 'P' : 'p')) return true;
  }
  for (int d : kKnight) {
    const int from = square + d;
    if (OnBoard(from) && pos.board[from] == (by_white ? 'N' : 'n')) return true;
  }
  for (int d : kKing) {
    const int from = square + d;
    if (OnBoard(from) && pos.board[from] == (by_white ? 'K' : 'k')) return true;
  }
  for (int d : kDiagonal) {
    for (int from = square + d; OnBoard(from); from += d) {
      const char c = pos.board[from];
      if (c == '.') continue;
      if (c == (by_white ? 'B' : 'b') || c == (by_white ? 'Q' : 'q')) return true;
      break;
    }
  }
  for (int d : kStraight) {
    for (int from = square + d; OnBoard(from); from += d) {
      const char c = pos.board[from];
      if (c == '.') continue;
      if (c == (by_white ? 'R' : 'r') || c == (by_white ? 'Q' : 'q')) return true;
      break;
    }
  }
  return false;
}

bool SideToMoveInCheck(const Position& pos) {
  const char king = pos.white_to_move ? 'K' : 'k';
  for (int sq = 0; sq < 128; ++sq) {
    if (OnBoard(sq) && pos.board[sq] == king) return Attacked(pos, sq, !pos.white_to_move);
  }
  return false;
}

Position Play(const Position& pos, const Move& m) {
  Position next = pos;
  const bool white = pos.white_to_move;
  const char piece = pos.board[m.from];
  const char kind = static_cast<char>(std::tolower(piece));
  const bool capture = pos.board[m.to] != '.';
  next.board[m.to] = piece;
  next.board[m.from] = '.';
  next.ep = -1;
  if (kind == 'p') {
    if (m.to == pos.ep && !capture) next.board[m.to + (white ? -16 : 16)] = '.';
    if (m.promo) {
      next.board[m.to] = white ? static_cast<char>(std::toupper(m.promo)) : m.promo;
    }
    if (m.to - m.from == 32 || m.from - m.to == 32) next.ep = (m.from + m.to) / 2;
  }
  if (kind == 'k' && (m.to - m.from == 2 || m.from - m.to == 2)) {
    const int home = m.from - 4;
    if (m.to > m.from) {
      next.board[home + 5] = next.board[home + 7];
      next.board[home + 7] = '.';
    } else {
      next.board[home + 3] = next.board[home + 0];
      next.board[home + 0] = '.';
    }
  }
  for (int sq : {m.from, m.to}) {
    if (sq == 4) next.castle_wk = next.castle_wq = false;
    if (sq == 116) next.castle_bk = next.castle_bq = false;
    if (sq == 0) next.castle_wq = false;
    if (sq == 7) next.castle_wk = false;
    if (sq == 112) next.castle_bq = false;
    if (sq == 119) next.castle_bk = false;
  }
  next.halfmove = (kind == 'p' || capture) ? 0 : pos.halfmove + 1;
  if (!white) ++next.fullmove;
  next.white_to_move = !white;
  return next;
}

std::vector<Move> Legal(const Position& pos) {
  std::vector<Move> out;
  for (const Move& m : Pseudo(pos)) {
    Position next = Play(pos, m);
    // After the move it is the opponent's turn; the mover's king must be safe.
    next.white_to_move = pos.white_to_move;
    if (!SideToMoveInCheck(next)) out.push_back(m);
  }
  return out;
}

std::vector<std::string> LegalUci(const Position& pos) {
  std::vector<std::string> out;
  for (const Move& m : Legal(pos)) out.push_back(MoveToUci(m));
  std::sort(out.begin(), out.end());
  return out;
}

uint64_t Perft(const Position& pos, int depth) {
  if (depth == 0) return 1;
  const std::vector<Move> moves = Legal(pos);
  if (depth == 1) return moves.size();
  uint64_t total = 0;
  for (const Move& m : moves) total += Perft(Play(pos, m), depth - 1);
  return total;
}

}  // namespace reference
