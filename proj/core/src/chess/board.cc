#include "arena/chess/board.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <string>

#include "arena/text.h"

namespace arena::chess {
namespace {

constexpr std::array<std::array<int, 2>, 8> kKnightSteps = {{
    {1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2},
}};
constexpr std::array<std::array<int, 2>, 8> kKingSteps = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1},
}};
constexpr std::array<std::array<int, 2>, 4> kRookDirs = {{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1},
}};
constexpr std::array<std::array<int, 2>, 4> kBishopDirs = {{
    {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
}};

constexpr bool OnBoard(int file, int rank) {
  return file >= 0 && file < 8 && rank >= 0 && rank < 8;
}

constexpr char kPieceChars[] = " pnbrqk";

char PieceChar(Piece p) {
  char c = kPieceChars[TypeOf(p)];
  return ColorOf(p) == kWhite ? static_cast<char>(c - 'a' + 'A') : c;
}

std::optional<Piece> PieceFromChar(char c) {
  const bool white = c >= 'A' && c <= 'Z';
  const char lower = white ? static_cast<char>(c - 'A' + 'a') : c;
  for (int t = kPawn; t <= kKing; ++t) {
    if (kPieceChars[t] == lower) {
      return MakePiece(white ? kWhite : kBlack, static_cast<PieceType>(t));
    }
  }
  return std::nullopt;
}

// Zobrist keys derived from splitmix64 so they are identical on every build.
struct ZobristTable {
  std::array<std::array<uint64_t, 64>, 16> piece{};
  uint64_t black_to_move = 0;
  std::array<uint64_t, 16> castling{};
  std::array<uint64_t, 8> en_passant_file{};

  constexpr ZobristTable() {
    uint64_t state = 0x5EED5EED12345678ULL;
    auto next = [&state]() {
      state += 0x9E3779B97F4A7C15ULL;
      uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      return z ^ (z >> 31);
    };
    for (auto& row : piece) {
      for (auto& key : row) key = next();
    }
    black_to_move = next();
    for (auto& key : castling) key = next();
    for (auto& key : en_passant_file) key = next();
  }
};

constexpr ZobristTable kZobrist;

void AddMove(std::vector<ChessMove>& out, Square from, Square to,
             PieceType promotion = kNoPiece) {
  out.push_back(ChessMove{static_cast<uint8_t>(from), static_cast<uint8_t>(to),
                          promotion});
}

void AddPawnMove(std::vector<ChessMove>& out, Square from, Square to) {
  if (RankOf(to) == 0 || RankOf(to) == 7) {
    for (PieceType t : {kQueen, kRook, kBishop, kKnight}) AddMove(out, from, to, t);
  } else {
    AddMove(out, from, to);
  }
}

void GenerateSliding(const Board& b, Square from, Color us,
                     const std::array<std::array<int, 2>, 4>& dirs,
                     std::vector<ChessMove>& out) {
  for (const auto& d : dirs) {
    int f = FileOf(from) + d[0];
    int r = RankOf(from) + d[1];
    while (OnBoard(f, r)) {
      const Square to = MakeSquare(f, r);
      const Piece p = b.squares[to];
      if (p == kEmpty) {
        AddMove(out, from, to);
      } else {
        if (ColorOf(p) != us) AddMove(out, from, to);
        break;
      }
      f += d[0];
      r += d[1];
    }
  }
}

void GenerateSteps(const Board& b, Square from, Color us,
                   const std::array<std::array<int, 2>, 8>& steps,
                   std::vector<ChessMove>& out) {
  for (const auto& d : steps) {
    const int f = FileOf(from) + d[0];
    const int r = RankOf(from) + d[1];
    if (!OnBoard(f, r)) continue;
    const Square to = MakeSquare(f, r);
    const Piece p = b.squares[to];
    if (p == kEmpty || ColorOf(p) != us) AddMove(out, from, to);
  }
}

void GeneratePawn(const Board& b, Square from, Color us,
                  std::vector<ChessMove>& out) {
  const int dir = us == kWhite ? 1 : -1;
  const int start_rank = us == kWhite ? 1 : 6;
  const int f = FileOf(from);
  const int r = RankOf(from);
  const int r1 = r + dir;
  if (r1 < 0 || r1 > 7) return;
  const Square one = MakeSquare(f, r1);
  if (b.squares[one] == kEmpty) {
    AddPawnMove(out, from, one);
    if (r == start_rank) {
      const Square two = MakeSquare(f, r + 2 * dir);
      if (b.squares[two] == kEmpty) AddMove(out, from, two);
    }
  }
  for (int df : {-1, 1}) {
    const int cf = f + df;
    if (cf < 0 || cf > 7) continue;
    const Square to = MakeSquare(cf, r1);
    const Piece p = b.squares[to];
    if ((p != kEmpty && ColorOf(p) != us) || to == b.en_passant) {
      AddPawnMove(out, from, to);
    }
  }
}

void GenerateCastling(const Board& b, Color us, std::vector<ChessMove>& out) {
  const int rank = us == kWhite ? 0 : 7;
  const uint8_t king_side = us == kWhite ? kWhiteKingside : kBlackKingside;
  const uint8_t queen_side = us == kWhite ? kWhiteQueenside : kBlackQueenside;
  const Square king = MakeSquare(4, rank);
  if ((b.castling & (king_side | queen_side)) == 0) return;
  if (b.squares[king] != MakePiece(us, kKing)) return;
  const Color them = Opponent(us);
  if (IsSquareAttacked(b, king, them)) return;
  auto empty = [&](int file) { return b.squares[MakeSquare(file, rank)] == kEmpty; };
  auto safe = [&](int file) {
    return !IsSquareAttacked(b, MakeSquare(file, rank), them);
  };
  if ((b.castling & king_side) && empty(5) && empty(6) && safe(5) && safe(6) &&
      b.squares[MakeSquare(7, rank)] == MakePiece(us, kRook)) {
    AddMove(out, king, MakeSquare(6, rank));
  }
  if ((b.castling & queen_side) && empty(3) && empty(2) && empty(1) && safe(3) &&
      safe(2) && b.squares[MakeSquare(0, rank)] == MakePiece(us, kRook)) {
    AddMove(out, king, MakeSquare(2, rank));
  }
}

void GeneratePseudo(const Board& b, std::vector<ChessMove>& out) {
  const Color us = b.side_to_move;
  for (Square s = 0; s < 64; ++s) {
    const Piece p = b.squares[s];
    if (p == kEmpty || ColorOf(p) != us) continue;
    switch (TypeOf(p)) {
      case kPawn:
        GeneratePawn(b, s, us, out);
        break;
      case kKnight:
        GenerateSteps(b, s, us, kKnightSteps, out);
        break;
      case kBishop:
        GenerateSliding(b, s, us, kBishopDirs, out);
        break;
      case kRook:
        GenerateSliding(b, s, us, kRookDirs, out);
        break;
      case kQueen:
        GenerateSliding(b, s, us, kBishopDirs, out);
        GenerateSliding(b, s, us, kRookDirs, out);
        break;
      case kKing:
        GenerateSteps(b, s, us, kKingSteps, out);
        break;
      default:
        break;
    }
  }
  GenerateCastling(b, us, out);
}

bool LeavesKingSafe(const Board& b, const ChessMove& m) {
  Board copy = b;
  MakeMove(copy, m);
  return !IsSquareAttacked(copy, copy.king_square[b.side_to_move],
                           copy.side_to_move);
}

// Sort key that orders moves exactly as their UCI strings would sort.
int UciOrder(const ChessMove& m) {
  int promo = 0;
  switch (m.promotion) {
    case kBishop: promo = 1; break;
    case kKnight: promo = 2; break;
    case kQueen: promo = 3; break;
    case kRook: promo = 4; break;
    default: break;
  }
  const int from = FileOf(m.from) * 8 + RankOf(m.from);
  const int to = FileOf(m.to) * 8 + RankOf(m.to);
  return (from * 64 + to) * 5 + promo;
}

uint64_t PerftImpl(const Board& b, int depth) {
  std::vector<ChessMove> moves;
  moves.reserve(64);
  GeneratePseudo(b, moves);
  uint64_t nodes = 0;
  for (const ChessMove& m : moves) {
    Board copy = b;
    MakeMove(copy, m);
    if (IsSquareAttacked(copy, copy.king_square[b.side_to_move], copy.side_to_move)) {
      continue;
    }
    nodes += depth == 1 ? 1 : PerftImpl(copy, depth - 1);
  }
  return nodes;
}

bool ParseInt(std::string_view text, int& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string_view ColorName(Color c) { return c == kWhite ? "white" : "black"; }

std::string SquareName(Square s) {
  return {static_cast<char>('a' + FileOf(s)), static_cast<char>('1' + RankOf(s))};
}

std::optional<Square> ParseSquare(std::string_view name) {
  if (name.size() != 2) return std::nullopt;
  if (name[0] < 'a' || name[0] > 'h' || name[1] < '1' || name[1] > '8') {
    return std::nullopt;
  }
  return MakeSquare(name[0] - 'a', name[1] - '1');
}

std::string ChessMove::ToUci() const {
  std::string out = SquareName(from) + SquareName(to);
  if (promotion != kNoPiece) out += kPieceChars[promotion];
  return out;
}

FenError::FenError(int field, const std::string& reason)
    : ArenaError("invalid FEN field " + std::to_string(field) + ": " + reason),
      field_(field) {}

BoardState ParseFen(std::string_view fen) {
  const std::vector<std::string_view> fields = SplitWhitespace(fen);
  if (fields.empty()) throw FenError(0, "placement: empty input");
  if (fields.size() != 4 && fields.size() != 6) {
    // Still report the placement first if it is the broken part.
    if (fields.size() < 4 && fields[0].find('/') == std::string_view::npos) {
      throw FenError(0, "placement: expected 8 ranks separated by '/'");
    }
    throw FenError(static_cast<int>(std::min<size_t>(fields.size(), 5)),
                   "expected 4 or 6 fields, got " + std::to_string(fields.size()));
  }

  Board b;
  // Field 0: placement.
  {
    int rank = 7;
    int file = 0;
    for (char c : fields[0]) {
      if (c == '/') {
        if (file != 8) throw FenError(0, "placement: rank does not have 8 squares");
        --rank;
        file = 0;
        if (rank < 0) throw FenError(0, "placement: more than 8 ranks");
      } else if (c >= '1' && c <= '8') {
        file += c - '0';
        if (file > 8) throw FenError(0, "placement: rank has more than 8 squares");
      } else {
        std::optional<Piece> piece = PieceFromChar(c);
        if (!piece) {
          throw FenError(0, std::string("placement: unexpected character '") + c + "'");
        }
        if (file >= 8) throw FenError(0, "placement: rank has more than 8 squares");
        b.squares[MakeSquare(file, rank)] = *piece;
        ++file;
      }
    }
    if (rank != 0 || file != 8) throw FenError(0, "placement: expected 8 full ranks");
    int kings[2] = {0, 0};
    for (Square s = 0; s < 64; ++s) {
      const Piece p = b.squares[s];
      if (TypeOf(p) == kKing) {
        ++kings[ColorOf(p)];
        b.king_square[ColorOf(p)] = static_cast<int8_t>(s);
      }
      if (TypeOf(p) == kPawn && (RankOf(s) == 0 || RankOf(s) == 7)) {
        throw FenError(0, "placement: pawn on the first or last rank");
      }
    }
    if (kings[0] == 0 && kings[1] == 0) throw FenError(0, "placement: no kings");
    if (kings[0] != 1 || kings[1] != 1) {
      throw FenError(0, "placement: expected exactly one king per side");
    }
  }
  // Field 1: side to move.
  if (fields[1] == "w") {
    b.side_to_move = kWhite;
  } else if (fields[1] == "b") {
    b.side_to_move = kBlack;
  } else {
    throw FenError(1, "side to move must be 'w' or 'b'");
  }
  // Field 2: castling rights.
  if (fields[2] != "-") {
    for (char c : fields[2]) {
      uint8_t bit = 0;
      switch (c) {
        case 'K': bit = kWhiteKingside; break;
        case 'Q': bit = kWhiteQueenside; break;
        case 'k': bit = kBlackKingside; break;
        case 'q': bit = kBlackQueenside; break;
        default:
          throw FenError(2, std::string("castling: unexpected character '") + c + "'");
      }
      if (b.castling & bit) throw FenError(2, "castling: repeated flag");
      b.castling |= bit;
    }
    auto require = [&](uint8_t bit, Square king, Square rook, Color c) {
      if ((b.castling & bit) && (b.squares[king] != MakePiece(c, kKing) ||
                                 b.squares[rook] != MakePiece(c, kRook))) {
        throw FenError(2, "castling: right without king and rook on home squares");
      }
    };
    require(kWhiteKingside, 4, 7, kWhite);
    require(kWhiteQueenside, 4, 0, kWhite);
    require(kBlackKingside, 60, 63, kBlack);
    require(kBlackQueenside, 60, 56, kBlack);
  }
  // Field 3: en passant target.
  if (fields[3] != "-") {
    std::optional<Square> ep = ParseSquare(fields[3]);
    if (!ep) throw FenError(3, "en passant: not a square");
    const int expected_rank = b.side_to_move == kWhite ? 5 : 2;
    if (RankOf(*ep) != expected_rank) {
      throw FenError(3, "en passant: square must be on rank 3 or 6 behind the "
                        "pawn that just moved");
    }
    b.en_passant = static_cast<int8_t>(*ep);
  }
  // Fields 4 and 5: clocks.
  if (fields.size() == 6) {
    if (!ParseInt(fields[4], b.halfmove_clock) || b.halfmove_clock < 0) {
      throw FenError(4, "halfmove clock must be a non-negative integer");
    }
    if (!ParseInt(fields[5], b.fullmove_number) || b.fullmove_number < 1) {
      throw FenError(5, "fullmove number must be a positive integer");
    }
  }
  if (IsSquareAttacked(b, b.king_square[Opponent(b.side_to_move)], b.side_to_move)) {
    throw FenError(1, "side not to move is in check");
  }
  return BoardState{b, {PositionKey(b)}};
}

BoardState InitialState() { return ParseFen(kInitialFen); }

std::string ToFen(const Board& b) {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    int empty = 0;
    for (int file = 0; file < 8; ++file) {
      const Piece p = b.squares[MakeSquare(file, rank)];
      if (p == kEmpty) {
        ++empty;
        continue;
      }
      if (empty > 0) out += static_cast<char>('0' + empty);
      empty = 0;
      out += PieceChar(p);
    }
    if (empty > 0) out += static_cast<char>('0' + empty);
    if (rank > 0) out += '/';
  }
  out += b.side_to_move == kWhite ? " w " : " b ";
  if (b.castling == 0) {
    out += '-';
  } else {
    if (b.castling & kWhiteKingside) out += 'K';
    if (b.castling & kWhiteQueenside) out += 'Q';
    if (b.castling & kBlackKingside) out += 'k';
    if (b.castling & kBlackQueenside) out += 'q';
  }
  out += ' ';
  out += b.en_passant >= 0 ? SquareName(b.en_passant) : "-";
  out += ' ' + std::to_string(b.halfmove_clock) + ' ' +
         std::to_string(b.fullmove_number);
  return out;
}

uint64_t PositionKey(const Board& b) {
  uint64_t key = 0;
  for (Square s = 0; s < 64; ++s) {
    if (b.squares[s] != kEmpty) key ^= kZobrist.piece[b.squares[s]][s];
  }
  if (b.side_to_move == kBlack) key ^= kZobrist.black_to_move;
  key ^= kZobrist.castling[b.castling];
  // The en-passant square only distinguishes positions when a capture onto it
  // is at least pseudo-legal.
  if (b.en_passant >= 0) {
    const Color us = b.side_to_move;
    const int behind = us == kWhite ? -1 : 1;
    const int f = FileOf(b.en_passant);
    const int r = RankOf(b.en_passant) + behind;
    for (int df : {-1, 1}) {
      if (f + df < 0 || f + df > 7) continue;
      if (b.squares[MakeSquare(f + df, r)] == MakePiece(us, kPawn)) {
        key ^= kZobrist.en_passant_file[f];
        break;
      }
    }
  }
  return key;
}

bool IsSquareAttacked(const Board& b, Square square, Color by) {
  const int f = FileOf(square);
  const int r = RankOf(square);
  // Pawns attack diagonally forward, so look one rank behind from `by`'s view.
  const int pr = by == kWhite ? r - 1 : r + 1;
  if (pr >= 0 && pr < 8) {
    for (int df : {-1, 1}) {
      if (OnBoard(f + df, pr) &&
          b.squares[MakeSquare(f + df, pr)] == MakePiece(by, kPawn)) {
        return true;
      }
    }
  }
  for (const auto& d : kKnightSteps) {
    if (OnBoard(f + d[0], r + d[1]) &&
        b.squares[MakeSquare(f + d[0], r + d[1])] == MakePiece(by, kKnight)) {
      return true;
    }
  }
  for (const auto& d : kKingSteps) {
    if (OnBoard(f + d[0], r + d[1]) &&
        b.squares[MakeSquare(f + d[0], r + d[1])] == MakePiece(by, kKing)) {
      return true;
    }
  }
  auto ray_hits = [&](const std::array<std::array<int, 2>, 4>& dirs, PieceType slider) {
    for (const auto& d : dirs) {
      int tf = f + d[0];
      int tr = r + d[1];
      while (OnBoard(tf, tr)) {
        const Piece p = b.squares[MakeSquare(tf, tr)];
        if (p != kEmpty) {
          if (ColorOf(p) == by && (TypeOf(p) == slider || TypeOf(p) == kQueen)) {
            return true;
          }
          break;
        }
        tf += d[0];
        tr += d[1];
      }
    }
    return false;
  };
  return ray_hits(kRookDirs, kRook) || ray_hits(kBishopDirs, kBishop);
}

bool InCheck(const Board& b) {
  return IsSquareAttacked(b, b.king_square[b.side_to_move], Opponent(b.side_to_move));
}

std::vector<ChessMove> PseudoLegalMoves(const Board& b) {
  std::vector<ChessMove> moves;
  moves.reserve(64);
  GeneratePseudo(b, moves);
  return moves;
}

std::vector<ChessMove> LegalMoves(const Board& b) {
  std::vector<ChessMove> moves = PseudoLegalMoves(b);
  std::erase_if(moves, [&](const ChessMove& m) { return !LeavesKingSafe(b, m); });
  std::sort(moves.begin(), moves.end(), [](const ChessMove& x, const ChessMove& y) {
    return UciOrder(x) < UciOrder(y);
  });
  return moves;
}

bool HasLegalMove(const Board& b) {
  std::vector<ChessMove> moves;
  moves.reserve(64);
  GeneratePseudo(b, moves);
  for (const ChessMove& m : moves) {
    if (LeavesKingSafe(b, m)) return true;
  }
  return false;
}

bool IsLegal(const Board& b, const ChessMove& move) {
  for (const ChessMove& m : PseudoLegalMoves(b)) {
    if (m == move) return LeavesKingSafe(b, m);
  }
  return false;
}

void MakeMove(Board& b, const ChessMove& m) {
  const Color us = b.side_to_move;
  const Piece piece = b.squares[m.from];
  const PieceType type = TypeOf(piece);
  const bool capture = b.squares[m.to] != kEmpty;

  b.squares[m.to] = piece;
  b.squares[m.from] = kEmpty;

  if (type == kPawn) {
    if (m.to == b.en_passant && !capture && FileOf(m.to) != FileOf(m.from)) {
      const Square victim = m.to + (us == kWhite ? -8 : 8);
      b.squares[victim] = kEmpty;
    }
    if (m.promotion != kNoPiece) b.squares[m.to] = MakePiece(us, m.promotion);
  } else if (type == kKing) {
    b.king_square[us] = static_cast<int8_t>(m.to);
    const int delta = FileOf(m.to) - FileOf(m.from);
    if (delta == 2 || delta == -2) {
      const int rank = RankOf(m.from);
      const Square rook_from = MakeSquare(delta > 0 ? 7 : 0, rank);
      const Square rook_to = MakeSquare(delta > 0 ? 5 : 3, rank);
      b.squares[rook_to] = b.squares[rook_from];
      b.squares[rook_from] = kEmpty;
    }
  }

  auto clear_rights = [&b](Square s) {
    switch (s) {
      case 0: b.castling &= ~kWhiteQueenside; break;
      case 4: b.castling &= ~(kWhiteKingside | kWhiteQueenside); break;
      case 7: b.castling &= ~kWhiteKingside; break;
      case 56: b.castling &= ~kBlackQueenside; break;
      case 60: b.castling &= ~(kBlackKingside | kBlackQueenside); break;
      case 63: b.castling &= ~kBlackKingside; break;
      default: break;
    }
  };
  clear_rights(m.from);
  clear_rights(m.to);

  b.en_passant = -1;
  if (type == kPawn && (m.to - m.from == 16 || m.from - m.to == 16)) {
    b.en_passant = static_cast<int8_t>((m.from + m.to) / 2);
  }
  b.halfmove_clock = (type == kPawn || capture) ? 0 : b.halfmove_clock + 1;
  if (us == kBlack) ++b.fullmove_number;
  b.side_to_move = Opponent(us);
}

BoardState ApplyMove(const BoardState& state, const ChessMove& move) {
  if (!IsLegal(state.board, move)) {
    throw ContractError("apply_move: " + move.ToUci() + " is not legal in " +
                        ToFen(state.board));
  }
  BoardState next = state;
  MakeMove(next.board, move);
  next.history.push_back(PositionKey(next.board));
  return next;
}

bool IsCapture(const Board& b, const ChessMove& m) {
  if (b.squares[m.to] != kEmpty) return true;
  return TypeOf(b.squares[m.from]) == kPawn && m.to == b.en_passant;
}

bool HasInsufficientMaterial(const Board& b) {
  int minors = 0;
  for (Piece p : b.squares) {
    switch (TypeOf(p)) {
      case kNoPiece:
      case kKing:
        break;
      case kKnight:
      case kBishop:
        ++minors;
        break;
      default:
        return false;
    }
  }
  return minors <= 1;
}

Termination TerminalStatus(const BoardState& state) {
  const Board& b = state.board;
  if (!HasLegalMove(b)) {
    if (InCheck(b)) {
      return {GameStatus::Over(std::string(reason::kCheckmate)),
              Opponent(b.side_to_move)};
    }
    return {GameStatus::Over(std::string(reason::kStalemate)), std::nullopt};
  }
  if (HasInsufficientMaterial(b)) {
    return {GameStatus::Over(std::string(reason::kInsufficientMaterial)), std::nullopt};
  }
  if (b.halfmove_clock >= 100) {
    return {GameStatus::Over(std::string(reason::kFiftyMove)), std::nullopt};
  }
  if (!state.history.empty()) {
    const uint64_t current = state.history.back();
    if (std::count(state.history.begin(), state.history.end(), current) >= 3) {
      return {GameStatus::Over(std::string(reason::kThreefold)), std::nullopt};
    }
  }
  return {};
}

uint64_t Perft(const Board& b, int depth) {
  if (depth <= 0) return 1;
  return PerftImpl(b, depth);
}

std::string RenderBoard(const Board& b) {
  std::string out;
  for (int rank = 7; rank >= 0; --rank) {
    out += static_cast<char>('1' + rank);
    out += ' ';
    for (int file = 0; file < 8; ++file) {
      const Piece p = b.squares[MakeSquare(file, rank)];
      out += p == kEmpty ? '.' : PieceChar(p);
      if (file < 7) out += ' ';
    }
    out += '\n';
  }
  out += "  a b c d e f g h";
  return out;
}

}  // namespace arena::chess
