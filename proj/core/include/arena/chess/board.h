#ifndef ARENA_CHESS_BOARD_H_
#define ARENA_CHESS_BOARD_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arena/errors.h"
#include "arena/types.h"

namespace arena::chess {

enum Color : uint8_t { kWhite = 0, kBlack = 1 };

inline constexpr Color Opponent(Color c) { return c == kWhite ? kBlack : kWhite; }
std::string_view ColorName(Color c);

enum PieceType : uint8_t {
  kNoPiece = 0,
  kPawn = 1,
  kKnight = 2,
  kBishop = 3,
  kRook = 4,
  kQueen = 5,
  kKing = 6,
};

// A square's contents: 0 when empty, otherwise type | color << 3.
using Piece = uint8_t;
inline constexpr Piece kEmpty = 0;
inline constexpr Piece MakePiece(Color c, PieceType t) {
  return static_cast<Piece>(t | (c << 3));
}
inline constexpr PieceType TypeOf(Piece p) { return static_cast<PieceType>(p & 7); }
inline constexpr Color ColorOf(Piece p) { return static_cast<Color>(p >> 3); }

// Squares are numbered a1 = 0, b1 = 1, ..., h8 = 63.
using Square = int;
inline constexpr int FileOf(Square s) { return s & 7; }
inline constexpr int RankOf(Square s) { return s >> 3; }
inline constexpr Square MakeSquare(int file, int rank) { return rank * 8 + file; }
std::string SquareName(Square s);
std::optional<Square> ParseSquare(std::string_view name);

enum CastlingRight : uint8_t {
  kWhiteKingside = 1,
  kWhiteQueenside = 2,
  kBlackKingside = 4,
  kBlackQueenside = 8,
};

struct ChessMove {
  uint8_t from = 0;
  uint8_t to = 0;
  PieceType promotion = kNoPiece;

  std::string ToUci() const;
  friend bool operator==(const ChessMove&, const ChessMove&) = default;
};

// Placement, side to move, castling rights, en-passant target and clocks.
// Trivially copyable so move legality can be tested on copies.
struct Board {
  std::array<Piece, 64> squares{};
  Color side_to_move = kWhite;
  uint8_t castling = 0;
  int8_t en_passant = -1;
  int halfmove_clock = 0;
  int fullmove_number = 1;
  std::array<int8_t, 2> king_square{-1, -1};

  Piece at(Square s) const { return squares[s]; }
  friend bool operator==(const Board&, const Board&) = default;
};

// A board plus the keys of every position reached so far (current last),
// used for repetition detection.
struct BoardState {
  Board board;
  std::vector<uint64_t> history;

  friend bool operator==(const BoardState&, const BoardState&) = default;
};

class FenError : public ArenaError {
 public:
  FenError(int field, const std::string& reason);
  int field() const { return field_; }

 private:
  int field_;
};

inline constexpr std::string_view kInitialFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

// Accepts four or six space-separated fields; missing clocks default to
// "0 1". Field indices in FenError are zero-based.
BoardState ParseFen(std::string_view fen);
BoardState InitialState();
std::string ToFen(const Board& board);

uint64_t PositionKey(const Board& board);

bool IsSquareAttacked(const Board& board, Square square, Color by);
bool InCheck(const Board& board);

// Moves that obey piece movement but may leave the mover's king in check.
std::vector<ChessMove> PseudoLegalMoves(const Board& board);
// Complete legal move list sorted by UCI string.
std::vector<ChessMove> LegalMoves(const Board& board);
bool HasLegalMove(const Board& board);
bool IsLegal(const Board& board, const ChessMove& move);

// Plays `move` without checking legality.
void MakeMove(Board& board, const ChessMove& move);

// Throws ContractError if `move` is not legal in `state`.
BoardState ApplyMove(const BoardState& state, const ChessMove& move);

bool IsCapture(const Board& board, const ChessMove& move);

struct Termination {
  GameStatus status = GameStatus::InProgress();
  // Set for decisive results only.
  std::optional<Color> winner;
};

namespace reason {
inline constexpr std::string_view kCheckmate = "checkmate";
inline constexpr std::string_view kStalemate = "stalemate";
inline constexpr std::string_view kInsufficientMaterial = "insufficient-material";
inline constexpr std::string_view kFiftyMove = "fifty-move";
inline constexpr std::string_view kThreefold = "threefold-repetition";
}  // namespace reason

// Checkmate, stalemate, K-K / KB-K / KN-K, halfmove clock >= 100 and
// threefold repetition all end the game without a claim.
Termination TerminalStatus(const BoardState& state);
bool HasInsufficientMaterial(const Board& board);

uint64_t Perft(const Board& board, int depth);

// Accepts UCI long algebraic first, then SAN. SAN check and mate suffixes
// are tolerated; a SAN promotion without a piece promotes to a queen.
std::variant<ChessMove, Rejection> ParseMove(const Board& board,
                                             std::string_view raw);

// Standard algebraic notation for a legal move.
std::string ToSan(const Board& board, const ChessMove& move);

// Eight-line diagram, rank 8 first, '.' for empty squares.
std::string RenderBoard(const Board& board);

}  // namespace arena::chess

#endif  // ARENA_CHESS_BOARD_H_
