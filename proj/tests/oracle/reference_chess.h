#ifndef ARENA_TESTS_ORACLE_REFERENCE_CHESS_H_
#define ARENA_TESTS_ORACLE_REFERENCE_CHESS_H_

#include <cstdint>
#include <string>
#include <vector>

// A deliberately simple chess rules implementation that shares no code with
// the arena library: 0x88 board, character pieces, legality by trying every
// pseudo-legal move and testing the mover's king afterwards.
namespace reference {

struct Position {
  // 128 squares, index = rank * 16 + file; '.' empty, "PNBRQK" white,
  // "pnbrqk" black.
  char board[128];
  bool white_to_move = true;
  bool castle_wk = false, castle_wq = false, castle_bk = false, castle_bq = false;
  int ep = -1;  // 0x88 square or -1
  int halfmove = 0;
  int fullmove = 1;
};

struct Move {
  int from = 0;
  int to = 0;
  char promo = 0;  // lowercase piece letter or 0
};

Position FromFen(const std::string& fen);
std::string ToFen(const Position& pos);
std::string MoveToUci(const Move& m);

bool Attacked(const Position& pos, int square, bool by_white);
bool SideToMoveInCheck(const Position& pos);
std::vector<Move> Legal(const Position& pos);
Position Play(const Position& pos, const Move& m);

// Sorted UCI strings of the legal moves.
std::vector<std::string> LegalUci(const Position& pos);

uint64_t Perft(const Position& pos, int depth);

}  // namespace reference

#endif  // ARENA_TESTS_ORACLE_REFERENCE_CHESS_H_
