#include <optional>
#include <regex>
#include <string>

#include "arena/chess/board.h"
#include "arena/text.h"

namespace arena::chess {
namespace {

std::optional<PieceType> PieceFromLetter(char c) {
  switch (c) {
    case 'P': return kPawn;
    case 'N': return kKnight;
    case 'B': return kBishop;
    case 'R': return kRook;
    case 'Q': return kQueen;
    case 'K': return kKing;
    default: return std::nullopt;
  }
}

char LetterOf(PieceType t) {
  constexpr char kLetters[] = " PNBRQK";
  return kLetters[t];
}

std::string IllegalFor(const Board& b, std::string_view raw) {
  return "illegal move for " + std::string(ColorName(b.side_to_move)) + ": " +
         std::string(raw);
}

// Distinguishes "no such move" from "the move exists but exposes the king".
Rejection RuleRejection(const Board& b, std::string_view raw,
                        const std::vector<ChessMove>& pseudo_matches) {
  if (!pseudo_matches.empty()) {
    return Rejection::Rule("illegal move: " + std::string(raw) +
                           " leaves the king in check");
  }
  return Rejection::Rule(IllegalFor(b, raw));
}

std::optional<std::variant<ChessMove, Rejection>> ParseUci(const Board& b,
                                                           std::string_view text) {
  static const std::regex kUci("^([a-h][1-8])([a-h][1-8])([qrbnQRBN]?)$");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, kUci)) return std::nullopt;
  ChessMove move;
  move.from = static_cast<uint8_t>(*ParseSquare(m[1].str()));
  move.to = static_cast<uint8_t>(*ParseSquare(m[2].str()));
  if (m[3].length() > 0) {
    move.promotion = *PieceFromLetter(static_cast<char>(std::toupper(m[3].str()[0])));
  }
  std::vector<ChessMove> pseudo;
  for (const ChessMove& candidate : PseudoLegalMoves(b)) {
    if (candidate == move) pseudo.push_back(candidate);
  }
  if (!pseudo.empty() && IsLegal(b, move)) return move;
  if (pseudo.empty() && move.promotion == kNoPiece) {
    ChessMove queen = move;
    queen.promotion = kQueen;
    if (IsLegal(b, queen)) {
      return Rejection::Rule("illegal move: coordinate notation must name the "
                             "promotion piece, e.g. " + queen.ToUci());
    }
  }
  return RuleRejection(b, text, pseudo);
}

bool IsCastleToken(std::string_view s, bool long_side) {
  if (long_side) return s == "O-O-O" || s == "0-0-0" || s == "o-o-o";
  return s == "O-O" || s == "0-0" || s == "o-o";
}

std::variant<ChessMove, Rejection> ParseSan(const Board& b, std::string_view raw,
                                            std::string_view text) {
  const Color us = b.side_to_move;
  std::vector<ChessMove> pseudo = PseudoLegalMoves(b);

  auto resolve = [&](auto&& matches_pattern) -> std::variant<ChessMove, Rejection> {
    std::vector<ChessMove> pseudo_matches;
    std::vector<ChessMove> legal_matches;
    for (const ChessMove& m : pseudo) {
      if (!matches_pattern(m)) continue;
      pseudo_matches.push_back(m);
      if (IsLegal(b, m)) legal_matches.push_back(m);
    }
    if (legal_matches.size() == 1) return legal_matches.front();
    if (legal_matches.size() > 1) {
      return Rejection::Rule("ambiguous move: " + std::string(raw) +
                             " matches more than one piece");
    }
    return RuleRejection(b, raw, pseudo_matches);
  };

  for (bool long_side : {false, true}) {
    if (!IsCastleToken(text, long_side)) continue;
    const Square king = b.king_square[us];
    const int target_file = long_side ? 2 : 6;
    return resolve([&](const ChessMove& m) {
      return m.from == king && FileOf(m.from) == 4 &&
             FileOf(m.to) == target_file && RankOf(m.to) == RankOf(m.from);
    });
  }

  static const std::regex kSan(
      "^([NBRQKP])?([a-h])?([1-8])?(x|:)?([a-h][1-8])(=?([NBRQnbrq]))?$");
  std::cmatch m;
  if (!std::regex_match(text.begin(), text.end(), m, kSan)) {
    return Rejection::Format("could not read move '" + std::string(raw) +
                             "'; use SAN like Nf3 or coordinates like g1f3");
  }
  const PieceType piece = m[1].matched ? *PieceFromLetter(m[1].str()[0]) : kPawn;
  // -1 when the SAN gives no disambiguating file or rank.
  const int from_file = m[2].matched ? m[2].str()[0] - 'a' : -1;
  const int from_rank = m[3].matched ? m[3].str()[0] - '1' : -1;
  const Square to = *ParseSquare(m[5].str());
  PieceType promotion = kNoPiece;
  if (m[7].matched) {
    promotion = *PieceFromLetter(static_cast<char>(std::toupper(m[7].str()[0])));
    if (piece != kPawn) {
      return Rejection::Format("only pawns can promote: " + std::string(raw));
    }
  }
  const int last_rank = us == kWhite ? 7 : 0;
  if (piece == kPawn && RankOf(to) == last_rank && promotion == kNoPiece) {
    promotion = kQueen;
  }

  return resolve([&](const ChessMove& cand) {
    if (cand.to != to) return false;
    if (TypeOf(b.at(cand.from)) != piece) return false;
    if (from_file >= 0 && FileOf(cand.from) != from_file) return false;
    if (from_rank >= 0 && RankOf(cand.from) != from_rank) return false;
    if (cand.promotion != promotion) return false;
    return true;
  });
}

}  // namespace

std::variant<ChessMove, Rejection> ParseMove(const Board& board, std::string_view raw) {
  std::string_view text = Trim(raw);
  if (text.empty()) return Rejection::Format("empty move");
  if (auto uci = ParseUci(board, text)) return *uci;
  while (!text.empty() && (text.back() == '+' || text.back() == '#' ||
                           text.back() == '!' || text.back() == '?')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return Rejection::Format("could not read move '" + std::string(raw) + "'");
  return ParseSan(board, Trim(raw), text);
}

std::string ToSan(const Board& b, const ChessMove& move) {
  const PieceType type = TypeOf(b.at(move.from));
  std::string san;
  if (type == kKing && (FileOf(move.to) - FileOf(move.from) == 2 ||
                        FileOf(move.from) - FileOf(move.to) == 2)) {
    san = FileOf(move.to) == 6 ? "O-O" : "O-O-O";
  } else {
    const bool capture = IsCapture(b, move);
    if (type == kPawn) {
      if (capture) {
        san += static_cast<char>('a' + FileOf(move.from));
        san += 'x';
      }
      san += SquareName(move.to);
      if (move.promotion != kNoPiece) {
        san += '=';
        san += LetterOf(move.promotion);
      }
    } else {
      san += LetterOf(type);
      bool same_file = false;
      bool same_rank = false;
      bool ambiguous = false;
      for (const ChessMove& other : LegalMoves(b)) {
        if (other.to != move.to || other.from == move.from) continue;
        if (TypeOf(b.at(other.from)) != type) continue;
        ambiguous = true;
        if (FileOf(other.from) == FileOf(move.from)) same_file = true;
        if (RankOf(other.from) == RankOf(move.from)) same_rank = true;
      }
      if (ambiguous) {
        if (!same_file) {
          san += static_cast<char>('a' + FileOf(move.from));
        } else if (!same_rank) {
          san += static_cast<char>('1' + RankOf(move.from));
        } else {
          san += SquareName(move.from);
        }
      }
      if (capture) san += 'x';
      san += SquareName(move.to);
    }
  }
  Board after = b;
  MakeMove(after, move);
  if (InCheck(after)) san += HasLegalMove(after) ? '+' : '#';
  return san;
}

}  // namespace arena::chess
