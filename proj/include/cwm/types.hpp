#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cwm {

// Squares are numbered a8 = 0, b8 = 1, ..., h1 = 63 so that a square index is
// also the position of its board label in the state vector.
using Square = std::uint8_t;

inline constexpr int kNumSquares = 64;

constexpr int file_of(Square sq) { return sq & 7; }
// 0 for rank 1 ... 7 for rank 8.
constexpr int rank_of(Square sq) { return 7 - (sq >> 3); }
constexpr Square make_square(int file, int rank) {
  return static_cast<Square>((7 - rank) * 8 + file);
}

std::optional<Square> parse_square(std::string_view name);
std::string square_name(Square sq);

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color operator~(Color c) {
  return c == Color::White ? Color::Black : Color::White;
}

enum class PieceType : std::uint8_t { None = 0, Pawn, Knight, Bishop, Rook, Queen, King };

// Board label vocabulary: 0 empty, 1..6 white PNBRQK, 7..12 black PNBRQK.
enum class Piece : std::uint8_t {
  Empty = 0,
  WhitePawn, WhiteKnight, WhiteBishop, WhiteRook, WhiteQueen, WhiteKing,
  BlackPawn, BlackKnight, BlackBishop, BlackRook, BlackQueen, BlackKing,
};

inline constexpr int kNumPieceCodes = 13;

constexpr Piece make_piece(Color c, PieceType t) {
  return static_cast<Piece>(static_cast<int>(t) + (c == Color::Black ? 6 : 0));
}
constexpr PieceType type_of(Piece p) {
  const int v = static_cast<int>(p);
  return v == 0 ? PieceType::None : static_cast<PieceType>(v > 6 ? v - 6 : v);
}
constexpr Color color_of(Piece p) {
  return static_cast<int>(p) > 6 ? Color::Black : Color::White;
}

char piece_char(Piece p);                      // FEN letter, '.' for empty
std::optional<Piece> piece_from_char(char c);  // FEN letter

enum class Promo : std::uint8_t { None = 0, Queen, Rook, Bishop, Knight };

PieceType promo_piece_type(Promo p);

struct Move {
  Square src = 0;
  Square tgt = 0;
  Promo promo = Promo::None;

  // A decoded token may carry src == tgt; such a triple is not a move.
  constexpr bool well_formed() const {
    return src < 64 && tgt < 64 && src != tgt && static_cast<int>(promo) <= 4;
  }

  friend constexpr bool operator==(const Move&, const Move&) = default;
};

std::string to_uci(const Move& m);
std::optional<Move> parse_uci(std::string_view text);

}  // namespace cwm
