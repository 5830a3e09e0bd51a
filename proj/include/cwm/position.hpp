#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/types.hpp"

namespace cwm {

using Bitboard = std::uint64_t;

enum CastlingRight : std::uint8_t {
  kWhiteKingside = 1,
  kWhiteQueenside = 2,
  kBlackKingside = 4,
  kBlackQueenside = 8,
};

enum class Termination : std::uint8_t {
  Ongoing,
  Checkmate,
  Stalemate,
  InsufficientMaterial,
  SeventyFiveMove,
  FivefoldRepetition,
  ClaimableFiftyMove,
  ClaimableThreefold,
};

std::string_view to_string(Termination t);

class MoveList {
 public:
  static constexpr std::size_t kCapacity = 256;

  void push(Move m) { moves_[size_++] = m; }
  void clear() { size_ = 0; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Move& operator[](std::size_t i) const { return moves_[i]; }
  const Move* begin() const { return moves_.data(); }
  const Move* end() const { return moves_.data() + size_; }

 private:
  std::array<Move, kCapacity> moves_{};
  std::size_t size_ = 0;
};

// Placement and FEN-level auxiliary state. Trivially copyable; no history.
class Board {
 public:
  static Board initial();
  // Throws Error(BadFen). The halfmove and fullmove fields are optional.
  static Board from_fen(std::string_view fen);

  // Standard six-field FEN; the ep field is written only when an en passant
  // capture is legal.
  std::string fen() const;

  Piece at(Square sq) const { return mailbox_[sq]; }
  Color side_to_move() const { return side_; }
  std::uint8_t castling() const { return castling_; }
  bool can_castle(CastlingRight r) const { return (castling_ & r) != 0; }
  // Skipped square of the last double pawn push, whether or not capturable.
  std::optional<Square> ep_square() const;
  // ep_square() filtered to the case where some en passant capture is legal.
  std::optional<Square> legal_ep_square() const;
  unsigned halfmove_clock() const { return halfmove_; }
  unsigned fullmove_number() const { return fullmove_; }

  Bitboard pieces(Piece p) const { return by_piece_[static_cast<int>(p)]; }
  Bitboard occupancy(Color c) const { return by_color_[static_cast<int>(c)]; }
  Bitboard occupancy() const { return by_color_[0] | by_color_[1]; }
  Square king_square(Color c) const;

  bool is_attacked(Square sq, Color by) const;
  bool in_check() const;

  // Legal moves in generation order (fast path for perft and playouts).
  void generate_legal(MoveList& out) const;
  // Legal moves sorted by ascending packed token id.
  std::vector<Move> legal_moves() const;
  bool has_legal_move() const;
  bool is_legal(const Move& m) const;

  bool is_capture(const Move& m) const;
  bool is_en_passant(const Move& m) const;
  bool is_castling(const Move& m) const;

  // Applies a move assumed legal. Use Position::apply for checked play.
  void play(const Move& m);

  // Hash of placement, side, castling rights and en passant capture
  // legality; equal keys mean the same position for repetition purposes.
  std::uint64_t repetition_key() const;

  bool insufficient_material() const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  void put(Square sq, Piece p);
  void remove(Square sq);
  void generate_pseudo(MoveList& out) const;
  bool leaves_king_safe(const Move& m) const;

  std::array<Bitboard, kNumPieceCodes> by_piece_{};
  std::array<Bitboard, 2> by_color_{};
  std::array<Piece, kNumSquares> mailbox_{};
  Color side_ = Color::White;
  std::uint8_t castling_ = 0;
  std::uint8_t ep_ = kNoSquare;
  std::uint32_t halfmove_ = 0;
  std::uint32_t fullmove_ = 1;

  static constexpr std::uint8_t kNoSquare = 64;
};

// A board plus the repetition keys seen since the last irreversible move
// (pawn move, capture or loss of a castling right), current key included.
class Position {
 public:
  static Position initial();
  static Position from_fen(std::string_view fen);

  const Board& board() const { return board_; }
  std::span<const std::uint64_t> repetition_history() const { return history_; }
  // Occurrences of the most frequent key in the history.
  int max_repetitions() const;

  // Throws Error(IllegalMove) when m is not legal here.
  void apply(const Move& m);
  // Same as apply for a move already known to be legal (e.g. taken from
  // legal_moves()); skips the legality check.
  void apply_trusted(const Move& m);

 private:
  explicit Position(const Board& b);

  Board board_;
  std::vector<std::uint64_t> history_;
};

Position initial_position();
std::vector<Move> legal_moves(const Position& p);
Position apply_move(const Position& p, const Move& m);
Termination termination_status(const Position& p);
// termination_status for a caller that already knows whether a legal move
// exists.
Termination termination_status(const Position& p, bool has_legal_move);
std::uint64_t perft(const Board& b, int depth);
inline std::uint64_t perft(const Position& p, int depth) { return perft(p.board(), depth); }

}  // namespace cwm
