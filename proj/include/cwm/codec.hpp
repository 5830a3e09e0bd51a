#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "cwm/position.hpp"

namespace cwm {

// Packed move vocabulary: id = src * 320 + tgt * 5 + promo for the 64x64x5
// move geometries, followed by the two special symbols.
using MoveToken = std::uint16_t;

inline constexpr MoveToken kNumMoveIds = 20480;
inline constexpr MoveToken kStartToken = 20480;
inline constexpr MoveToken kPadToken = 20481;
inline constexpr int kMoveVocabSize = 20482;

MoveToken encode_move(const Move& m);
// Exact inverse of encode_move on [0, 20480). The returned triple is not
// validated (id 0 decodes to a8a8). Throws Error(SpecialToken) otherwise.
Move decode_move(MoveToken id);

// State label layout, one byte per label:
//   0..63  board, a8..h1, piece codes 0..12
//   64     side to move (0 white, 1 black)
//   65..68 castling K, Q, k, q
//   69     en passant file (0 none, 1..8 = a..h)
//   70     en passant rank (0 none, 1 = rank 3, 2 = rank 6)
//   71..72 halfmove clock, big-endian u16
//   73..74 fullmove number, big-endian u16
inline constexpr int kNumLabels = 75;
inline constexpr int kNumBoardLabels = 64;
inline constexpr int kSideLabel = 64;
inline constexpr int kCastlingLabel = 65;
inline constexpr int kEpFileLabel = 69;
inline constexpr int kEpRankLabel = 70;
inline constexpr int kHalfmoveLabel = 71;
inline constexpr int kFullmoveLabel = 73;

using StateLabels = std::array<std::uint8_t, kNumLabels>;

// Number of classes of each label head.
inline constexpr std::array<int, kNumLabels> kLabelCardinality = [] {
  std::array<int, kNumLabels> c{};
  for (int i = 0; i < kNumBoardLabels; ++i) c[i] = kNumPieceCodes;
  c[kSideLabel] = 2;
  for (int i = 0; i < 4; ++i) c[kCastlingLabel + i] = 2;
  c[kEpFileLabel] = 9;
  c[kEpRankLabel] = 3;
  for (int i = kHalfmoveLabel; i < kNumLabels; ++i) c[i] = 256;
  return c;
}();

enum class EpEncoding : std::uint8_t {
  LegalOnly,  // ep labels set only when an en passant capture is legal
  Raw,        // ep labels set after every double pawn push
};

// Maps engine pieces to board label codes. The standard table is the
// identity; other tables exist so the self-check can prove it detects a
// broken mapping.
struct PieceCodeTable {
  std::array<std::uint8_t, kNumPieceCodes> code{};

  static const PieceCodeTable& standard();
};

// Throws Error(CounterOverflow) when a counter exceeds 65535.
StateLabels encode_state(const Board& board, EpEncoding ep = EpEncoding::LegalOnly,
                         const PieceCodeTable& table = PieceCodeTable::standard());
inline StateLabels encode_state(const Position& p, EpEncoding ep = EpEncoding::LegalOnly) {
  return encode_state(p.board(), ep);
}

// Rebuilds the board and auxiliary fields (no repetition history). Throws
// Error(InconsistentLabels) for out-of-range labels, ep file/rank disagreeing
// on none-ness, or labels that describe no valid position.
Board decode_state(const StateLabels& labels, const PieceCodeTable& table = PieceCodeTable::standard());

bool labels_in_range(const StateLabels& labels);

// Every packed id realisable by some legal chess move, ascending.
std::vector<MoveToken> enumerate_possible_moves();

}  // namespace cwm
