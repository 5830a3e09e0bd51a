#include "cwm/codec.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cwm/error.hpp"

namespace cwm {

MoveToken encode_move(const Move& m) {
  return static_cast<MoveToken>(m.src * 320 + m.tgt * 5 + static_cast<int>(m.promo));
}

Move decode_move(MoveToken id) {
  if (id >= kNumMoveIds) {
    throw Error(ErrorCode::SpecialToken, "token " + std::to_string(id) + " is not a packed move");
  }
  return {static_cast<Square>(id / 320), static_cast<Square>(id / 5 % 64), static_cast<Promo>(id % 5)};
}

const PieceCodeTable& PieceCodeTable::standard() {
  static const PieceCodeTable table = [] {
    PieceCodeTable t;
    for (int i = 0; i < kNumPieceCodes; ++i) t.code[i] = static_cast<std::uint8_t>(i);
    return t;
  }();
  return table;
}

StateLabels encode_state(const Board& board, EpEncoding ep, const PieceCodeTable& table) {
  if (board.halfmove_clock() > 0xFFFF || board.fullmove_number() > 0xFFFF) {
    throw Error(ErrorCode::CounterOverflow, "counter exceeds 16 bits in " + board.fen());
  }
  StateLabels s{};
  for (int sq = 0; sq < kNumBoardLabels; ++sq) {
    s[sq] = table.code[static_cast<int>(board.at(static_cast<Square>(sq)))];
  }
  s[kSideLabel] = board.side_to_move() == Color::Black;
  s[kCastlingLabel + 0] = board.can_castle(kWhiteKingside);
  s[kCastlingLabel + 1] = board.can_castle(kWhiteQueenside);
  s[kCastlingLabel + 2] = board.can_castle(kBlackKingside);
  s[kCastlingLabel + 3] = board.can_castle(kBlackQueenside);
  const auto ep_sq = ep == EpEncoding::LegalOnly ? board.legal_ep_square() : board.ep_square();
  if (ep_sq) {
    s[kEpFileLabel] = static_cast<std::uint8_t>(file_of(*ep_sq) + 1);
    s[kEpRankLabel] = rank_of(*ep_sq) == 2 ? 1 : 2;
  }
  const unsigned half = board.halfmove_clock();
  const unsigned full = board.fullmove_number();
  s[kHalfmoveLabel] = static_cast<std::uint8_t>(half >> 8);
  s[kHalfmoveLabel + 1] = static_cast<std::uint8_t>(half & 0xFF);
  s[kFullmoveLabel] = static_cast<std::uint8_t>(full >> 8);
  s[kFullmoveLabel + 1] = static_cast<std::uint8_t>(full & 0xFF);
  return s;
}

bool labels_in_range(const StateLabels& labels) {
  for (int i = 0; i < kNumLabels; ++i) {
    if (labels[i] >= kLabelCardinality[i]) return false;
  }
  return true;
}

Board decode_state(const StateLabels& s, const PieceCodeTable& table) {
  auto inconsistent = [](const std::string& why) {
    return Error(ErrorCode::InconsistentLabels, "inconsistent state labels: " + why);
  };
  if (!labels_in_range(s)) throw inconsistent("label outside its head's cardinality");
  if ((s[kEpFileLabel] == 0) != (s[kEpRankLabel] == 0)) throw inconsistent("ep file and rank disagree");

  // Assemble a FEN and let the board parser enforce position validity.
  std::string fen;
  for (int r = 0; r < 8; ++r) {
    int empty = 0;
    for (int f = 0; f < 8; ++f) {
      const std::uint8_t code = s[r * 8 + f];
      const auto it = std::find(table.code.begin(), table.code.end(), code);
      const auto piece = static_cast<Piece>(it - table.code.begin());
      if (it == table.code.end()) throw inconsistent("unknown piece code");
      if (piece == Piece::Empty) {
        ++empty;
        continue;
      }
      if (empty) fen += static_cast<char>('0' + empty);
      empty = 0;
      fen += piece_char(piece);
    }
    if (empty) fen += static_cast<char>('0' + empty);
    if (r < 7) fen += '/';
  }
  fen += s[kSideLabel] ? " b " : " w ";
  std::string castling;
  if (s[kCastlingLabel + 0]) castling += 'K';
  if (s[kCastlingLabel + 1]) castling += 'Q';
  if (s[kCastlingLabel + 2]) castling += 'k';
  if (s[kCastlingLabel + 3]) castling += 'q';
  fen += castling.empty() ? "-" : castling;
  fen += ' ';
  if (s[kEpFileLabel]) {
    fen += static_cast<char>('a' + s[kEpFileLabel] - 1);
    fen += s[kEpRankLabel] == 1 ? '3' : '6';
  } else {
    fen += '-';
  }
  fen += ' ' + std::to_string((s[kHalfmoveLabel] << 8) | s[kHalfmoveLabel + 1]);
  fen += ' ' + std::to_string((s[kFullmoveLabel] << 8) | s[kFullmoveLabel + 1]);
  try {
    return Board::from_fen(fen);
  } catch (const Error& e) {
    throw inconsistent(e.what());
  }
}

std::vector<MoveToken> enumerate_possible_moves() {
  std::vector<MoveToken> ids;
  for (int src = 0; src < 64; ++src) {
    for (int tgt = 0; tgt < 64; ++tgt) {
      if (src == tgt) continue;
      const auto s = static_cast<Square>(src);
      const auto t = static_cast<Square>(tgt);
      const int df = std::abs(file_of(s) - file_of(t));
      const int dr = std::abs(rank_of(s) - rank_of(t));
      const bool queen_line = df == 0 || dr == 0 || df == dr;
      const bool knight = (df == 1 && dr == 2) || (df == 2 && dr == 1);
      if (queen_line || knight) ids.push_back(encode_move({s, t, Promo::None}));
      // One-step pawn advance or capture onto the last rank, either colour.
      const bool white_promo = rank_of(s) == 6 && rank_of(t) == 7;
      const bool black_promo = rank_of(s) == 1 && rank_of(t) == 0;
      if ((white_promo || black_promo) && df <= 1) {
        for (Promo p : {Promo::Queen, Promo::Rook, Promo::Bishop, Promo::Knight}) {
          ids.push_back(encode_move({s, t, p}));
        }
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace cwm
