#include "cwm/types.hpp"

#include "cwm/error.hpp"

namespace cwm {

std::optional<Square> parse_square(std::string_view name) {
  if (name.size() != 2) return std::nullopt;
  const int file = name[0] - 'a';
  const int rank = name[1] - '1';
  if (file < 0 || file > 7 || rank < 0 || rank > 7) return std::nullopt;
  return make_square(file, rank);
}

std::string square_name(Square sq) {
  return {static_cast<char>('a' + file_of(sq)), static_cast<char>('1' + rank_of(sq))};
}

namespace {
constexpr std::string_view kPieceChars = ".PNBRQKpnbrqk";
}

char piece_char(Piece p) { return kPieceChars[static_cast<int>(p)]; }

std::optional<Piece> piece_from_char(char c) {
  const auto pos = kPieceChars.find(c);
  if (pos == std::string_view::npos || pos == 0) return std::nullopt;
  return static_cast<Piece>(pos);
}

PieceType promo_piece_type(Promo p) {
  switch (p) {
    case Promo::Queen: return PieceType::Queen;
    case Promo::Rook: return PieceType::Rook;
    case Promo::Bishop: return PieceType::Bishop;
    case Promo::Knight: return PieceType::Knight;
    case Promo::None: break;
  }
  return PieceType::None;
}

std::string to_uci(const Move& m) {
  std::string out = square_name(m.src) + square_name(m.tgt);
  constexpr std::string_view kPromo = " qrbn";
  if (m.promo != Promo::None) out += kPromo[static_cast<int>(m.promo)];
  return out;
}

std::optional<Move> parse_uci(std::string_view text) {
  if (text.size() != 4 && text.size() != 5) return std::nullopt;
  const auto src = parse_square(text.substr(0, 2));
  const auto tgt = parse_square(text.substr(2, 2));
  if (!src || !tgt) return std::nullopt;
  Move m{*src, *tgt, Promo::None};
  if (text.size() == 5) {
    switch (text[4]) {
      case 'q': m.promo = Promo::Queen; break;
      case 'r': m.promo = Promo::Rook; break;
      case 'b': m.promo = Promo::Bishop; break;
      case 'n': m.promo = Promo::Knight; break;
      default: return std::nullopt;
    }
  }
  if (!m.well_formed()) return std::nullopt;
  return m;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::BadFen: return "BadFen";
    case ErrorCode::SpecialToken: return "SpecialToken";
    case ErrorCode::CounterOverflow: return "CounterOverflow";
    case ErrorCode::InconsistentLabels: return "InconsistentLabels";
    case ErrorCode::StreamCorrupt: return "StreamCorrupt";
    case ErrorCode::AmbiguousSan: return "Ambiguous";
    case ErrorCode::NoMatchSan: return "NoMatch";
    case ErrorCode::IllegalGame: return "IllegalGame";
    case ErrorCode::CapReached: return "CapReached";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadVersion: return "BadVersion";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::TruncatedRecord: return "TruncatedRecord";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::BadLogProb: return "BadLogProb";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace cwm
