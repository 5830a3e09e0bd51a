#include "cwm/san.hpp"

#include <optional>

#include "cwm/error.hpp"

namespace cwm {
namespace {

std::optional<PieceType> piece_letter(char c) {
  switch (c) {
    case 'N': return PieceType::Knight;
    case 'B': return PieceType::Bishop;
    case 'R': return PieceType::Rook;
    case 'Q': return PieceType::Queen;
    case 'K': return PieceType::King;
    default: return std::nullopt;
  }
}

std::optional<Promo> promo_letter(char c) {
  switch (c) {
    case 'Q': case 'q': return Promo::Queen;
    case 'R': case 'r': return Promo::Rook;
    case 'B': case 'b': return Promo::Bishop;
    case 'N': case 'n': return Promo::Knight;
    default: return std::nullopt;
  }
}

[[noreturn]] void no_match(const Board& board, std::string_view san, std::string_view why) {
  throw Error(ErrorCode::NoMatchSan,
              "SAN '" + std::string(san) + "' " + std::string(why) + " in " + board.fen());
}

}  // namespace

Move san_to_move(const Board& board, std::string_view san) {
  std::string_view text = san;
  while (!text.empty() && (text.back() == '+' || text.back() == '#' || text.back() == '!' || text.back() == '?')) {
    text.remove_suffix(1);
  }
  if (text.empty()) no_match(board, san, "is empty");

  const auto moves = board.legal_moves();

  if (text == "O-O" || text == "0-0" || text == "O-O-O" || text == "0-0-0") {
    const int target_file = text.size() == 3 ? 6 : 2;
    for (const Move& m : moves) {
      if (board.is_castling(m) && file_of(m.tgt) == target_file) return m;
    }
    no_match(board, san, "castling not legal");
  }

  PieceType mover = PieceType::Pawn;
  if (const auto p = piece_letter(text.front())) {
    mover = *p;
    text.remove_prefix(1);
  }

  Promo promo = Promo::None;
  if (const auto eq = text.find('='); eq != std::string_view::npos) {
    if (eq + 2 != text.size()) no_match(board, san, "has a malformed promotion");
    const auto p = promo_letter(text[eq + 1]);
    if (!p || *p == Promo::None) no_match(board, san, "has a malformed promotion");
    promo = *p;
    text = text.substr(0, eq);
  } else if (mover == PieceType::Pawn && text.size() >= 3 && promo_letter(text.back())) {
    promo = *promo_letter(text.back());
    text.remove_suffix(1);
  }

  if (text.size() < 2) no_match(board, san, "has no target square");
  const auto target = parse_square(text.substr(text.size() - 2));
  if (!target) no_match(board, san, "has no target square");
  text.remove_suffix(2);

  // The capture marker is not checked against the board.
  std::optional<int> from_file, from_rank;
  for (char c : text) {
    if (c == 'x' || c == ':' || c == '-') continue;
    else if (c >= 'a' && c <= 'h' && !from_file) from_file = c - 'a';
    else if (c >= '1' && c <= '8' && !from_rank) from_rank = c - '1';
    else no_match(board, san, "has unexpected characters");
  }
  if (mover == PieceType::Pawn && !from_file) from_file = file_of(*target);

  const Move* found = nullptr;
  int matches = 0;
  for (const Move& m : moves) {
    if (m.tgt != *target || m.promo != promo) continue;
    if (type_of(board.at(m.src)) != mover || board.is_castling(m)) continue;
    if (from_file && file_of(m.src) != *from_file) continue;
    if (from_rank && rank_of(m.src) != *from_rank) continue;
    found = &m;
    ++matches;
  }
  if (matches > 1) {
    throw Error(ErrorCode::AmbiguousSan, "SAN '" + std::string(san) + "' is ambiguous in " + board.fen());
  }
  if (matches == 0) no_match(board, san, "matches no legal move");
  return *found;
}

std::string move_to_san(const Board& board, const Move& move) {
  std::string out;
  if (board.is_castling(move)) {
    out = file_of(move.tgt) == 6 ? "O-O" : "O-O-O";
  } else {
    const PieceType mover = type_of(board.at(move.src));
    const bool capture = board.is_capture(move);
    if (mover == PieceType::Pawn) {
      if (capture) {
        out += static_cast<char>('a' + file_of(move.src));
        out += 'x';
      }
      out += square_name(move.tgt);
      if (move.promo != Promo::None) {
        out += '=';
        out += " QRBN"[static_cast<int>(move.promo)];
      }
    } else {
      out += " PNBRQK"[static_cast<int>(mover)];
      bool shares_file = false, shares_rank = false, ambiguous = false;
      for (const Move& m : board.legal_moves()) {
        if (m.tgt != move.tgt || m.src == move.src || board.at(m.src) != board.at(move.src)) continue;
        ambiguous = true;
        shares_file |= file_of(m.src) == file_of(move.src);
        shares_rank |= rank_of(m.src) == rank_of(move.src);
      }
      if (ambiguous) {
        if (!shares_file) {
          out += static_cast<char>('a' + file_of(move.src));
        } else if (!shares_rank) {
          out += static_cast<char>('1' + rank_of(move.src));
        } else {
          out += square_name(move.src);
        }
      }
      if (capture) out += 'x';
      out += square_name(move.tgt);
    }
  }
  Board next = board;
  next.play(move);
  if (next.in_check()) out += next.has_legal_move() ? '+' : '#';
  return out;
}

}  // namespace cwm
