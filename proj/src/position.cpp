#include "cwm/position.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "cwm/error.hpp"

namespace cwm {
namespace {

constexpr Bitboard bit(int sq) { return Bitboard{1} << sq; }

// Ray directions as (file step, rank step). The first four move towards
// higher square indices (south / east on an a8-first board).
struct Direction {
  int df;
  int dr;
};
constexpr std::array<Direction, 8> kDirections = {{
    {0, -1}, {1, 0}, {1, -1}, {-1, -1},  // S, E, SE, SW: index increases
    {0, 1}, {-1, 0}, {-1, 1}, {1, 1},    // N, W, NW, NE: index decreases
}};
constexpr std::array<int, 4> kRookDirs = {0, 1, 4, 5};
constexpr std::array<int, 4> kBishopDirs = {2, 3, 6, 7};

constexpr bool on_board(int f, int r) { return f >= 0 && f < 8 && r >= 0 && r < 8; }

struct Tables {
  std::array<std::array<Bitboard, 64>, 8> rays{};
  std::array<Bitboard, 64> knight{};
  std::array<Bitboard, 64> king{};
  std::array<std::array<Bitboard, 64>, 2> pawn{};  // squares attacked by a pawn of colour c
  std::array<Bitboard, 64> queen_lines{};
  std::array<std::uint8_t, 64> castle_mask{};
};

constexpr Tables make_tables() {
  Tables t{};
  for (int sq = 0; sq < 64; ++sq) {
    const int f = file_of(static_cast<Square>(sq));
    const int r = rank_of(static_cast<Square>(sq));
    for (int d = 0; d < 8; ++d) {
      Bitboard ray = 0;
      for (int ff = f + kDirections[d].df, rr = r + kDirections[d].dr; on_board(ff, rr);
           ff += kDirections[d].df, rr += kDirections[d].dr) {
        ray |= bit(make_square(ff, rr));
      }
      t.rays[d][sq] = ray;
      t.queen_lines[sq] |= ray;
    }
    constexpr int kKnight[8][2] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    for (const auto& o : kKnight) {
      if (on_board(f + o[0], r + o[1])) t.knight[sq] |= bit(make_square(f + o[0], r + o[1]));
    }
    for (int df = -1; df <= 1; ++df) {
      for (int dr = -1; dr <= 1; ++dr) {
        if ((df || dr) && on_board(f + df, r + dr)) t.king[sq] |= bit(make_square(f + df, r + dr));
      }
    }
    for (int df : {-1, 1}) {
      if (on_board(f + df, r + 1)) t.pawn[0][sq] |= bit(make_square(f + df, r + 1));
      if (on_board(f + df, r - 1)) t.pawn[1][sq] |= bit(make_square(f + df, r - 1));
    }
    t.castle_mask[sq] = 0xF;
  }
  t.castle_mask[make_square(4, 0)] = static_cast<std::uint8_t>(~(kWhiteKingside | kWhiteQueenside) & 0xF);
  t.castle_mask[make_square(7, 0)] = static_cast<std::uint8_t>(~kWhiteKingside & 0xF);
  t.castle_mask[make_square(0, 0)] = static_cast<std::uint8_t>(~kWhiteQueenside & 0xF);
  t.castle_mask[make_square(4, 7)] = static_cast<std::uint8_t>(~(kBlackKingside | kBlackQueenside) & 0xF);
  t.castle_mask[make_square(7, 7)] = static_cast<std::uint8_t>(~kBlackKingside & 0xF);
  t.castle_mask[make_square(0, 7)] = static_cast<std::uint8_t>(~kBlackQueenside & 0xF);
  return t;
}

constexpr Tables kTables = make_tables();

Bitboard slide(int dir, int sq, Bitboard occ) {
  Bitboard ray = kTables.rays[dir][sq];
  const Bitboard blockers = ray & occ;
  if (blockers) {
    const int b = dir < 4 ? std::countr_zero(blockers) : 63 - std::countl_zero(blockers);
    ray ^= kTables.rays[dir][b];
  }
  return ray;
}

Bitboard rook_attacks(int sq, Bitboard occ) {
  Bitboard a = 0;
  for (int d : kRookDirs) a |= slide(d, sq, occ);
  return a;
}

Bitboard bishop_attacks(int sq, Bitboard occ) {
  Bitboard a = 0;
  for (int d : kBishopDirs) a |= slide(d, sq, occ);
  return a;
}

// Zobrist keys; splitmix64 over a fixed seed so keys are identical across builds.
struct ZobristKeys {
  std::array<std::array<std::uint64_t, 64>, kNumPieceCodes> piece{};
  std::array<std::uint64_t, 16> castling{};
  std::array<std::uint64_t, 9> ep_file{};  // index 0 = no legal ep
  std::uint64_t black_to_move = 0;
};

constexpr ZobristKeys make_zobrist() {
  ZobristKeys z{};
  std::uint64_t state = 0x43574D2D5A4F4252ULL;
  auto next = [&state]() {
    std::uint64_t x = (state += 0x9E3779B97F4A7C15ULL);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  };
  for (int p = 1; p < kNumPieceCodes; ++p) {
    for (int sq = 0; sq < 64; ++sq) z.piece[p][sq] = next();
  }
  for (int c = 1; c < 16; ++c) z.castling[c] = next();
  for (int f = 1; f < 9; ++f) z.ep_file[f] = next();
  z.black_to_move = next();
  return z;
}

constexpr ZobristKeys kZobrist = make_zobrist();

constexpr Bitboard kLightSquares = [] {
  Bitboard b = 0;
  for (int sq = 0; sq < 64; ++sq) {
    if ((file_of(static_cast<Square>(sq)) + rank_of(static_cast<Square>(sq))) % 2 == 1) b |= bit(sq);
  }
  return b;
}();

void add_pawn_move(MoveList& out, int src, int tgt) {
  const int r = rank_of(static_cast<Square>(tgt));
  if (r == 0 || r == 7) {
    for (Promo p : {Promo::Queen, Promo::Rook, Promo::Bishop, Promo::Knight}) {
      out.push({static_cast<Square>(src), static_cast<Square>(tgt), p});
    }
  } else {
    out.push({static_cast<Square>(src), static_cast<Square>(tgt), Promo::None});
  }
}

void add_targets(MoveList& out, int src, Bitboard targets) {
  while (targets) {
    const int tgt = std::countr_zero(targets);
    targets &= targets - 1;
    out.push({static_cast<Square>(src), static_cast<Square>(tgt), Promo::None});
  }
}

[[noreturn]] void bad_fen(std::string_view fen, std::string_view why) {
  throw Error(ErrorCode::BadFen, "bad FEN '" + std::string(fen) + "': " + std::string(why));
}

template <typename Int>
bool parse_uint(std::string_view s, Int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

constexpr std::string_view kInitialFen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Ongoing: return "ongoing";
    case Termination::Checkmate: return "checkmate";
    case Termination::Stalemate: return "stalemate";
    case Termination::InsufficientMaterial: return "insufficient_material";
    case Termination::SeventyFiveMove: return "seventyfive_move";
    case Termination::FivefoldRepetition: return "fivefold_repetition";
    case Termination::ClaimableFiftyMove: return "claimable_fifty_move";
    case Termination::ClaimableThreefold: return "claimable_threefold";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Board

Board Board::initial() { return from_fen(kInitialFen); }

void Board::put(Square sq, Piece p) {
  mailbox_[sq] = p;
  by_piece_[static_cast<int>(p)] |= bit(sq);
  by_color_[static_cast<int>(color_of(p))] |= bit(sq);
}

void Board::remove(Square sq) {
  const Piece p = mailbox_[sq];
  if (p == Piece::Empty) return;
  mailbox_[sq] = Piece::Empty;
  by_piece_[static_cast<int>(p)] &= ~bit(sq);
  by_color_[static_cast<int>(color_of(p))] &= ~bit(sq);
}

Board Board::from_fen(std::string_view fen) {
  std::istringstream in{std::string(fen)};
  std::string placement, side, castling, ep, half = "0", full = "1";
  if (!(in >> placement >> side >> castling >> ep)) bad_fen(fen, "expected at least four fields");
  in >> half >> full;
  std::string extra;
  if (in >> extra) bad_fen(fen, "trailing fields");

  Board b;
  int rank = 7, file = 0;
  for (char c : placement) {
    if (c == '/') {
      if (file != 8 || rank == 0) bad_fen(fen, "malformed rank");
      --rank;
      file = 0;
    } else if (c >= '1' && c <= '8') {
      file += c - '0';
      if (file > 8) bad_fen(fen, "rank overflow");
    } else if (auto p = piece_from_char(c)) {
      if (file > 7) bad_fen(fen, "rank overflow");
      if (type_of(*p) == PieceType::Pawn && (rank == 0 || rank == 7)) bad_fen(fen, "pawn on back rank");
      b.put(make_square(file, rank), *p);
      ++file;
    } else {
      bad_fen(fen, "unknown piece letter");
    }
  }
  if (rank != 0 || file != 8) bad_fen(fen, "placement does not cover 64 squares");
  if (std::popcount(b.pieces(Piece::WhiteKing)) != 1 || std::popcount(b.pieces(Piece::BlackKing)) != 1) {
    bad_fen(fen, "each side needs exactly one king");
  }

  if (side == "w") b.side_ = Color::White;
  else if (side == "b") b.side_ = Color::Black;
  else bad_fen(fen, "side to move");

  if (castling != "-") {
    for (char c : castling) {
      switch (c) {
        case 'K': b.castling_ |= kWhiteKingside; break;
        case 'Q': b.castling_ |= kWhiteQueenside; break;
        case 'k': b.castling_ |= kBlackKingside; break;
        case 'q': b.castling_ |= kBlackQueenside; break;
        default: bad_fen(fen, "castling field");
      }
    }
  }
  auto check_right = [&](CastlingRight r, Square k, Square rook, Piece kp, Piece rp) {
    if (b.can_castle(r) && (b.at(k) != kp || b.at(rook) != rp)) bad_fen(fen, "castling right without king and rook in place");
  };
  check_right(kWhiteKingside, make_square(4, 0), make_square(7, 0), Piece::WhiteKing, Piece::WhiteRook);
  check_right(kWhiteQueenside, make_square(4, 0), make_square(0, 0), Piece::WhiteKing, Piece::WhiteRook);
  check_right(kBlackKingside, make_square(4, 7), make_square(7, 7), Piece::BlackKing, Piece::BlackRook);
  check_right(kBlackQueenside, make_square(4, 7), make_square(0, 7), Piece::BlackKing, Piece::BlackRook);

  if (ep != "-") {
    const auto sq = parse_square(ep);
    const int want_rank = b.side_ == Color::White ? 5 : 2;
    if (!sq || rank_of(*sq) != want_rank) bad_fen(fen, "en passant square");
    b.ep_ = *sq;
  }
  if (!parse_uint(half, b.halfmove_)) bad_fen(fen, "halfmove clock");
  if (!parse_uint(full, b.fullmove_) || b.fullmove_ == 0) bad_fen(fen, "fullmove number");
  if (b.is_attacked(b.king_square(~b.side_), b.side_)) bad_fen(fen, "side not to move is in check");
  return b;
}

std::string Board::fen() const {
  std::string out;
  for (int r = 7; r >= 0; --r) {
    int empty = 0;
    for (int f = 0; f < 8; ++f) {
      const Piece p = at(make_square(f, r));
      if (p == Piece::Empty) {
        ++empty;
        continue;
      }
      if (empty) out += static_cast<char>('0' + empty);
      empty = 0;
      out += piece_char(p);
    }
    if (empty) out += static_cast<char>('0' + empty);
    if (r) out += '/';
  }
  out += side_ == Color::White ? " w " : " b ";
  if (castling_ == 0) out += '-';
  if (can_castle(kWhiteKingside)) out += 'K';
  if (can_castle(kWhiteQueenside)) out += 'Q';
  if (can_castle(kBlackKingside)) out += 'k';
  if (can_castle(kBlackQueenside)) out += 'q';
  const auto ep = legal_ep_square();
  out += ' ';
  out += ep ? square_name(*ep) : "-";
  out += ' ' + std::to_string(halfmove_) + ' ' + std::to_string(fullmove_);
  return out;
}

std::optional<Square> Board::ep_square() const {
  if (ep_ == kNoSquare) return std::nullopt;
  return ep_;
}

std::optional<Square> Board::legal_ep_square() const {
  if (ep_ == kNoSquare) return std::nullopt;
  const Color us = side_;
  const int victim = us == Color::White ? ep_ + 8 : ep_ - 8;
  if (mailbox_[victim] != make_piece(~us, PieceType::Pawn)) return std::nullopt;
  Bitboard capturers = kTables.pawn[static_cast<int>(~us)][ep_] & pieces(make_piece(us, PieceType::Pawn));
  while (capturers) {
    const int src = std::countr_zero(capturers);
    capturers &= capturers - 1;
    if (leaves_king_safe({static_cast<Square>(src), ep_, Promo::None})) return ep_;
  }
  return std::nullopt;
}

Square Board::king_square(Color c) const {
  return static_cast<Square>(std::countr_zero(pieces(make_piece(c, PieceType::King))));
}

bool Board::is_attacked(Square sq, Color by) const {
  const Bitboard occ = occupancy();
  if (kTables.knight[sq] & pieces(make_piece(by, PieceType::Knight))) return true;
  if (kTables.king[sq] & pieces(make_piece(by, PieceType::King))) return true;
  if (kTables.pawn[static_cast<int>(~by)][sq] & pieces(make_piece(by, PieceType::Pawn))) return true;
  const Bitboard queens = pieces(make_piece(by, PieceType::Queen));
  if (bishop_attacks(sq, occ) & (pieces(make_piece(by, PieceType::Bishop)) | queens)) return true;
  return (rook_attacks(sq, occ) & (pieces(make_piece(by, PieceType::Rook)) | queens)) != 0;
}

bool Board::in_check() const { return is_attacked(king_square(side_), ~side_); }

void Board::generate_pseudo(MoveList& out) const {
  const Color us = side_;
  const Color them = ~us;
  const Bitboard own = occupancy(us);
  const Bitboard enemy = occupancy(them);
  const Bitboard all = own | enemy;

  const int push = us == Color::White ? -8 : 8;
  const int start_rank = us == Color::White ? 1 : 6;
  Bitboard capturable = enemy;
  if (ep_ != kNoSquare && mailbox_[ep_ - push] == make_piece(them, PieceType::Pawn)) capturable |= bit(ep_);

  Bitboard pawns = pieces(make_piece(us, PieceType::Pawn));
  while (pawns) {
    const int sq = std::countr_zero(pawns);
    pawns &= pawns - 1;
    const int one = sq + push;
    if (!(all & bit(one))) {
      add_pawn_move(out, sq, one);
      const int two = one + push;
      if (rank_of(static_cast<Square>(sq)) == start_rank && !(all & bit(two))) {
        out.push({static_cast<Square>(sq), static_cast<Square>(two), Promo::None});
      }
    }
    Bitboard caps = kTables.pawn[static_cast<int>(us)][sq] & capturable;
    while (caps) {
      const int tgt = std::countr_zero(caps);
      caps &= caps - 1;
      add_pawn_move(out, sq, tgt);
    }
  }

  auto each = [&](PieceType t, auto attacks) {
    Bitboard set = pieces(make_piece(us, t));
    while (set) {
      const int sq = std::countr_zero(set);
      set &= set - 1;
      add_targets(out, sq, attacks(sq) & ~own);
    }
  };
  each(PieceType::Knight, [](int sq) { return kTables.knight[sq]; });
  each(PieceType::Bishop, [all](int sq) { return bishop_attacks(sq, all); });
  each(PieceType::Rook, [all](int sq) { return rook_attacks(sq, all); });
  each(PieceType::Queen, [all](int sq) { return bishop_attacks(sq, all) | rook_attacks(sq, all); });
  each(PieceType::King, [](int sq) { return kTables.king[sq]; });

  // Castling: rights imply king and rook on their home squares.
  const int home = us == Color::White ? 0 : 7;
  const Square king = make_square(4, home);
  const CastlingRight ks = us == Color::White ? kWhiteKingside : kBlackKingside;
  const CastlingRight qs = us == Color::White ? kWhiteQueenside : kBlackQueenside;
  if ((castling_ & (ks | qs)) && !is_attacked(king, them)) {
    if (can_castle(ks) && !(all & (bit(make_square(5, home)) | bit(make_square(6, home)))) &&
        !is_attacked(make_square(5, home), them) && !is_attacked(make_square(6, home), them)) {
      out.push({king, make_square(6, home), Promo::None});
    }
    if (can_castle(qs) &&
        !(all & (bit(make_square(1, home)) | bit(make_square(2, home)) | bit(make_square(3, home)))) &&
        !is_attacked(make_square(3, home), them) && !is_attacked(make_square(2, home), them)) {
      out.push({king, make_square(2, home), Promo::None});
    }
  }
}

bool Board::leaves_king_safe(const Move& m) const {
  Board next = *this;
  next.play(m);
  return !next.is_attacked(next.king_square(side_), ~side_);
}

void Board::generate_legal(MoveList& out) const {
  MoveList pseudo;
  generate_pseudo(pseudo);
  const Square ksq = king_square(side_);
  const bool check = in_check();
  // Off the king's lines a non-king move cannot expose the king.
  const Bitboard lines = kTables.queen_lines[ksq];
  for (const Move& m : pseudo) {
    const bool fast = !check && m.src != ksq && !(lines & bit(m.src)) && !is_en_passant(m);
    if (fast || leaves_king_safe(m)) out.push(m);
  }
}

std::vector<Move> Board::legal_moves() const {
  MoveList list;
  generate_legal(list);
  std::vector<Move> moves(list.begin(), list.end());
  // (src, tgt, promo) lexicographic order equals ascending packed id.
  std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.tgt != b.tgt) return a.tgt < b.tgt;
    return a.promo < b.promo;
  });
  return moves;
}

bool Board::has_legal_move() const {
  MoveList list;
  generate_legal(list);
  return !list.empty();
}

bool Board::is_legal(const Move& m) const {
  if (!m.well_formed()) return false;
  MoveList list;
  generate_legal(list);
  return std::find(list.begin(), list.end(), m) != list.end();
}

bool Board::is_en_passant(const Move& m) const {
  return ep_ != kNoSquare && m.tgt == ep_ && type_of(mailbox_[m.src]) == PieceType::Pawn &&
         file_of(m.src) != file_of(m.tgt) && mailbox_[m.tgt] == Piece::Empty;
}

bool Board::is_capture(const Move& m) const {
  return mailbox_[m.tgt] != Piece::Empty || is_en_passant(m);
}

bool Board::is_castling(const Move& m) const {
  return type_of(mailbox_[m.src]) == PieceType::King && std::abs(file_of(m.src) - file_of(m.tgt)) == 2;
}

void Board::play(const Move& m) {
  const Color us = side_;
  const Piece piece = mailbox_[m.src];
  const bool pawn = type_of(piece) == PieceType::Pawn;
  bool capture = mailbox_[m.tgt] != Piece::Empty;

  if (is_en_passant(m)) {
    remove(static_cast<Square>(us == Color::White ? m.tgt + 8 : m.tgt - 8));
    capture = true;
  }
  remove(m.tgt);
  remove(m.src);
  put(m.tgt, m.promo == Promo::None ? piece : make_piece(us, promo_piece_type(m.promo)));

  if (type_of(piece) == PieceType::King && std::abs(file_of(m.src) - file_of(m.tgt)) == 2) {
    const int home = rank_of(m.src);
    const bool kingside = file_of(m.tgt) == 6;
    const Square rook_from = make_square(kingside ? 7 : 0, home);
    const Square rook_to = make_square(kingside ? 5 : 3, home);
    const Piece rook = mailbox_[rook_from];
    remove(rook_from);
    put(rook_to, rook);
  }

  castling_ &= kTables.castle_mask[m.src] & kTables.castle_mask[m.tgt];
  ep_ = pawn && std::abs(m.tgt - m.src) == 16 ? static_cast<std::uint8_t>((m.src + m.tgt) / 2) : kNoSquare;
  halfmove_ = pawn || capture ? 0 : halfmove_ + 1;
  if (us == Color::Black) ++fullmove_;
  side_ = ~us;
}

std::uint64_t Board::repetition_key() const {
  std::uint64_t key = 0;
  for (int sq = 0; sq < 64; ++sq) {
    if (mailbox_[sq] != Piece::Empty) key ^= kZobrist.piece[static_cast<int>(mailbox_[sq])][sq];
  }
  key ^= kZobrist.castling[castling_];
  if (const auto ep = legal_ep_square()) key ^= kZobrist.ep_file[file_of(*ep) + 1];
  if (side_ == Color::Black) key ^= kZobrist.black_to_move;
  return key;
}

bool Board::insufficient_material() const {
  for (Piece p : {Piece::WhitePawn, Piece::BlackPawn, Piece::WhiteRook, Piece::BlackRook,
                  Piece::WhiteQueen, Piece::BlackQueen}) {
    if (pieces(p)) return false;
  }
  const Bitboard wb = pieces(Piece::WhiteBishop), bb = pieces(Piece::BlackBishop);
  const Bitboard minors = wb | bb | pieces(Piece::WhiteKnight) | pieces(Piece::BlackKnight);
  const int count = std::popcount(minors);
  if (count <= 1) return true;
  // K+B vs K+B with bishops on the same colour.
  if (count == 2 && std::popcount(wb) == 1 && std::popcount(bb) == 1) {
    return ((wb & kLightSquares) != 0) == ((bb & kLightSquares) != 0);
  }
  return false;
}

// ------------------------------------------------------------- Position

Position::Position(const Board& b) : board_(b), history_{b.repetition_key()} {}

Position Position::initial() { return Position(Board::initial()); }

Position Position::from_fen(std::string_view fen) { return Position(Board::from_fen(fen)); }

int Position::max_repetitions() const {
  std::vector<std::uint64_t> keys = history_;
  std::sort(keys.begin(), keys.end());
  int best = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    best = std::max(best, static_cast<int>(j - i));
    i = j;
  }
  return best;
}

void Position::apply(const Move& m) {
  if (!board_.is_legal(m)) {
    throw Error(ErrorCode::IllegalMove, "illegal move " + to_uci(m) + " in " + board_.fen());
  }
  apply_trusted(m);
}

void Position::apply_trusted(const Move& m) {
  const bool irreversible = type_of(board_.at(m.src)) == PieceType::Pawn || board_.is_capture(m);
  const std::uint8_t rights = board_.castling();
  board_.play(m);
  if (irreversible || rights != board_.castling()) history_.clear();
  history_.push_back(board_.repetition_key());
}

Position initial_position() { return Position::initial(); }

std::vector<Move> legal_moves(const Position& p) { return p.board().legal_moves(); }

Position apply_move(const Position& p, const Move& m) {
  Position next = p;
  next.apply(m);
  return next;
}

Termination termination_status(const Position& p) {
  return termination_status(p, p.board().has_legal_move());
}

Termination termination_status(const Position& p, bool has_legal_move) {
  const Board& b = p.board();
  if (!has_legal_move) return b.in_check() ? Termination::Checkmate : Termination::Stalemate;
  if (b.insufficient_material()) return Termination::InsufficientMaterial;
  if (b.halfmove_clock() >= 150) return Termination::SeventyFiveMove;
  const int reps = p.max_repetitions();
  if (reps >= 5) return Termination::FivefoldRepetition;
  if (b.halfmove_clock() >= 100) return Termination::ClaimableFiftyMove;
  if (reps >= 3) return Termination::ClaimableThreefold;
  return Termination::Ongoing;
}

std::uint64_t perft(const Board& b, int depth) {
  if (depth <= 0) return 1;
  MoveList moves;
  b.generate_legal(moves);
  if (depth == 1) return moves.size();
  std::uint64_t total = 0;
  for (const Move& m : moves) {
    Board next = b;
    next.play(m);
    total += perft(next, depth - 1);
  }
  return total;
}

}  // namespace cwm
