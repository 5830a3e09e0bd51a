#include "cwm/pgn.hpp"

#include <cctype>
#include <string>

#include "cwm/error.hpp"
#include "cwm/san.hpp"

namespace cwm {
namespace {

constexpr int kEof = std::char_traits<char>::eof();

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_delimiter(int c) {
  return c == kEof || is_space(c) || c == '{' || c == '}' || c == '(' || c == ')' || c == '[' ||
         c == ']' || c == ';' || c == '$';
}

bool is_result_token(std::string_view tok) {
  return tok == "1-0" || tok == "0-1" || tok == "1/2-1/2" || tok == "*";
}

bool plausible_san(std::string_view tok) {
  for (char c : tok) {
    const bool ok = (c >= 'a' && c <= 'h') || (c >= '1' && c <= '8') || c == 'x' || c == '=' || c == '+' ||
                    c == '#' || c == '!' || c == '?' || c == '-' || c == ':' || c == 'O' || c == '0' ||
                    c == 'K' || c == 'Q' || c == 'R' || c == 'B' || c == 'N' || c == 'q' || c == 'r' ||
                    c == 'n';
    if (!ok) return false;
  }
  return true;
}

// Strips a leading move number ("12.", "12...", "12") from a token.
std::string_view strip_move_number(std::string_view tok) {
  std::size_t i = 0;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
  if (i == tok.size()) return {};
  if (i > 0 && tok[i] != '.') return tok;  // "0-0" and similar
  while (i < tok.size() && tok[i] == '.') ++i;
  return tok.substr(i);
}

}  // namespace

std::string game_id_from_site(std::string_view site, GameIdMode mode) {
  if (mode == GameIdMode::FullSite) return std::string(site);
  while (!site.empty() && site.back() == '/') site.remove_suffix(1);
  const auto slash = site.rfind('/');
  if (slash != std::string_view::npos && slash + 1 < site.size()) return std::string(site.substr(slash + 1));
  return std::string(site);
}

const std::string* RawGame::header(std::string_view key) const {
  for (const auto& [k, v] : headers) {
    if (k == key) return &v;
  }
  return nullptr;
}

PgnReader::PgnReader(std::istream& in, GameIdMode mode) : buf_(in.rdbuf()), mode_(mode) {
  // UTF-8 byte order mark.
  if (peek() == 0xEF) {
    get();
    if (get() != 0xBB || get() != 0xBF) {
      throw Error(ErrorCode::StreamCorrupt, "PGN stream starts with a truncated byte order mark");
    }
  }
}

int PgnReader::peek() {
  const int c = buf_->sgetc();
  return c == kEof ? kEof : static_cast<unsigned char>(c);
}

int PgnReader::get() {
  const int c = buf_->sbumpc();
  if (c == kEof) return kEof;
  at_line_start_ = c == '\n';
  if (c == '\n') ++line_;
  return static_cast<unsigned char>(c);
}

void PgnReader::skip_line() {
  for (int c = get(); c != kEof && c != '\n'; c = get()) {
  }
}

void PgnReader::skip_comment() {
  const std::size_t start = line_;
  for (int c = get(); c != '}'; c = get()) {
    if (c == kEof) {
      throw Error(ErrorCode::StreamCorrupt, "end of input inside comment opened on line " + std::to_string(start));
    }
  }
}

bool PgnReader::read_tag(RawGame& game, std::string& error) {
  const std::size_t start = line_;
  auto eof = [&] {
    return Error(ErrorCode::StreamCorrupt, "end of input inside tag pair on line " + std::to_string(start));
  };
  auto fail = [&](const std::string& why) {
    if (error.empty()) error = "line " + std::to_string(start) + ": " + why;
    if (!at_line_start_) skip_line();
    return false;
  };
  get();  // '['
  while (peek() == ' ' || peek() == '\t') get();
  std::string key;
  while (std::isalnum(peek()) || peek() == '_') key += static_cast<char>(get());
  if (peek() == kEof) throw eof();
  if (key.empty()) return fail("tag without a name");
  while (peek() == ' ' || peek() == '\t') get();
  if (peek() == kEof) throw eof();
  if (get() != '"') return fail("tag value is not quoted");
  std::string value;
  for (;;) {
    int c = get();
    if (c == kEof) throw eof();
    if (c == '\n') return fail("newline inside tag value");
    if (c == '"') break;
    if (c == '\\') {
      c = get();
      if (c == kEof) throw eof();
    }
    value += static_cast<char>(c);
  }
  while (peek() == ' ' || peek() == '\t') get();
  if (peek() == kEof) throw eof();
  if (get() != ']') return fail("tag pair not closed");
  game.headers.emplace_back(std::move(key), std::move(value));
  return true;
}

std::string PgnReader::read_token() {
  std::string tok;
  while (!is_delimiter(peek())) tok += static_cast<char>(get());
  if (tok.empty()) tok += static_cast<char>(get());  // stray delimiter such as '}' or ']'
  return tok;
}

std::optional<RawGame> PgnReader::next() {
  for (;;) {
    RawGame game;
    game.ordinal = ordinal_;
    bool has_content = false;
    bool has_movetext = false;
    bool finished = false;
    int depth = 0;
    std::string error;
    std::string result_token;

    while (!finished) {
      const int c = peek();
      if (c == kEof) break;
      if (is_space(c)) {
        get();
        continue;
      }
      if (c == '%' && at_line_start_) {
        skip_line();
        continue;
      }
      if (c == '[') {
        if (has_movetext) break;  // next game's tags; this one had no result
        read_tag(game, error);
        has_content = true;
        continue;
      }
      if (c == '{') {
        get();
        skip_comment();
        continue;
      }
      if (c == ';') {
        skip_line();
        continue;
      }
      has_content = has_movetext = true;
      if (c == '(') {
        get();
        ++depth;
        continue;
      }
      if (c == ')') {
        get();
        if (depth == 0 && error.empty()) error = "line " + std::to_string(line_) + ": unbalanced ')'";
        depth = depth > 0 ? depth - 1 : 0;
        continue;
      }
      if (c == '$') {
        get();
        while (std::isdigit(peek())) get();
        continue;
      }
      const std::string tok = read_token();
      if (is_result_token(tok)) {
        if (depth == 0) {
          result_token = tok;
          finished = true;
        }
        continue;
      }
      const std::string_view san = strip_move_number(tok);
      if (san.empty() || depth > 0) continue;
      if (!plausible_san(san)) {
        if (error.empty()) error = "line " + std::to_string(line_) + ": unexpected token '" + tok + "'";
        continue;
      }
      game.san_moves.emplace_back(san);
    }

    if (!has_content) return std::nullopt;
    ++ordinal_;
    if (depth > 0 && error.empty()) error = "unterminated variation";

    if (const std::string* site = game.header("Site"); site && !site->empty()) {
      game.game_id = game_id_from_site(*site, mode_);
    } else {
      game.game_id = "#" + std::to_string(game.ordinal);
    }
    if (!result_token.empty()) {
      game.result = parse_result(result_token);
    } else if (const std::string* r = game.header("Result")) {
      game.result = parse_result(*r);
    }
    if (!error.empty()) {
      skipped_.push_back({game.ordinal, game.game_id, error});
      continue;
    }
    return game;
  }
}

Trajectory build_trajectory(const RawGame& game, EpEncoding ep) {
  Trajectory t;
  t.game_id = game.game_id;
  t.result = game.result;
  t.move_tokens.reserve(game.san_moves.size() + 1);
  t.states.reserve(game.san_moves.size() + 1);
  Position pos = Position::initial();
  t.move_tokens.push_back(kStartToken);
  t.states.push_back(encode_state(pos.board(), ep));
  for (std::size_t i = 0; i < game.san_moves.size(); ++i) {
    try {
      const Move m = san_to_move(pos.board(), game.san_moves[i]);
      pos.apply(m);
      t.move_tokens.push_back(encode_move(m));
      t.states.push_back(encode_state(pos.board(), ep));
    } catch (const Error& e) {
      throw Error(ErrorCode::IllegalGame, "game " + game.game_id + " ply " + std::to_string(i + 1) + " '" +
                                              game.san_moves[i] + "': " + e.what());
    }
  }
  return t;
}

}  // namespace cwm
