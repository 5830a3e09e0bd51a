#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cwm/trajectory.hpp"

namespace cwm {

enum class GameIdMode : std::uint8_t {
  SiteSegment,  // trailing path segment of the Site URL ("AbCd1234")
  FullSite,     // the Site header verbatim
};

// Games without a Site header are identified as "#<ordinal>".
std::string game_id_from_site(std::string_view site, GameIdMode mode);

struct RawGame {
  std::size_t ordinal = 0;  // position in the stream, 0-based
  std::string game_id;
  std::vector<std::pair<std::string, std::string>> headers;
  std::vector<std::string> san_moves;  // main line only
  GameResult result = GameResult::Unknown;

  const std::string* header(std::string_view key) const;
};

struct SkippedGame {
  std::size_t ordinal = 0;
  std::string game_id;
  std::string reason;
};

// Streaming reader for PGN export text. Comments, NAGs, escape lines and
// recursive variations are dropped; games with malformed tags or movetext are
// recorded in skipped() and not returned. An unterminated tag, string or
// comment at end of input is unrecoverable and throws Error(StreamCorrupt).
class PgnReader {
 public:
  explicit PgnReader(std::istream& in, GameIdMode mode = GameIdMode::SiteSegment);

  std::optional<RawGame> next();

  const std::vector<SkippedGame>& skipped() const { return skipped_; }
  std::size_t games_seen() const { return ordinal_; }

 private:
  int peek();
  int get();
  void skip_line();
  void skip_comment();
  bool read_tag(RawGame& game, std::string& error);
  std::string read_token();

  std::streambuf* buf_;
  GameIdMode mode_;
  std::size_t ordinal_ = 0;
  std::size_t line_ = 1;
  bool at_line_start_ = true;
  std::vector<SkippedGame> skipped_;
};

// Replays the game's SAN list. Throws Error(IllegalGame) naming the first
// move that fails to resolve.
Trajectory build_trajectory(const RawGame& game, EpEncoding ep = EpEncoding::LegalOnly);

}  // namespace cwm
