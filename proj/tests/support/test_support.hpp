#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/pgn.hpp"
#include "cwm/position.hpp"
#include "cwm/trajectory.hpp"

namespace cwm::test {

std::filesystem::path data_dir();
std::string read_bytes(const std::filesystem::path& path);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Uniform playout driven by std::mt19937_64, independent of randgen. Stops at
// any non-ongoing status or after max_plies.
std::vector<Move> random_playout(std::uint64_t seed, std::size_t max_plies = 400);
Trajectory random_trajectory(std::uint64_t seed, std::size_t max_plies = 400);

std::vector<RawGame> read_all_games(std::string_view pgn_text);

struct ExpectedRow {
  std::string game_id;
  std::size_t plies = 0;
  std::string fen;
};
std::vector<ExpectedRow> load_expected(const std::filesystem::path& path);

// Lichess-style export of games played by a weighted policy that favours
// captures, checks, castling and central pawn moves and stops at a random
// length, with clock comments on every move. Deterministic in (seed, games).
void write_synthetic_pgn(std::ostream& out, std::size_t games, std::uint64_t seed, unsigned workers);

}  // namespace cwm::test
