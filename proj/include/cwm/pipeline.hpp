#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cwm/codec.hpp"
#include "cwm/pgn.hpp"
#include "cwm/randgen.hpp"

namespace cwm {

struct BuildOptions {
  std::filesystem::path out_dir;
  std::size_t shard_size = 65536;  // games per shard file
  unsigned workers = 1;
  int min_full_moves = 10;
  GameIdMode id_mode = GameIdMode::SiteSegment;
  EpEncoding ep = EpEncoding::LegalOnly;
  std::size_t batch_size = 4096;  // games handed to the workers at a time
};

struct BuildReport {
  std::size_t games_read = 0;     // parsed plus parse-skipped
  std::size_t parse_skipped = 0;  // malformed PGN
  std::size_t illegal = 0;        // SAN failed to resolve
  std::size_t too_short = 0;
  std::size_t train = 0;
  std::size_t validation = 0;
  std::vector<std::filesystem::path> shards;
  std::vector<SkippedGame> skipped;  // parse and replay failures, in input order

  std::size_t kept() const { return train + validation; }
  double validation_fraction() const;
};

// Parses PGN, replays every game, drops games below the length filter and
// writes train-NNNNN.cwm / validation-NNNNN.cwm shards into out_dir. Shard
// bytes depend only on the input and options, not on the worker count.
BuildReport build_shards(std::istream& pgn, const BuildOptions& options);
void write_build_report(std::ostream& out, const BuildReport& report);

struct RandgenOptions {
  GenConfig config;
  std::filesystem::path out_dir;
  std::size_t shard_size = 65536;
  unsigned workers = 1;
};

struct RandgenOutput {
  TestSet set;
  std::vector<std::filesystem::path> shards;
  std::filesystem::path manifest;
};

// Writes random-NNNNN.cwm shards and manifest.tsv into out_dir.
RandgenOutput run_randgen(const RandgenOptions& options);

struct CoverageReport {
  std::vector<MoveToken> observed;            // unique packed ids, ascending
  std::vector<MoveToken> outside_possible;    // observed but not geometrically possible
  std::size_t possible = 0;                   // size of enumerate_possible_moves()
  std::optional<std::vector<MoveToken>> against;  // unique ids of the comparison set
  std::size_t both = 0;
  std::size_t primary_only = 0;
  std::size_t against_only = 0;

  double coverage_percent() const;
};

std::vector<MoveToken> unique_move_ids(std::span<const std::filesystem::path> shards);
CoverageReport coverage(std::span<const std::filesystem::path> shards,
                        std::span<const std::filesystem::path> against = {});
void write_coverage_report(std::ostream& out, const CoverageReport& report);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfcheckOptions {
  const PieceCodeTable* piece_table = &PieceCodeTable::standard();
  int perft_depth = 4;
};

// Hermetic consistency checks: perft, codec round trips, metric identities,
// golden MD5 and PRNG values.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});

// Text rendering of one stored state (board diagram plus auxiliary fields).
std::string render_state(const StateLabels& labels);
void inspect_shard(std::ostream& out, const std::filesystem::path& path, std::size_t sample_games);

}  // namespace cwm
