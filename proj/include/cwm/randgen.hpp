#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cwm/position.hpp"
#include "cwm/rng.hpp"
#include "cwm/trajectory.hpp"

namespace cwm {

struct GenConfig {
  std::uint64_t master_seed = 0;
  std::size_t target_games = 10000;
  int min_full_moves = 10;
  std::size_t max_plies = 2048;
  EpEncoding ep = EpEncoding::LegalOnly;
};

struct RandomGame {
  Trajectory trajectory;
  Termination termination = Termination::Ongoing;
};

std::string random_game_id(std::uint64_t seed);

// Per-game move sampler: one xoshiro256** stream per seed, one draw per ply.
class RandomMover {
 public:
  explicit RandomMover(std::uint64_t seed) : rng_(seed) {}

  // `legal` must be non-empty and in ascending token order.
  Move choose(const std::vector<Move>& legal) { return legal[rng_.below(legal.size())]; }

 private:
  Xoshiro256StarStar rng_;
};

// Uniform random legal self-play from the initial position: at each ply an
// index is drawn from xoshiro256** (seeded via splitmix64) modulo the number
// of legal moves in ascending token order. Stops at the first non-ongoing
// termination status, claimable draws included. Throws Error(CapReached)
// when max_plies moves are played without termination.
RandomGame generate_random_game(std::uint64_t seed, std::size_t max_plies = 2048,
                                EpEncoding ep = EpEncoding::LegalOnly);

struct ManifestEntry {
  std::uint64_t seed = 0;
  bool accepted = false;
  std::size_t plies = 0;
  Termination termination = Termination::Ongoing;
  bool capped = false;
};

struct TestSet {
  GenConfig config;
  std::vector<Trajectory> games;
  std::vector<ManifestEntry> manifest;  // every seed tried, in seed order
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Tries seeds master_seed, master_seed + 1, ... until target_games games pass
// the length filter; capped or short games are rejected and the seed counter
// still advances. Output is independent of `workers`.
TestSet generate_test_set(const GenConfig& cfg, unsigned workers);

// Line-delimited manifest: '#' header lines with the run parameters and
// counts, then one `seed<TAB>accepted<TAB>plies<TAB>termination` row per seed.
void write_manifest(std::ostream& out, const TestSet& set);

}  // namespace cwm
