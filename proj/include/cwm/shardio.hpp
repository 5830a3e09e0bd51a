#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cwm/trajectory.hpp"

namespace cwm {

// Shard file (all integers little-endian except the big-endian counter
// byte pairs inside state rows):
//   header  "CWM1" | version u16 | game count u32 | flags u16
//   record  id length u8 | id bytes | result u8 | T u16 |
//           (T+1) x u16 move tokens | (T+1) x 75 state bytes
//   trailer CRC-32 (zlib polynomial) of every preceding byte, u32
inline constexpr std::array<char, 4> kShardMagic = {'C', 'W', 'M', '1'};
inline constexpr std::uint16_t kShardVersion = 1;
inline constexpr std::size_t kShardHeaderBytes = 12;
inline constexpr std::size_t kTrailerBytes = 4;

enum ShardFlag : std::uint16_t {
  kShardRawEp = 1,  // states were encoded with EpEncoding::Raw
};

struct Shard {
  std::uint16_t flags = 0;
  std::vector<Trajectory> games;
};

// Throws Error(Io) for records the format cannot hold (id > 255 bytes,
// T > 65535, misaligned trajectories).
void write_shard(std::ostream& out, std::span<const Trajectory> games, std::uint16_t flags = 0);
void write_shard(const std::filesystem::path& path, std::span<const Trajectory> games, std::uint16_t flags = 0);

// Throws Error(BadMagic | BadVersion | TruncatedRecord | ChecksumMismatch).
Shard read_shard(std::istream& in);
Shard read_shard(const std::filesystem::path& path);

// Exact file size implied by the record layout.
std::size_t shard_size_bytes(std::span<const Trajectory> games);

// Prediction file:
//   header  "CWMP" | version u16 | game count u32
//   record  id length u8 | id bytes | T u16 |
//           (T+1) x { 75 x u8 predicted label | 75 x f32 ln p(true label) }
inline constexpr std::array<char, 4> kPredictionMagic = {'C', 'W', 'M', 'P'};
inline constexpr std::uint16_t kPredictionVersion = 1;

using LogProbs = std::array<float, kNumLabels>;

struct GamePrediction {
  std::string game_id;
  std::vector<StateLabels> labels;
  std::vector<LogProbs> log_probs;

  std::size_t plies() const { return labels.empty() ? 0 : labels.size() - 1; }
};

struct PredictionSet {
  std::vector<GamePrediction> games;
};

void write_predictions(std::ostream& out, const PredictionSet& set);
void write_predictions(const std::filesystem::path& path, const PredictionSet& set);
// Throws Error(BadMagic | BadVersion | TruncatedRecord).
PredictionSet read_predictions(std::istream& in);
PredictionSet read_predictions(const std::filesystem::path& path);

std::uint8_t result_code(GameResult r);

}  // namespace cwm
