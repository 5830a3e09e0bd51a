#include "cwm/shardio.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "cwm/error.hpp"

namespace cwm {
namespace {

class ByteWriter {
 public:
  explicit ByteWriter(std::ostream& out) : out_(out) {}

  void bytes(const void* data, std::size_t n) {
    crc_ = crc32_z(crc_, static_cast<const Bytef*>(data), n);
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u16(std::uint16_t v) {
    const std::uint8_t b[2] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8)};
    bytes(b, 2);
  }
  void u32(std::uint32_t v) {
    const std::uint8_t b[4] = {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
                               static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
    bytes(b, 4);
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void trailer() { u32(static_cast<std::uint32_t>(crc_)); }

  void check() const {
    if (!out_) throw Error(ErrorCode::Io, "write failed");
  }

 private:
  std::ostream& out_;
  uLong crc_ = crc32_z(0L, Z_NULL, 0);
};

class ByteReader {
 public:
  ByteReader(const std::vector<std::uint8_t>& data, std::size_t end) : data_(data), end_(end) {}

  const std::uint8_t* take(std::size_t n) {
    if (pos_ + n > end_) throw Error(ErrorCode::TruncatedRecord, "record runs past the end of the file");
    const std::uint8_t* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint8_t u8() { return *take(1); }
  std::uint16_t u16() {
    const auto* p = take(2);
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
  }
  std::uint32_t u32() {
    const auto* p = take(4);
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string str(std::size_t n) {
    const auto* p = take(n);
    return std::string(reinterpret_cast<const char*>(p), n);
  }
  std::size_t pos() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& data_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> slurp(std::istream& in) {
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "read failed");
  return data;
}

void check_magic(const std::vector<std::uint8_t>& data, const std::array<char, 4>& magic, std::string_view what) {
  if (data.size() < magic.size() || std::memcmp(data.data(), magic.data(), magic.size()) != 0) {
    throw Error(ErrorCode::BadMagic, std::string(what) + " has the wrong magic bytes");
  }
}

void check_game_id(const std::string& id) {
  if (id.size() > 255) throw Error(ErrorCode::Io, "game id longer than 255 bytes: " + id.substr(0, 32) + "...");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

std::uint8_t result_code(GameResult r) { return static_cast<std::uint8_t>(r); }

void write_shard(std::ostream& out, std::span<const Trajectory> games, std::uint16_t flags) {
  ByteWriter w(out);
  w.bytes(kShardMagic.data(), kShardMagic.size());
  w.u16(kShardVersion);
  w.u32(static_cast<std::uint32_t>(games.size()));
  w.u16(flags);
  for (const Trajectory& t : games) {
    check_game_id(t.game_id);
    if (t.move_tokens.empty() || t.move_tokens.size() != t.states.size() || t.plies() > 0xFFFF) {
      throw Error(ErrorCode::Io, "trajectory " + t.game_id + " cannot be stored");
    }
    w.u8(static_cast<std::uint8_t>(t.game_id.size()));
    w.bytes(t.game_id.data(), t.game_id.size());
    w.u8(result_code(t.result));
    w.u16(static_cast<std::uint16_t>(t.plies()));
    for (MoveToken tok : t.move_tokens) w.u16(tok);
    for (const StateLabels& s : t.states) w.bytes(s.data(), s.size());
  }
  w.trailer();
  w.check();
}

void write_shard(const std::filesystem::path& path, std::span<const Trajectory> games, std::uint16_t flags) {
  auto out = open_out(path);
  write_shard(out, games, flags);
}

Shard read_shard(std::istream& in) {
  const std::vector<std::uint8_t> data = slurp(in);
  check_magic(data, kShardMagic, "shard");
  if (data.size() < kShardHeaderBytes + kTrailerBytes) throw Error(ErrorCode::TruncatedRecord, "shard header truncated");
  ByteReader r(data, data.size() - kTrailerBytes);
  r.take(4);
  if (const auto version = r.u16(); version != kShardVersion) {
    throw Error(ErrorCode::BadVersion, "unsupported shard version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32();
  Shard shard;
  shard.flags = r.u16();
  shard.games.reserve(std::min<std::size_t>(count, data.size() / 100));
  for (std::uint32_t g = 0; g < count; ++g) {
    Trajectory t;
    t.game_id = r.str(r.u8());
    const std::uint8_t result = r.u8();
    if (result > 3) throw Error(ErrorCode::TruncatedRecord, "bad result code in record " + std::to_string(g));
    t.result = static_cast<GameResult>(result);
    const std::size_t steps = std::size_t{r.u16()} + 1;
    t.move_tokens.resize(steps);
    for (auto& tok : t.move_tokens) tok = r.u16();
    t.states.resize(steps);
    for (auto& s : t.states) std::memcpy(s.data(), r.take(kNumLabels), kNumLabels);
    shard.games.push_back(std::move(t));
  }
  if (r.pos() != data.size() - kTrailerBytes) {
    throw Error(ErrorCode::TruncatedRecord, "unexpected bytes after the last record");
  }
  const std::size_t body = data.size() - kTrailerBytes;
  const auto crc = static_cast<std::uint32_t>(crc32_z(crc32_z(0L, Z_NULL, 0), data.data(), body));
  ByteReader trailer(data, data.size());
  trailer.take(body);
  if (trailer.u32() != crc) throw Error(ErrorCode::ChecksumMismatch, "shard CRC-32 does not match its contents");
  return shard;
}

Shard read_shard(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_shard(in);
}

std::size_t shard_size_bytes(std::span<const Trajectory> games) {
  std::size_t total = kShardHeaderBytes + kTrailerBytes;
  for (const Trajectory& t : games) {
    total += 1 + t.game_id.size() + 1 + 2 + (t.plies() + 1) * (2 + kNumLabels);
  }
  return total;
}

void write_predictions(std::ostream& out, const PredictionSet& set) {
  ByteWriter w(out);
  w.bytes(kPredictionMagic.data(), kPredictionMagic.size());
  w.u16(kPredictionVersion);
  w.u32(static_cast<std::uint32_t>(set.games.size()));
  for (const GamePrediction& g : set.games) {
    check_game_id(g.game_id);
    if (g.labels.empty() || g.labels.size() != g.log_probs.size() || g.plies() > 0xFFFF) {
      throw Error(ErrorCode::Io, "prediction for " + g.game_id + " cannot be stored");
    }
    w.u8(static_cast<std::uint8_t>(g.game_id.size()));
    w.bytes(g.game_id.data(), g.game_id.size());
    w.u16(static_cast<std::uint16_t>(g.plies()));
    for (std::size_t t = 0; t < g.labels.size(); ++t) {
      w.bytes(g.labels[t].data(), kNumLabels);
      for (float lp : g.log_probs[t]) w.f32(lp);
    }
  }
  w.check();
}

void write_predictions(const std::filesystem::path& path, const PredictionSet& set) {
  auto out = open_out(path);
  write_predictions(out, set);
}

PredictionSet read_predictions(std::istream& in) {
  const std::vector<std::uint8_t> data = slurp(in);
  check_magic(data, kPredictionMagic, "prediction file");
  ByteReader r(data, data.size());
  r.take(4);
  if (const auto version = r.u16(); version != kPredictionVersion) {
    throw Error(ErrorCode::BadVersion, "unsupported prediction file version " + std::to_string(version));
  }
  const std::uint32_t count = r.u32();
  PredictionSet set;
  set.games.reserve(std::min<std::size_t>(count, data.size() / 100));
  for (std::uint32_t i = 0; i < count; ++i) {
    GamePrediction g;
    g.game_id = r.str(r.u8());
    const std::size_t steps = std::size_t{r.u16()} + 1;
    g.labels.resize(steps);
    g.log_probs.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
      std::memcpy(g.labels[t].data(), r.take(kNumLabels), kNumLabels);
      for (float& lp : g.log_probs[t]) lp = r.f32();
    }
    set.games.push_back(std::move(g));
  }
  if (r.pos() != data.size()) throw Error(ErrorCode::TruncatedRecord, "unexpected bytes after the last prediction");
  return set;
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_predictions(in);
}

}  // namespace cwm
