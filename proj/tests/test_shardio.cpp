#include <doctest.h>

#include <sstream>

#include "cwm/error.hpp"
#include "cwm/shardio.hpp"
#include "test_support.hpp"

using namespace cwm;

namespace {

std::vector<Trajectory> sample(std::size_t n, std::uint64_t base = 0) {
  std::vector<Trajectory> out;
  for (std::size_t i = 0; i < n; ++i) {
    Trajectory t = test::random_trajectory(base + i, 30 + 7 * i);
    t.result = static_cast<GameResult>(i % 4);
    out.push_back(std::move(t));
  }
  return out;
}

std::string shard_bytes(std::span<const Trajectory> games, std::uint16_t flags = 0) {
  std::ostringstream out;
  write_shard(out, games, flags);
  return out.str();
}

ErrorCode read_error(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    read_shard(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("read succeeded");
  return ErrorCode::Usage;
}

}  // namespace

TEST_CASE("shard round trip") {
  const auto games = sample(100);
  const std::string bytes = shard_bytes(games, kShardRawEp);
  CHECK(bytes.size() == shard_size_bytes(games));
  CHECK(bytes.substr(0, 4) == "CWM1");
  std::istringstream in(bytes);
  const Shard s = read_shard(in);
  CHECK(s.flags == kShardRawEp);
  CHECK(s.games == games);
  CHECK(shard_bytes(games, kShardRawEp) == bytes);
}

TEST_CASE("shard header layout") {
  const auto games = sample(3);
  const std::string b = shard_bytes(games);
  CHECK(static_cast<unsigned char>(b[4]) == 1);  // version, little-endian
  CHECK(static_cast<unsigned char>(b[5]) == 0);
  CHECK(static_cast<unsigned char>(b[6]) == 3);  // count
  CHECK(b[7] == 0);
  CHECK(b[8] == 0);
  CHECK(b[9] == 0);
  CHECK(static_cast<unsigned char>(b[12]) == games[0].game_id.size());
}

TEST_CASE("empty shard") {
  const std::string bytes = shard_bytes({});
  CHECK(bytes.size() == kShardHeaderBytes + kTrailerBytes);
  std::istringstream in(bytes);
  CHECK(read_shard(in).games.empty());
}

TEST_CASE("closed-form size on random inputs") {
  for (std::size_t n : {0u, 1u, 5u, 17u}) {
    const auto games = sample(n, 100 + n);
    std::size_t expect = 16;
    for (const auto& g : games) expect += 1 + g.game_id.size() + 1 + 2 + (g.plies() + 1) * 77;
    CHECK(shard_size_bytes(games) == expect);
    CHECK(shard_bytes(games).size() == expect);
  }
}

TEST_CASE("corruption is detected") {
  const auto games = sample(4);
  const std::string good = shard_bytes(games);
  for (std::size_t pos : {std::size_t{40}, good.size() / 2, good.size() - 5}) {
    std::string bad = good;
    bad[pos] ^= 0x01;
    CHECK(read_error(bad) == ErrorCode::ChecksumMismatch);
  }
  std::string magic = good;
  magic[0] = 'X';
  CHECK(read_error(magic) == ErrorCode::BadMagic);
  std::string version = good;
  version[4] = 2;
  CHECK(read_error(version) == ErrorCode::BadVersion);
  CHECK(read_error(good.substr(0, good.size() - 1)) == ErrorCode::TruncatedRecord);
  CHECK(read_error(good.substr(0, 30)) == ErrorCode::TruncatedRecord);
  CHECK(read_error(good.substr(0, 6)) == ErrorCode::TruncatedRecord);
  std::string count = good;
  count[6] = 5;
  CHECK(read_error(count) == ErrorCode::TruncatedRecord);
}

TEST_CASE("unrepresentable records") {
  Trajectory t = test::random_trajectory(1, 10);
  t.game_id.assign(256, 'x');
  std::ostringstream out;
  CHECK_THROWS_AS(write_shard(out, std::span(&t, 1)), Error);
  t.game_id = "ok";
  t.states.pop_back();
  CHECK_THROWS_AS(write_shard(out, std::span(&t, 1)), Error);
}

TEST_CASE("file round trip") {
  test::TempDir dir("shardio");
  const auto games = sample(10);
  write_shard(dir / "a.cwm", games);
  write_shard(dir / "b.cwm", games);
  CHECK(test::read_bytes(dir / "a.cwm") == test::read_bytes(dir / "b.cwm"));
  CHECK(read_shard(dir / "a.cwm").games == games);
  try {
    read_shard(dir / "missing.cwm");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("prediction file round trip") {
  const auto games = sample(5);
  PredictionSet set;
  float v = 0.0f;
  for (const auto& g : games) {
    GamePrediction p;
    p.game_id = g.game_id;
    p.labels = g.states;
    for (std::size_t t = 0; t < g.states.size(); ++t) {
      LogProbs lp;
      for (auto& x : lp) x = -(v += 0.125f);
      p.log_probs.push_back(lp);
    }
    set.games.push_back(std::move(p));
  }
  std::ostringstream out;
  write_predictions(out, set);
  std::size_t expect = 10;
  for (const auto& g : games) expect += 1 + g.game_id.size() + 2 + (g.plies() + 1) * (75 + 300);
  CHECK(out.str().size() == expect);
  CHECK(out.str().substr(0, 4) == "CWMP");

  std::istringstream in(out.str());
  const PredictionSet back = read_predictions(in);
  REQUIRE(back.games.size() == set.games.size());
  for (std::size_t i = 0; i < set.games.size(); ++i) {
    CHECK(back.games[i].game_id == set.games[i].game_id);
    CHECK(back.games[i].labels == set.games[i].labels);
    CHECK(back.games[i].log_probs == set.games[i].log_probs);
  }

  std::string bad = out.str();
  bad[1] = 'X';
  std::istringstream bin(bad);
  CHECK_THROWS_AS(read_predictions(bin), Error);
  std::istringstream trunc(out.str().substr(0, out.str().size() - 3));
  try {
    read_predictions(trunc);
    FAIL("expected TruncatedRecord");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncatedRecord);
  }
}
