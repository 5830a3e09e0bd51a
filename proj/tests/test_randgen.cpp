#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "cwm/codec.hpp"
#include "cwm/error.hpp"
#include "cwm/randgen.hpp"
#include "cwm/rng.hpp"
#include "golden.hpp"

using namespace cwm;

TEST_CASE("PRNG reference outputs") {
  SplitMix64 sm(0);
  for (auto v : golden::kSplitMixSeed0) CHECK(sm() == v);
  Xoshiro256StarStar x0(0), x1(1), x42(42);
  for (auto v : golden::kXoshiroSeed0) CHECK(x0() == v);
  for (auto v : golden::kXoshiroSeed1) CHECK(x1() == v);
  for (auto v : golden::kXoshiroSeed42) CHECK(x42() == v);
}

TEST_CASE("first random moves match the reference PRNG") {
  for (std::uint64_t seed = 0; seed < golden::kFirstMoveUci.size(); ++seed) {
    const RandomGame g = generate_random_game(seed);
    CHECK(to_uci(decode_move(g.trajectory.move_tokens[1])) == golden::kFirstMoveUci[seed]);
    RandomMover mover(seed);
    CHECK(to_uci(mover.choose(Board::initial().legal_moves())) == golden::kFirstMoveUci[seed]);
  }
  CHECK(encode_move(*parse_uci("a2a4")) == 15520);
}

TEST_CASE("games are deterministic, legal and terminated") {
  const auto possible = enumerate_possible_moves();
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RandomGame g = generate_random_game(seed);
    CHECK(g.trajectory == generate_random_game(seed).trajectory);
    CHECK(g.trajectory.game_id == random_game_id(seed));
    CHECK(g.termination != Termination::Ongoing);

    Position p = initial_position();
    for (std::size_t i = 1; i < g.trajectory.move_tokens.size(); ++i) {
      const MoveToken tok = g.trajectory.move_tokens[i];
      REQUIRE(std::binary_search(possible.begin(), possible.end(), tok));
      p.apply(decode_move(tok));
      REQUIRE(encode_state(p) == g.trajectory.states[i]);
    }
    CHECK(termination_status(p) == g.termination);
    const GameResult expect = g.termination != Termination::Checkmate ? GameResult::Draw
                              : p.board().side_to_move() == Color::White ? GameResult::BlackWins
                                                                         : GameResult::WhiteWins;
    CHECK(g.trajectory.result == expect);
  }
}

TEST_CASE("cap") {
  try {
    generate_random_game(0, 10);
    FAIL("expected CapReached");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapReached);
  }
}

TEST_CASE("test set") {
  GenConfig cfg;
  cfg.master_seed = 5;
  cfg.target_games = 100;
  const TestSet a = generate_test_set(cfg, 1);
  const TestSet b = generate_test_set(cfg, 4);
  REQUIRE(a.games.size() == 100);
  CHECK(a.games == b.games);
  CHECK(a.accepted == 100);
  CHECK(a.manifest.size() == a.accepted + a.rejected);
  for (const auto& g : a.games) CHECK(g.plies() >= 20);

  // Seeds advance one per attempt whether or not the game was kept.
  for (std::size_t i = 0; i < a.manifest.size(); ++i) CHECK(a.manifest[i].seed == cfg.master_seed + i);
  std::size_t k = 0;
  for (const auto& e : a.manifest) {
    if (!e.accepted) {
      CHECK((e.capped || e.plies < 20));
      continue;
    }
    CHECK(a.games[k].game_id == random_game_id(e.seed));
    CHECK(a.games[k].plies() == e.plies);
    ++k;
  }

  std::ostringstream ma, mb;
  write_manifest(ma, a);
  write_manifest(mb, b);
  CHECK(ma.str() == mb.str());
  CHECK(ma.str().find("# master_seed\t5") != std::string::npos);
}

TEST_CASE("short cap rejects rather than truncates") {
  GenConfig cfg;
  cfg.target_games = 3;
  cfg.max_plies = 60;
  cfg.min_full_moves = 1;
  const TestSet s = generate_test_set(cfg, 1);
  CHECK(s.games.size() == 3);
  for (const auto& g : s.games) CHECK(g.plies() < 60);
  for (const auto& e : s.manifest) {
    if (e.capped) CHECK_FALSE(e.accepted);
  }
}
