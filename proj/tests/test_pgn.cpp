#include <doctest.h>

#include <sstream>

#include "cwm/codec.hpp"
#include "cwm/error.hpp"
#include "cwm/pgn.hpp"
#include "cwm/san.hpp"
#include "test_support.hpp"

using namespace cwm;

namespace {

Move uci(std::string_view s) { return *parse_uci(s); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Usage;
}

constexpr std::string_view kTwoGames = R"([Event "Rated Blitz game"]
[Site "https://lichess.org/AbCd1234"]
[White "a"]
[Black "b"]
[Result "1-0"]

1. e4 { [%clk 0:03:00] } 1... e5 { [%clk 0:03:00] } 2. Nf3 { [%clk 0:02:58] } 2... Nc6 { [%clk 0:02:57] } 1-0

[Event "Rated Blitz game"]
[Site "https://lichess.org/XyZw9876"]
[Result "0-1"]

1. d4 { [%eval 0.2] [%clk 0:05:00] } d5 2. c4 $1 dxc4?! 0-1
)";

}  // namespace

TEST_CASE("comments and clocks are stripped") {
  const auto games = test::read_all_games(kTwoGames);
  REQUIRE(games.size() == 2);
  CHECK(games[0].san_moves == std::vector<std::string>{"e4", "e5", "Nf3", "Nc6"});
  CHECK(games[0].game_id == "AbCd1234");
  CHECK(games[0].result == GameResult::WhiteWins);
  CHECK(*games[0].header("White") == "a");
  CHECK(games[0].header("Missing") == nullptr);
  CHECK(games[1].san_moves == std::vector<std::string>{"d4", "d5", "c4", "dxc4?!"});
  CHECK(games[1].game_id == "XyZw9876");
  CHECK(games[1].result == GameResult::BlackWins);
}

TEST_CASE("game ids") {
  CHECK(game_id_from_site("https://lichess.org/AbCd1234", GameIdMode::SiteSegment) == "AbCd1234");
  CHECK(game_id_from_site("https://lichess.org/AbCd1234", GameIdMode::FullSite) == "https://lichess.org/AbCd1234");
  CHECK(game_id_from_site("Moscow RUS", GameIdMode::SiteSegment) == "Moscow RUS");
  const auto games = test::read_all_games("[Event \"x\"]\n\n1. e4 e5 *\n\n1. d4 *\n");
  REQUIRE(games.size() == 2);
  CHECK(games[0].game_id == "#0");
  CHECK(games[1].game_id == "#1");
  CHECK(games[1].headers.empty());
  CHECK(games[1].result == GameResult::Unknown);
}

TEST_CASE("variations, NAGs and escapes are excluded") {
  const auto games = test::read_all_games(
      "% exported by hand\n[Site \"s/v1\"]\n\n1. e4 (1. d4 d5 (1... Nf6 2. c4)) 1... e5 $2 ; rest of line\n"
      "2. Nf3 (2. f4 exf4) 2... Nc6 {a (parenthesised) comment; not a rest-of-line one} 3. Bb5 1/2-1/2\n");
  REQUIRE(games.size() == 1);
  CHECK(games[0].san_moves == std::vector<std::string>{"e4", "e5", "Nf3", "Nc6", "Bb5"});
  CHECK(games[0].result == GameResult::Draw);
}

TEST_CASE("byte order mark and missing final result") {
  const auto games = test::read_all_games("\xEF\xBB\xBF[Site \"x/BOM\"]\n\n1. e4 e5 2. Nf3");
  REQUIRE(games.size() == 1);
  CHECK(games[0].game_id == "BOM");
  CHECK(games[0].san_moves.size() == 3);
}

TEST_CASE("unrecoverable framing throws StreamCorrupt") {
  CHECK(code_of([] { test::read_all_games("[Site \"x/a\"]\n\n1. e4 *\n\n[Event \"unterminated"); }) ==
        ErrorCode::StreamCorrupt);
  CHECK(code_of([] { test::read_all_games("[Site \"x/a\"]\n\n1. e4 { never closed"); }) ==
        ErrorCode::StreamCorrupt);
}

TEST_CASE("malformed games are skipped, neighbours kept") {
  std::istringstream in(
      "[Site \"x/ok1\"]\n\n1. e4 e5 *\n\n"
      "[Site \"x/bad\"]\n\n1. e4 @@@ 2. Nf3 *\n\n"
      "[Site \"x/ok2\"]\n\n1. d4 d5 *\n");
  PgnReader reader(in);
  std::vector<std::string> ids;
  while (auto g = reader.next()) ids.push_back(g->game_id);
  CHECK(ids == std::vector<std::string>{"ok1", "ok2"});
  REQUIRE(reader.skipped().size() == 1);
  CHECK(reader.skipped()[0].game_id == "bad");
  CHECK(reader.skipped()[0].ordinal == 1);
  CHECK(reader.games_seen() == 3);
}

TEST_CASE("null-move game is reported and skipped") {
  std::istringstream in(test::read_bytes(test::data_dir() / "null_move.pgn"));
  PgnReader reader(in);
  std::size_t parsed = 0;
  while (reader.next()) ++parsed;
  CHECK(parsed == 0);
  CHECK(reader.skipped().size() == 1);
}

TEST_CASE("SAN resolution") {
  const Board init = Board::initial();
  CHECK(san_to_move(init, "e4") == uci("e2e4"));
  CHECK(san_to_move(init, "Nf3") == uci("g1f3"));
  CHECK(san_to_move(init, "Nf3+!?") == uci("g1f3"));
  CHECK(code_of([&] { san_to_move(init, "e5"); }) == ErrorCode::NoMatchSan);
  CHECK(code_of([&] { san_to_move(init, "Qh5"); }) == ErrorCode::NoMatchSan);
  CHECK(code_of([&] { san_to_move(init, "O-O"); }) == ErrorCode::NoMatchSan);

  const Board knights = Board::from_fen("4k3/8/8/8/8/5N2/8/1N2K3 w - - 0 1");
  CHECK(san_to_move(knights, "Nbd2") == uci("b1d2"));
  CHECK(san_to_move(knights, "Nfd2") == uci("f3d2"));
  CHECK(san_to_move(knights, "Nf3d2") == uci("f3d2"));
  CHECK(code_of([&] { san_to_move(knights, "Nd2"); }) == ErrorCode::AmbiguousSan);

  const Board rooks = Board::from_fen("4k3/8/R7/8/8/8/8/R3K3 w Q - 0 1");
  CHECK(san_to_move(rooks, "R1a3") == uci("a1a3"));
  CHECK(san_to_move(rooks, "R6a3") == uci("a6a3"));
  CHECK(san_to_move(rooks, "O-O-O") == uci("e1c1"));
  CHECK(san_to_move(rooks, "0-0-0") == uci("e1c1"));

  const Board promo = Board::from_fen("1n2k3/P7/8/8/8/8/8/4K3 w - - 0 1");
  CHECK(san_to_move(promo, "a8=Q") == uci("a7a8q"));
  CHECK(san_to_move(promo, "a8N") == uci("a7a8n"));
  CHECK(san_to_move(promo, "axb8=R+") == uci("a7b8r"));
  CHECK(code_of([&] { san_to_move(promo, "a8"); }) == ErrorCode::NoMatchSan);

  const Board ep = Board::from_fen("rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3");
  CHECK(san_to_move(ep, "exf6") == uci("e5f6"));
}

TEST_CASE("SAN writer") {
  const Board knights = Board::from_fen("4k3/8/8/8/8/5N2/8/1N2K3 w - - 0 1");
  CHECK(move_to_san(knights, uci("b1d2")) == "Nbd2");
  CHECK(move_to_san(Board::initial(), uci("e2e4")) == "e4");
  CHECK(move_to_san(Board::from_fen("4k3/8/8/8/8/8/8/4K2R w K - 0 1"), uci("e1g1")) == "O-O");
  CHECK(move_to_san(Board::from_fen("1n2k3/P7/8/8/8/8/8/4K3 w - - 0 1"), uci("a7b8q")) == "axb8=Q+");
  CHECK(move_to_san(Board::from_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1"), uci("a1a8")) == "Ra8#");
}

TEST_CASE("SAN handling is idempotent") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto moves = test::random_playout(seed);
    Board b = Board::initial();
    std::vector<std::string> sans;
    for (const Move& m : moves) {
      const std::string san = move_to_san(b, m);
      REQUIRE(san_to_move(b, san) == m);
      sans.push_back(san);
      b.play(m);
    }
    Board c = Board::initial();
    for (std::size_t i = 0; i < sans.size(); ++i) {
      const Move m = san_to_move(c, sans[i]);
      REQUIRE(move_to_san(c, m) == sans[i]);
      c.play(m);
    }
  }
}

TEST_CASE("trajectory construction") {
  RawGame g;
  g.game_id = "g";
  g.san_moves = {"e4", "e5", "Nf3", "Nc6", "Bb5", "a6", "Ba4", "Nf6", "O-O", "Be7",
                 "Re1", "b5", "Bb3", "d6", "c3", "O-O", "h3", "Nb8", "d4", "Nbd7"};
  const Trajectory t = build_trajectory(g);
  CHECK(t.plies() == 20);
  CHECK(t.move_tokens.size() == 21);
  CHECK(t.states.size() == 21);
  CHECK(t.move_tokens[0] == kStartToken);
  CHECK(t.move_tokens[1] == 16820);
  CHECK(t.states[0] == encode_state(initial_position()));
  CHECK(passes_length_filter(t));

  // Independent re-replay of every prefix.
  Position p = initial_position();
  for (std::size_t i = 1; i <= t.plies(); ++i) {
    p.apply(decode_move(t.move_tokens[i]));
    CHECK(t.states[i] == encode_state(p));
  }

  g.san_moves.pop_back();
  CHECK_FALSE(passes_length_filter(build_trajectory(g)));

  RawGame scholar;
  scholar.san_moves = {"e4", "e5", "Bc4", "Nc6", "Qh5", "Nf6", "Qxf7#"};
  const Trajectory s = build_trajectory(scholar);
  CHECK(s.plies() == 7);
  CHECK_FALSE(passes_length_filter(s));

  RawGame bad;
  bad.san_moves = {"e4", "e5", "Ke3"};
  try {
    build_trajectory(bad);
    FAIL("expected IllegalGame");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalGame);
    CHECK(std::string(e.what()).find("Ke3") != std::string::npos);
  }
}

TEST_CASE("real games replay to the oracle FEN") {
  const auto games = test::read_all_games(test::read_bytes(test::data_dir() / "replay_1000.pgn"));
  const auto expected = test::load_expected(test::data_dir() / "replay_1000.expected");
  REQUIRE(games.size() >= 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CAPTURE(expected[i].game_id);
    const Trajectory t = build_trajectory(games[i]);
    CHECK(t.plies() == expected[i].plies);
    CHECK(decode_state(t.states.back()).fen() == expected[i].fen);
  }
}
