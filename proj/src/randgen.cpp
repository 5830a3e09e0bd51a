#include "cwm/randgen.hpp"

#include <optional>

#include "cwm/error.hpp"
#include "cwm/parallel.hpp"

namespace cwm {

std::string random_game_id(std::uint64_t seed) { return "random-" + std::to_string(seed); }

RandomGame generate_random_game(std::uint64_t seed, std::size_t max_plies, EpEncoding ep) {
  RandomMover mover(seed);
  Position pos = Position::initial();
  RandomGame game;
  Trajectory& t = game.trajectory;
  t.game_id = random_game_id(seed);
  t.move_tokens.push_back(kStartToken);
  t.states.push_back(encode_state(pos.board(), ep));
  for (;;) {
    const std::vector<Move> moves = pos.board().legal_moves();
    game.termination = termination_status(pos, !moves.empty());
    if (game.termination != Termination::Ongoing) break;
    if (t.plies() >= max_plies) {
      throw Error(ErrorCode::CapReached, "seed " + std::to_string(seed) + " reached the " +
                                             std::to_string(max_plies) + "-ply cap");
    }
    const Move m = mover.choose(moves);
    pos.apply_trusted(m);
    t.move_tokens.push_back(encode_move(m));
    t.states.push_back(encode_state(pos.board(), ep));
  }
  if (game.termination == Termination::Checkmate) {
    t.result = pos.board().side_to_move() == Color::White ? GameResult::BlackWins : GameResult::WhiteWins;
  } else {
    t.result = GameResult::Draw;
  }
  return game;
}

TestSet generate_test_set(const GenConfig& cfg, unsigned workers) {
  TestSet set;
  set.config = cfg;
  if (cfg.target_games == 0) return set;

  struct Attempt {
    std::optional<Trajectory> trajectory;
    ManifestEntry entry;
  };
  const std::size_t batch = std::max<std::size_t>(64, std::size_t{workers} * 16);
  std::uint64_t seed = cfg.master_seed;
  while (set.accepted < cfg.target_games) {
    auto attempts = parallel_map(batch, workers, [&](std::size_t i) {
      Attempt a;
      a.entry.seed = seed + i;
      try {
        RandomGame g = generate_random_game(a.entry.seed, cfg.max_plies, cfg.ep);
        a.entry.plies = g.trajectory.plies();
        a.entry.termination = g.termination;
        a.entry.accepted = passes_length_filter(g.trajectory, cfg.min_full_moves);
        if (a.entry.accepted) a.trajectory = std::move(g.trajectory);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CapReached) throw;
        a.entry.capped = true;
        a.entry.plies = cfg.max_plies;
      }
      return a;
    });
    for (Attempt& a : attempts) {
      if (set.accepted == cfg.target_games) break;
      set.manifest.push_back(a.entry);
      if (a.entry.accepted) {
        set.games.push_back(std::move(*a.trajectory));
        ++set.accepted;
      } else {
        ++set.rejected;
      }
    }
    seed += batch;
  }
  return set;
}

void write_manifest(std::ostream& out, const TestSet& set) {
  out << "# master_seed\t" << set.config.master_seed << '\n'
      << "# target_games\t" << set.config.target_games << '\n'
      << "# min_full_moves\t" << set.config.min_full_moves << '\n'
      << "# max_plies\t" << set.config.max_plies << '\n'
      << "# accepted\t" << set.accepted << '\n'
      << "# rejected\t" << set.rejected << '\n'
      << "# seed\taccepted\tplies\ttermination\n";
  for (const ManifestEntry& e : set.manifest) {
    out << e.seed << '\t' << (e.accepted ? 1 : 0) << '\t' << e.plies << '\t'
        << (e.capped ? std::string_view("cap_reached") : to_string(e.termination)) << '\n';
  }
}

}  // namespace cwm
