#include "cwm/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <variant>

#include "cwm/error.hpp"
#include "cwm/evalkit.hpp"
#include "cwm/parallel.hpp"
#include "cwm/rng.hpp"
#include "cwm/shardio.hpp"
#include "cwm/split.hpp"

namespace cwm {
namespace {

std::filesystem::path shard_path(const std::filesystem::path& dir, std::string_view prefix, std::size_t index) {
  char name[64];
  std::snprintf(name, sizeof name, "%.*s-%05zu.cwm", static_cast<int>(prefix.size()), prefix.data(), index);
  return dir / name;
}

// Accumulates trajectories and flushes a shard file every `limit` games.
class ShardSink {
 public:
  ShardSink(std::filesystem::path dir, std::string prefix, std::size_t limit, std::uint16_t flags,
            std::vector<std::filesystem::path>& written)
      : dir_(std::move(dir)), prefix_(std::move(prefix)), limit_(std::max<std::size_t>(1, limit)),
        flags_(flags), written_(written) {}

  void add(Trajectory t) {
    pending_.push_back(std::move(t));
    if (pending_.size() == limit_) flush();
  }

  void flush() {
    if (pending_.empty()) return;
    const auto path = shard_path(dir_, prefix_, index_++);
    write_shard(path, pending_, flags_);
    written_.push_back(path);
    pending_.clear();
  }

 private:
  std::filesystem::path dir_;
  std::string prefix_;
  std::size_t limit_;
  std::uint16_t flags_;
  std::vector<std::filesystem::path>& written_;
  std::vector<Trajectory> pending_;
  std::size_t index_ = 0;
};

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
}

std::uint16_t flags_for(EpEncoding ep) { return ep == EpEncoding::Raw ? kShardRawEp : 0; }

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

double BuildReport::validation_fraction() const {
  return kept() == 0 ? 0.0 : static_cast<double>(validation) / static_cast<double>(kept());
}

BuildReport build_shards(std::istream& pgn, const BuildOptions& options) {
  ensure_dir(options.out_dir);
  BuildReport report;
  ShardSink train(options.out_dir, "train", options.shard_size, flags_for(options.ep), report.shards);
  ShardSink validation(options.out_dir, "validation", options.shard_size, flags_for(options.ep), report.shards);
  PgnReader reader(pgn, options.id_mode);

  using Built = std::variant<Trajectory, std::string>;
  std::vector<RawGame> batch;
  std::size_t parse_skips_seen = 0;

  auto drain = [&] {
    auto built = parallel_map(batch.size(), options.workers, [&](std::size_t i) -> Built {
      try {
        return build_trajectory(batch[i], options.ep);
      } catch (const Error& e) {
        return std::string(e.what());
      }
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (auto* error = std::get_if<std::string>(&built[i])) {
        ++report.illegal;
        report.skipped.push_back({batch[i].ordinal, batch[i].game_id, *error});
        continue;
      }
      Trajectory& t = std::get<Trajectory>(built[i]);
      if (!passes_length_filter(t, options.min_full_moves)) {
        ++report.too_short;
        continue;
      }
      if (split_of(t.game_id) == Split::Validation) {
        ++report.validation;
        validation.add(std::move(t));
      } else {
        ++report.train;
        train.add(std::move(t));
      }
    }
    batch.clear();
  };

  while (auto game = reader.next()) {
    // Interleave parse failures with replay failures in input order.
    for (; parse_skips_seen < reader.skipped().size(); ++parse_skips_seen) {
      report.skipped.push_back(reader.skipped()[parse_skips_seen]);
    }
    batch.push_back(std::move(*game));
    if (batch.size() == options.batch_size) drain();
  }
  drain();
  for (; parse_skips_seen < reader.skipped().size(); ++parse_skips_seen) {
    report.skipped.push_back(reader.skipped()[parse_skips_seen]);
  }
  std::stable_sort(report.skipped.begin(), report.skipped.end(),
                   [](const SkippedGame& a, const SkippedGame& b) { return a.ordinal < b.ordinal; });
  report.parse_skipped = reader.skipped().size();
  report.games_read = reader.games_seen();
  train.flush();
  validation.flush();
  return report;
}

void write_build_report(std::ostream& out, const BuildReport& r) {
  out << "games_read\t" << r.games_read << '\n'
      << "parse_skipped\t" << r.parse_skipped << '\n'
      << "illegal\t" << r.illegal << '\n'
      << "too_short\t" << r.too_short << '\n'
      << "kept\t" << r.kept() << '\n'
      << "train\t" << r.train << '\n'
      << "validation\t" << r.validation << '\n'
      << "validation_percent\t" << percent(100.0 * r.validation_fraction()) << '\n'
      << "shards\t" << r.shards.size() << '\n';
  for (const auto& p : r.shards) out << "shard\t" << p.filename().string() << '\n';
  for (const SkippedGame& s : r.skipped) out << "skipped\t" << s.ordinal << '\t' << s.game_id << '\t' << s.reason << '\n';
  if (r.kept() == 0) out << "note\tno game passed the filters; no shards written\n";
}

RandgenOutput run_randgen(const RandgenOptions& options) {
  ensure_dir(options.out_dir);
  RandgenOutput out;
  out.set = generate_test_set(options.config, options.workers);
  ShardSink sink(options.out_dir, "random", options.shard_size, flags_for(options.config.ep), out.shards);
  for (const Trajectory& t : out.set.games) sink.add(t);
  sink.flush();
  out.manifest = options.out_dir / "manifest.tsv";
  std::ofstream manifest(out.manifest, std::ios::binary | std::ios::trunc);
  if (!manifest) throw Error(ErrorCode::Io, "cannot write " + out.manifest.string());
  write_manifest(manifest, out.set);
  return out;
}

double CoverageReport::coverage_percent() const {
  return 100.0 * static_cast<double>(observed.size()) / static_cast<double>(kNumMoveIds);
}

std::vector<MoveToken> unique_move_ids(std::span<const std::filesystem::path> shards) {
  std::vector<bool> seen(kNumMoveIds, false);
  for (const auto& path : shards) {
    for (const Trajectory& t : read_shard(path).games) {
      for (MoveToken tok : t.move_tokens) {
        if (tok < kNumMoveIds) seen[tok] = true;
      }
    }
  }
  std::vector<MoveToken> ids;
  for (std::size_t id = 0; id < seen.size(); ++id) {
    if (seen[id]) ids.push_back(static_cast<MoveToken>(id));
  }
  return ids;
}

CoverageReport coverage(std::span<const std::filesystem::path> shards, std::span<const std::filesystem::path> against) {
  CoverageReport r;
  r.observed = unique_move_ids(shards);
  const auto possible = enumerate_possible_moves();
  r.possible = possible.size();
  std::set_difference(r.observed.begin(), r.observed.end(), possible.begin(), possible.end(),
                      std::back_inserter(r.outside_possible));
  if (!against.empty()) {
    r.against = unique_move_ids(against);
    std::vector<MoveToken> both;
    std::set_intersection(r.observed.begin(), r.observed.end(), r.against->begin(), r.against->end(),
                          std::back_inserter(both));
    r.both = both.size();
    r.primary_only = r.observed.size() - both.size();
    r.against_only = r.against->size() - both.size();
  }
  return r;
}

void write_coverage_report(std::ostream& out, const CoverageReport& r) {
  out << "unique_ids\t" << r.observed.size() << '\n'
      << "vocabulary\t" << kNumMoveIds << '\n'
      << "coverage_percent\t" << percent(r.coverage_percent()) << '\n'
      << "possible_ids\t" << r.possible << '\n'
      << "outside_possible\t" << r.outside_possible.size() << '\n';
  for (MoveToken id : r.outside_possible) out << "outside\t" << id << '\t' << to_uci(decode_move(id)) << '\n';
  if (r.against) {
    out << "against_unique_ids\t" << r.against->size() << '\n'
        << "both\t" << r.both << '\n'
        << "primary_only\t" << r.primary_only << '\n'
        << "against_only\t" << r.against_only << '\n';
  }
}

// ------------------------------------------------------------- selfcheck

namespace {

struct PerftCase {
  const char* fen;
  std::uint64_t counts[5];
};

// Reference counts from an independent move generator.
constexpr PerftCase kPerftCases[] = {
    {"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1", {20, 400, 8902, 197281, 4865609}},
    {"r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", {48, 2039, 97862, 4085603, 193690690}},
    {"8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", {14, 191, 2812, 43238, 674624}},
    {"r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1", {6, 264, 9467, 422333, 15833292}},
    {"rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", {44, 1486, 62379, 2103487, 89941194}},
    {"r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P3/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10", {47, 1845, 81467, 3065277, 131966677}},
};

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<CheckResult> results;
  auto guarded = [&](const std::string& name, auto fn) {
    try {
      results.push_back(fn());
    } catch (const std::exception& e) {
      results.push_back(check(name, false, e.what()));
    }
  };

  guarded("perft", [&] {
    const int depth = std::clamp(options.perft_depth, 1, 5);
    for (const PerftCase& c : kPerftCases) {
      const Board b = Board::from_fen(c.fen);
      for (int d = 1; d <= depth; ++d) {
        const auto n = perft(b, d);
        if (n != c.counts[d - 1]) {
          return check("perft", false, std::string(c.fen) + " depth " + std::to_string(d) + ": " + std::to_string(n));
        }
      }
    }
    return check("perft", true, "6 positions, depth 1-" + std::to_string(depth));
  });

  guarded("move_codec", [&] {
    for (int id = 0; id < kNumMoveIds; ++id) {
      if (encode_move(decode_move(static_cast<MoveToken>(id))) != id) {
        return check("move_codec", false, "id " + std::to_string(id));
      }
    }
    const bool ok = enumerate_possible_moves().size() == 1968 &&
                    encode_move(*parse_uci("e2e4")) == 16820 && encode_move(*parse_uci("e7e8q")) == 3861;
    return check("move_codec", ok, "20480 ids round-trip; 1968 possible");
  });

  guarded("state_codec", [&] {
    const PieceCodeTable& table = *options.piece_table;
    const StateLabels start = encode_state(Board::initial(), EpEncoding::LegalOnly, table);
    const StateLabels golden_rank8 = {10, 8, 9, 11, 12, 9, 8, 10};
    if (!std::equal(golden_rank8.begin(), golden_rank8.begin() + 8, start.begin())) {
      return check("state_codec", false, "initial rank-8 labels differ from the piece-code table");
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const RandomGame g = generate_random_game(seed);
      Position pos = Position::initial();
      for (std::size_t t = 0; t < g.trajectory.states.size(); ++t) {
        if (t > 0) pos.apply(decode_move(g.trajectory.move_tokens[t]));
        const StateLabels s = encode_state(pos.board(), EpEncoding::LegalOnly, table);
        const StateLabels again = encode_state(decode_state(s, table), EpEncoding::LegalOnly, table);
        if (s != again || s != g.trajectory.states[t]) {
          return check("state_codec", false, "seed " + std::to_string(seed) + " step " + std::to_string(t));
        }
      }
    }
    return check("state_codec", true, "20 random games round-trip");
  });

  guarded("metrics", [&] {
    GenConfig cfg;
    cfg.target_games = 20;
    const TestSet set = generate_test_set(cfg, 1);
    const MetricReport oracle = evaluate(set.games, oracle_predict(set.games));
    const MetricReport lag1 = evaluate(set.games, lagk_predict(set.games, 1));
    const MetricReport lag2 = evaluate(set.games, lagk_predict(set.games, 2));
    const bool ok = oracle.cross_entropy == 0.0 && oracle.exact_state_rate == 1.0 &&
                    oracle.labelwise_accuracy == 1.0 && oracle.trajectory_exact_rate == 1.0 &&
                    lag1.exact_timesteps == lag1.games && lag1.exact_state_rate <= oracle.exact_state_rate &&
                    lag2.exact_state_rate <= lag1.exact_state_rate &&
                    lag1.labelwise_accuracy < oracle.labelwise_accuracy;
    return check("metrics", ok, "oracle exact, lag-1 exact only at t=0");
  });

  guarded("split_md5", [&] {
    const bool ok = split_residue("abc") == 3570 && split_residue("AbCd1234") == 8542 &&
                    split_of("abc") == Split::Train;
    return check("split_md5", ok, "golden residues");
  });

  guarded("prng", [&] {
    Xoshiro256StarStar rng(0);
    const bool stream_ok = rng() == 11091344671253066420ULL && rng() == 13793997310169335082ULL;
    const RandomGame g = generate_random_game(0);
    const bool first_ok = g.trajectory.move_tokens.size() > 1 && g.trajectory.move_tokens[1] == 15520;
    return check("prng", stream_ok && first_ok, "xoshiro256** seed 0; first move a2a4");
  });
  return results;
}

std::string render_state(const StateLabels& s) {
  std::ostringstream out;
  for (int r = 0; r < 8; ++r) {
    out << "  " << 8 - r << ' ';
    for (int f = 0; f < 8; ++f) {
      const int code = s[r * 8 + f];
      out << ' ' << (code < kNumPieceCodes ? piece_char(static_cast<Piece>(code)) : '?');
    }
    out << '\n';
  }
  out << "     a b c d e f g h\n";
  out << "  side " << (s[kSideLabel] ? "black" : "white") << "  castling ";
  const char* letters = "KQkq";
  bool any = false;
  for (int i = 0; i < 4; ++i) {
    if (s[kCastlingLabel + i]) {
      out << letters[i];
      any = true;
    }
  }
  if (!any) out << '-';
  out << "  ep ";
  if (s[kEpFileLabel]) {
    out << static_cast<char>('a' + s[kEpFileLabel] - 1) << (s[kEpRankLabel] == 1 ? '3' : '6');
  } else {
    out << '-';
  }
  out << "  halfmove " << ((s[kHalfmoveLabel] << 8) | s[kHalfmoveLabel + 1]) << "  fullmove "
      << ((s[kFullmoveLabel] << 8) | s[kFullmoveLabel + 1]) << '\n';
  return out.str();
}

void inspect_shard(std::ostream& out, const std::filesystem::path& path, std::size_t sample_games) {
  const Shard shard = read_shard(path);
  std::size_t timesteps = 0;
  for (const Trajectory& t : shard.games) timesteps += t.states.size();
  out << "file\t" << path.string() << '\n'
      << "version\t" << kShardVersion << '\n'
      << "flags\t" << shard.flags << '\n'
      << "games\t" << shard.games.size() << '\n'
      << "timesteps\t" << timesteps << '\n'
      << "bytes\t" << shard_size_bytes(shard.games) << '\n';
  for (std::size_t g = 0; g < std::min(sample_games, shard.games.size()); ++g) {
    const Trajectory& t = shard.games[g];
    out << "\ngame " << g << "  id " << t.game_id << "  result " << to_string(t.result) << "  plies " << t.plies()
        << "\n  moves";
    for (std::size_t i = 1; i < t.move_tokens.size(); ++i) out << ' ' << to_uci(decode_move(t.move_tokens[i]));
    out << "\n  final state\n" << render_state(t.states.back());
  }
}

}  // namespace cwm
