// cwm: build, generate, inspect and score move-to-state trajectory shards.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cwm/error.hpp"
#include "cwm/evalkit.hpp"
#include "cwm/parallel.hpp"
#include "cwm/pipeline.hpp"
#include "cwm/shardio.hpp"
#include "cwm/split.hpp"

namespace {

using cwm::Error;
using cwm::ErrorCode;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorCode::Io, "cannot write " + path);
}

cwm::EpEncoding parse_ep(const std::string& mode) {
  return mode == "raw" ? cwm::EpEncoding::Raw : cwm::EpEncoding::LegalOnly;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& names) {
  return {names.begin(), names.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chess move-to-state benchmark toolkit"};
  app.require_subcommand(1);
  const unsigned default_workers = cwm::default_workers();

  // build
  auto* build = app.add_subcommand("build", "Replay PGN games into train/validation shards");
  std::string input = "-";
  cwm::BuildOptions bopt;
  std::string out_dir;
  std::string split_report;
  std::string id_mode = "segment";
  std::string ep_mode = "legal";
  bopt.workers = default_workers;
  build->add_option("--input", input, "PGN file, '-' for standard input")->capture_default_str();
  build->add_option("--out-dir", out_dir, "Output directory")->required();
  build->add_option("--shard-size", bopt.shard_size, "Games per shard")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--workers", bopt.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_option("--min-full-moves", bopt.min_full_moves, "Minimum completed full moves")->capture_default_str();
  build->add_option("--split-report", split_report, "Report path (default <out-dir>/build_report.tsv)");
  build->add_option("--game-id", id_mode, "Bytes hashed for the split")->check(CLI::IsMember({"segment", "site"}))->capture_default_str();
  build->add_option("--ep", ep_mode, "En passant label encoding")->check(CLI::IsMember({"legal", "raw"}))->capture_default_str();

  // randgen
  auto* randgen = app.add_subcommand("randgen", "Generate the uniform random-play test set");
  cwm::RandgenOptions ropt;
  std::string rand_out;
  std::string rand_ep = "legal";
  ropt.workers = default_workers;
  randgen->add_option("--seed", ropt.config.master_seed, "Master seed")->capture_default_str();
  randgen->add_option("--games", ropt.config.target_games, "Games to keep")->capture_default_str()->check(CLI::PositiveNumber);
  randgen->add_option("--out-dir", rand_out, "Output directory")->required();
  randgen->add_option("--min-full-moves", ropt.config.min_full_moves, "Minimum completed full moves")->capture_default_str();
  randgen->add_option("--max-plies", ropt.config.max_plies, "Safety cap; capped games are rejected")->capture_default_str();
  randgen->add_option("--shard-size", ropt.shard_size, "Games per shard")->capture_default_str()->check(CLI::PositiveNumber);
  randgen->add_option("--workers", ropt.workers, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  randgen->add_option("--ep", rand_ep, "En passant label encoding")->check(CLI::IsMember({"legal", "raw"}))->capture_default_str();

  // split
  auto* split = app.add_subcommand("split", "Print MD5 residue and split for game ids");
  std::vector<std::string> ids;
  split->add_option("ids", ids, "Game ids")->required();

  // coverage
  auto* cov = app.add_subcommand("coverage", "Packed move-id coverage of shard sets");
  std::vector<std::string> cov_shards, cov_against;
  std::string cov_report;
  cov->add_option("--shards", cov_shards, "Shard files")->required();
  cov->add_option("--against", cov_against, "Second shard set to compare with");
  cov->add_option("--report", cov_report, "Write the report here as well");

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Print shard header and sample games");
  std::string inspect_path;
  std::size_t inspect_games = 2;
  inspect->add_option("shard", inspect_path, "Shard file")->required();
  inspect->add_option("--games", inspect_games, "Games to print")->capture_default_str();

  // predict
  auto* predict = app.add_subcommand("predict", "Write reference predictions for a shard");
  std::string pred_shard, pred_out, pred_kind = "oracle";
  std::size_t pred_k = 1;
  predict->add_option("--shard", pred_shard, "Shard file")->required();
  predict->add_option("--out", pred_out, "Prediction file")->required();
  predict->add_option("--kind", pred_kind, "Predictor")->check(CLI::IsMember({"oracle", "lag", "amnesiac"}))->capture_default_str();
  predict->add_option("--k", pred_k, "Lag for --kind lag")->capture_default_str()->check(CLI::PositiveNumber);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score predictions against a shard");
  std::string eval_shard, eval_pred, eval_report;
  bool per_game_macro = false;
  unsigned eval_workers = default_workers;
  eval->add_option("--shard", eval_shard, "Reference shard")->required();
  eval->add_option("--predictions", eval_pred, "Prediction file")->required();
  eval->add_option("--report", eval_report, "Machine-readable report path");
  eval->add_flag("--per-game-macro", per_game_macro, "Headline cross-entropy as per-game macro average");
  eval->add_option("--workers", eval_workers, "Worker threads")->check(CLI::PositiveNumber);

  // selfcheck
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the built-in consistency checks");
  int selfcheck_depth = 4;
  selfcheck->add_option("--perft-depth", selfcheck_depth, "Deepest perft level (1-5)")->capture_default_str();

  // perft
  auto* perft_cmd = app.add_subcommand("perft", "Count legal-move tree leaves");
  std::string perft_fen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";
  int perft_depth = 4;
  perft_cmd->add_option("--fen", perft_fen, "Position")->capture_default_str();
  perft_cmd->add_option("--depth", perft_depth, "Depth")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      bopt.out_dir = out_dir;
      bopt.id_mode = id_mode == "site" ? cwm::GameIdMode::FullSite : cwm::GameIdMode::SiteSegment;
      bopt.ep = parse_ep(ep_mode);
      cwm::BuildReport report;
      if (input == "-") {
        report = cwm::build_shards(std::cin, bopt);
      } else {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw Error(ErrorCode::Io, "cannot open " + input);
        report = cwm::build_shards(in, bopt);
      }
      std::ostringstream text;
      cwm::write_build_report(text, report);
      write_text(split_report.empty() ? (bopt.out_dir / "build_report.tsv").string() : split_report, text.str());
      std::printf("read %zu games: kept %zu (train %zu, validation %zu = %.2f%%), too short %zu, skipped %zu\n",
                  report.games_read, report.kept(), report.train, report.validation,
                  100.0 * report.validation_fraction(), report.too_short, report.skipped.size());
      if (!report.skipped.empty()) std::fprintf(stderr, "warning\t%zu games skipped\n", report.skipped.size());
      if (report.kept() == 0) std::printf("no game passed the filters; no shards written\n");
    } else if (*randgen) {
      ropt.out_dir = rand_out;
      ropt.config.ep = parse_ep(rand_ep);
      const auto out = cwm::run_randgen(ropt);
      std::printf("kept %zu games from %zu seeds (rejected %zu); %zu shard(s), manifest %s\n", out.set.accepted,
                  out.set.manifest.size(), out.set.rejected, out.shards.size(), out.manifest.string().c_str());
    } else if (*split) {
      for (const auto& id : ids) {
        std::printf("%s\t%u\t%s\n", id.c_str(), cwm::split_residue(id),
                    cwm::split_of(id) == cwm::Split::Validation ? "validation" : "train");
      }
    } else if (*cov) {
      const auto shards = to_paths(cov_shards);
      const auto against = to_paths(cov_against);
      std::ostringstream text;
      cwm::write_coverage_report(text, cwm::coverage(shards, against));
      std::cout << text.str();
      if (!cov_report.empty()) write_text(cov_report, text.str());
    } else if (*inspect) {
      cwm::inspect_shard(std::cout, inspect_path, inspect_games);
    } else if (*predict) {
      const auto shard = cwm::read_shard(std::filesystem::path(pred_shard));
      cwm::PredictionSet set;
      if (pred_kind == "oracle") set = cwm::oracle_predict(shard.games);
      else if (pred_kind == "lag") set = cwm::lagk_predict(shard.games, pred_k);
      else set = cwm::amnesiac_predict(shard.games);
      cwm::write_predictions(std::filesystem::path(pred_out), set);
    } else if (*eval) {
      const auto shard = cwm::read_shard(std::filesystem::path(eval_shard));
      const auto preds = cwm::read_predictions(std::filesystem::path(eval_pred));
      const auto report = cwm::evaluate(shard.games, preds, eval_workers);
      if (per_game_macro) {
        std::printf("headline cross-entropy (per-game macro) %.6f\n", report.cross_entropy_macro);
      }
      cwm::print_summary(std::cout, report);
      if (!eval_report.empty()) {
        std::ostringstream text;
        cwm::write_report(text, report);
        write_text(eval_report, text.str());
      }
    } else if (*selfcheck) {
      cwm::SelfcheckOptions options;
      options.perft_depth = selfcheck_depth;
      bool ok = true;
      for (const auto& r : cwm::run_selfcheck(options)) {
        std::printf("%-12s %s  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.detail.c_str());
        ok &= r.passed;
      }
      if (!ok) {
        std::fprintf(stderr, "error\tSelfcheck\tone or more checks failed\n");
        return 1;
      }
    } else if (*perft_cmd) {
      const auto board = cwm::Board::from_fen(perft_fen);
      std::printf("%llu\n", static_cast<unsigned long long>(cwm::perft(board, perft_depth)));
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error\t%s\t%s\n", std::string(cwm::to_string(e.code())).c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error\tInternal\t%s\n", e.what());
    return 2;
  }
  return 0;
}
