#include "test_support.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cwm/parallel.hpp"
#include "cwm/rng.hpp"
#include "cwm/san.hpp"

namespace cwm::test {

namespace fs = std::filesystem;

fs::path data_dir() { return fs::path(CWM_TEST_DATA_DIR); }

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TempDir::TempDir(std::string_view tag) {
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path p = fs::temp_directory_path() / ("cwm-" + std::string(tag) + "-" + std::to_string(rd()));
    if (fs::create_directory(p)) {
      path_ = p;
      return;
    }
  }
  throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<Move> random_playout(std::uint64_t seed, std::size_t max_plies) {
  std::mt19937_64 rng(seed);
  Position pos = Position::initial();
  std::vector<Move> moves;
  while (moves.size() < max_plies) {
    const auto legal = pos.board().legal_moves();
    if (termination_status(pos, !legal.empty()) != Termination::Ongoing) break;
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    const Move m = legal[pick(rng)];
    pos.apply_trusted(m);
    moves.push_back(m);
  }
  return moves;
}

Trajectory random_trajectory(std::uint64_t seed, std::size_t max_plies) {
  const auto moves = random_playout(seed, max_plies);
  return replay_moves("mt-" + std::to_string(seed), GameResult::Draw, moves);
}

std::vector<RawGame> read_all_games(std::string_view pgn_text) {
  std::istringstream in{std::string(pgn_text)};
  PgnReader reader(in);
  std::vector<RawGame> out;
  while (auto g = reader.next()) out.push_back(std::move(*g));
  return out;
}

std::vector<ExpectedRow> load_expected(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<ExpectedRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find('\t');
    const auto b = line.find('\t', a + 1);
    rows.push_back({line.substr(0, a), std::stoul(line.substr(a + 1, b - a - 1)), line.substr(b + 1)});
  }
  return rows;
}

namespace {

constexpr std::string_view kIdAlphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

std::string synthetic_id(Xoshiro256StarStar& rng) {
  std::string id(8, ' ');
  for (auto& c : id) c = kIdAlphabet[rng.below(kIdAlphabet.size())];
  return id;
}

double move_weight(const Board& b, const Move& m, std::size_t ply) {
  double w = 1.0;
  const PieceType moving = type_of(b.at(m.src));
  if (b.is_capture(m)) w *= 4.0;
  if (b.is_castling(m)) w *= 8.0;
  if (m.promo == Promo::Queen) w *= 6.0;
  if (moving == PieceType::Pawn && ply < 16) {
    const int f = file_of(m.tgt);
    if (f >= 2 && f <= 5) w *= 3.0;
  }
  if (moving == PieceType::King && ply < 40 && !b.is_castling(m)) w *= 0.2;
  Board next = b;
  next.play(m);
  if (next.in_check()) w *= 2.0;
  return w;
}

std::string synthetic_game(std::uint64_t seed, std::size_t index) {
  Xoshiro256StarStar rng(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  const std::string id = synthetic_id(rng);
  // Mostly full-length games, a few very short ones (early resignations).
  const std::size_t target = rng.below(100) < 6 ? 4 + rng.below(16) : 24 + rng.below(200);

  Position pos = Position::initial();
  std::ostringstream moves;
  std::size_t ply = 0;
  Termination status = Termination::Ongoing;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (ply < target) {
    const auto legal = pos.board().legal_moves();
    status = termination_status(pos, !legal.empty());
    if (status != Termination::Ongoing) break;
    std::vector<double> weights;
    weights.reserve(legal.size());
    double total = 0.0;
    for (const Move& m : legal) total += weights.emplace_back(move_weight(pos.board(), m, ply));
    double r = unit(rng) * total;
    std::size_t pick = 0;
    while (pick + 1 < legal.size() && r >= weights[pick]) r -= weights[pick++];
    const Move m = legal[pick];
    if (ply % 2 == 0) moves << (ply / 2 + 1) << ". ";
    moves << move_to_san(pos.board(), m) << " { [%clk 0:0" << (rng.below(9) + 1) << ":" << (10 + rng.below(50))
          << "] } ";
    pos.apply_trusted(m);
    ++ply;
  }
  if (status == Termination::Ongoing) status = termination_status(pos);

  std::string result = "1/2-1/2";
  if (status == Termination::Checkmate) {
    result = pos.board().side_to_move() == Color::White ? "0-1" : "1-0";
  } else if (status == Termination::Ongoing) {
    const auto r = rng.below(3);
    result = r == 0 ? "1-0" : r == 1 ? "0-1" : "1/2-1/2";
  }

  std::ostringstream out;
  out << "[Event \"Rated Blitz game\"]\n"
      << "[Site \"https://lichess.org/" << id << "\"]\n"
      << "[White \"w" << index << "\"]\n"
      << "[Black \"b" << index << "\"]\n"
      << "[Result \"" << result << "\"]\n\n"
      << moves.str() << result << "\n\n";
  return out.str();
}

}  // namespace

void write_synthetic_pgn(std::ostream& out, std::size_t games, std::uint64_t seed, unsigned workers) {
  constexpr std::size_t kChunk = 2048;
  for (std::size_t base = 0; base < games; base += kChunk) {
    const std::size_t n = std::min(kChunk, games - base);
    const auto texts = parallel_map(n, workers, [&](std::size_t i) { return synthetic_game(seed, base + i); });
    for (const auto& t : texts) out << t;
  }
}

}  // namespace cwm::test
