#include "cwm/evalkit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "cwm/error.hpp"
#include "cwm/parallel.hpp"

namespace cwm {

// ------------------------------------------------------------- ExactSum

void ExactSum::add(float value) {
  if (std::isinf(value)) {
    infinite_ = true;
    return;
  }
  const auto bits = std::bit_cast<std::uint32_t>(value) & 0x7FFFFFFFu;
  const std::uint32_t exponent = bits >> 23;
  std::uint64_t mantissa = bits & 0x7FFFFFu;
  // value = mantissa * 2^(shift - 149)
  int shift = 0;
  if (exponent != 0) {
    mantissa |= 0x800000u;
    shift = static_cast<int>(exponent) - 1;
  }
  const int limb = shift / 64;
  const int offset = shift % 64;
  std::uint64_t lo = mantissa << offset;
  std::uint64_t hi = offset == 0 ? 0 : mantissa >> (64 - offset);
  for (int i = limb; i < kLimbs && (lo || hi); ++i) {
    const std::uint64_t before = limbs_[i];
    limbs_[i] += lo;
    const std::uint64_t carry = limbs_[i] < before ? 1 : 0;
    lo = hi + carry;
    hi = lo < carry ? 1 : 0;
  }
}

void ExactSum::merge(const ExactSum& other) {
  infinite_ |= other.infinite_;
  std::uint64_t carry = 0;
  for (int i = 0; i < kLimbs; ++i) {
    const std::uint64_t a = limbs_[i];
    const std::uint64_t sum = a + other.limbs_[i];
    const std::uint64_t c1 = sum < a ? 1 : 0;
    limbs_[i] = sum + carry;
    const std::uint64_t c2 = limbs_[i] < sum ? 1 : 0;
    carry = c1 + c2;
  }
}

long double ExactSum::value() const {
  if (infinite_) return std::numeric_limits<long double>::infinity();
  long double total = 0.0L;
  for (int i = kLimbs - 1; i >= 0; --i) {
    total += std::ldexp(static_cast<long double>(limbs_[i]), 64 * i - 149);
  }
  return total;
}

// ------------------------------------------------------------- metrics

double BinMetrics::exact_rate() const {
  return timesteps == 0 ? 1.0 : static_cast<double>(exact) / static_cast<double>(timesteps);
}

double BinMetrics::labelwise_accuracy() const {
  return timesteps == 0 ? 1.0 : static_cast<double>(correct_labels) / static_cast<double>(timesteps * kNumLabels);
}

namespace {

struct GameStats {
  std::size_t timesteps = 0;
  std::size_t exact = 0;
  std::size_t correct = 0;
  std::vector<BinMetrics> bins;
  ExactSum nll;
};

GameStats score_game(const Trajectory& gold, const GamePrediction& pred) {
  GameStats s;
  s.timesteps = gold.states.size();
  s.bins.resize((s.timesteps + kBinWidth - 1) / kBinWidth);
  for (std::size_t b = 0; b < s.bins.size(); ++b) s.bins[b].bin_start = b * kBinWidth;
  for (std::size_t t = 0; t < s.timesteps; ++t) {
    std::size_t correct = 0;
    for (int j = 0; j < kNumLabels; ++j) {
      correct += pred.labels[t][j] == gold.states[t][j];
      const float lp = pred.log_probs[t][j];
      if (!(lp <= 0.0f)) {
        throw Error(ErrorCode::BadLogProb, "log-probability " + std::to_string(lp) + " for game " + gold.game_id +
                                               " step " + std::to_string(t) + " label " + std::to_string(j));
      }
      s.nll.add(-lp);
    }
    BinMetrics& bin = s.bins[t / kBinWidth];
    ++bin.timesteps;
    bin.correct_labels += correct;
    s.correct += correct;
    if (correct == kNumLabels) {
      ++bin.exact;
      ++s.exact;
    }
  }
  return s;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricReport evaluate(std::span<const Trajectory> shard, const PredictionSet& predictions, unsigned workers) {
  if (shard.size() != predictions.games.size()) {
    throw Error(ErrorCode::Mismatch, "shard has " + std::to_string(shard.size()) + " games, predictions have " +
                                         std::to_string(predictions.games.size()));
  }
  for (std::size_t g = 0; g < shard.size(); ++g) {
    const GamePrediction& p = predictions.games[g];
    if (p.game_id != shard[g].game_id || p.labels.size() != shard[g].states.size() ||
        p.log_probs.size() != shard[g].states.size()) {
      throw Error(ErrorCode::Mismatch, "prediction " + std::to_string(g) + " (" + p.game_id +
                                           ") does not match shard game " + shard[g].game_id);
    }
  }

  const auto stats = parallel_map(shard.size(), workers,
                                  [&](std::size_t g) { return score_game(shard[g], predictions.games[g]); });

  MetricReport r;
  r.games = shard.size();
  ExactSum total_nll;
  std::vector<long double> per_game;
  per_game.reserve(stats.size());
  for (const GameStats& s : stats) {
    r.timesteps += s.timesteps;
    r.exact_timesteps += s.exact;
    r.correct_labels += s.correct;
    r.exact_games += s.exact == s.timesteps;
    total_nll.merge(s.nll);
    per_game.push_back(s.nll.value() / static_cast<long double>(s.timesteps * kNumLabels));
    if (r.bins.size() < s.bins.size()) {
      for (std::size_t b = r.bins.size(); b < s.bins.size(); ++b) r.bins.push_back({b * kBinWidth, 0, 0, 0});
    }
    for (std::size_t b = 0; b < s.bins.size(); ++b) {
      r.bins[b].timesteps += s.bins[b].timesteps;
      r.bins[b].exact += s.bins[b].exact;
      r.bins[b].correct_labels += s.bins[b].correct_labels;
    }
  }
  r.labelwise_accuracy = ratio(r.correct_labels, r.timesteps * kNumLabels);
  r.exact_state_rate = ratio(r.exact_timesteps, r.timesteps);
  r.trajectory_exact_rate = ratio(r.exact_games, r.games);
  if (r.timesteps > 0) {
    r.cross_entropy = static_cast<double>(total_nll.value() / static_cast<long double>(r.timesteps * kNumLabels));
    // Summing in sorted order keeps the macro average independent of game order.
    std::sort(per_game.begin(), per_game.end());
    long double sum = 0.0L;
    for (long double v : per_game) sum += v;
    r.cross_entropy_macro = static_cast<double>(sum / static_cast<long double>(per_game.size()));
  }
  return r;
}

void write_report(std::ostream& out, const MetricReport& r) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "games\t" << r.games << '\n'
      << "timesteps\t" << r.timesteps << '\n'
      << "exact_timesteps\t" << r.exact_timesteps << '\n'
      << "exact_games\t" << r.exact_games << '\n'
      << "correct_labels\t" << r.correct_labels << '\n'
      << "cross_entropy\t" << num(r.cross_entropy) << '\n'
      << "cross_entropy_macro\t" << num(r.cross_entropy_macro) << '\n'
      << "labelwise_accuracy\t" << num(r.labelwise_accuracy) << '\n'
      << "exact_state_rate\t" << num(r.exact_state_rate) << '\n'
      << "trajectory_exact_rate\t" << num(r.trajectory_exact_rate) << '\n'
      << "vacuous\t" << (r.vacuous() ? 1 : 0) << '\n';
  for (const BinMetrics& b : r.bins) {
    out << "bin\t" << b.bin_start << '\t' << b.timesteps << '\t' << num(b.exact_rate()) << '\t'
        << num(b.labelwise_accuracy()) << '\n';
  }
}

void print_summary(std::ostream& out, const MetricReport& r) {
  char line[160];
  std::snprintf(line, sizeof line, "games %zu, timesteps %zu\n", r.games, r.timesteps);
  out << line;
  if (r.vacuous()) out << "warning: no timesteps; rates reported as 1.0 by convention\n";
  std::snprintf(line, sizeof line,
                "cross-entropy %.6f (per-game macro %.6f)\nlabelwise %.4f%%  exact-state %.4f%%  trajectory %.4f%%\n",
                r.cross_entropy, r.cross_entropy_macro, 100 * r.labelwise_accuracy, 100 * r.exact_state_rate,
                100 * r.trajectory_exact_rate);
  out << line;
  for (const BinMetrics& b : r.bins) {
    std::snprintf(line, sizeof line, "  [%4zu,%4zu) n=%-8zu exact %8.4f%%  labelwise %8.4f%%\n", b.bin_start,
                  b.bin_start + kBinWidth, b.timesteps, 100 * b.exact_rate(), 100 * b.labelwise_accuracy());
    out << line;
  }
}

namespace {

LogProbs score_against(const StateLabels& predicted, const StateLabels& gold) {
  LogProbs lp{};
  for (int j = 0; j < kNumLabels; ++j) lp[j] = predicted[j] == gold[j] ? 0.0f : kLogProbFloor;
  return lp;
}

template <typename Choose>
PredictionSet predict_with(std::span<const Trajectory> shard, Choose choose) {
  PredictionSet set;
  set.games.reserve(shard.size());
  for (const Trajectory& t : shard) {
    GamePrediction g;
    g.game_id = t.game_id;
    g.labels.reserve(t.states.size());
    g.log_probs.reserve(t.states.size());
    for (std::size_t step = 0; step < t.states.size(); ++step) {
      const StateLabels predicted = choose(t, step);
      g.labels.push_back(predicted);
      g.log_probs.push_back(score_against(predicted, t.states[step]));
    }
    set.games.push_back(std::move(g));
  }
  return set;
}

}  // namespace

PredictionSet oracle_predict(std::span<const Trajectory> shard) {
  return predict_with(shard, [](const Trajectory& t, std::size_t step) { return t.states[step]; });
}

PredictionSet lagk_predict(std::span<const Trajectory> shard, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::Usage, "lag must be at least 1");
  return predict_with(shard, [k](const Trajectory& t, std::size_t step) {
    return t.states[step >= k ? step - k : 0];
  });
}

PredictionSet amnesiac_predict(std::span<const Trajectory> shard) {
  return predict_with(shard, [](const Trajectory& t, std::size_t step) {
    StateLabels s = t.states[step];
    std::copy(t.states[0].begin() + kCastlingLabel, t.states[0].end(), s.begin() + kCastlingLabel);
    return s;
  });
}

}  // namespace cwm
