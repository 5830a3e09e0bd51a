#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "cwm/shardio.hpp"
#include "cwm/trajectory.hpp"

namespace cwm {

// Log-probability assigned by the built-in predictors to a wrong label.
inline constexpr float kLogProbFloor = -30.0f;
inline constexpr std::size_t kBinWidth = 20;

// Exact sum of non-negative float32 values. The result depends only on the
// multiset of addends, so reductions are order- and thread-independent.
class ExactSum {
 public:
  void add(float value);  // value >= 0, may be +inf
  void merge(const ExactSum& other);
  long double value() const;

 private:
  static constexpr int kLimbs = 5;  // 2^-149 .. 2^171
  std::array<std::uint64_t, kLimbs> limbs_{};
  bool infinite_ = false;
};

struct BinMetrics {
  std::size_t bin_start = 0;  // timestep index of the bin's first step
  std::size_t timesteps = 0;
  std::size_t exact = 0;
  std::size_t correct_labels = 0;

  double exact_rate() const;
  double labelwise_accuracy() const;
};

struct MetricReport {
  std::size_t games = 0;
  std::size_t timesteps = 0;
  std::size_t exact_timesteps = 0;
  std::size_t correct_labels = 0;
  std::size_t exact_games = 0;

  // Mean -ln p over every (timestep, label) pair of every game.
  double cross_entropy = 0.0;
  // Mean over games of the per-game normalised loss.
  double cross_entropy_macro = 0.0;
  double labelwise_accuracy = 1.0;
  double exact_state_rate = 1.0;
  double trajectory_exact_rate = 1.0;
  std::vector<BinMetrics> bins;  // [0,20), [20,40), ... by timestep index

  // No timesteps: every rate is 1.0 by convention.
  bool vacuous() const { return timesteps == 0; }
};

// Throws Error(Mismatch) when predictions do not cover exactly the shard's
// games (same ids, same lengths, same order) and Error(BadLogProb) for a
// positive or NaN log-probability.
MetricReport evaluate(std::span<const Trajectory> shard, const PredictionSet& predictions, unsigned workers = 1);

// key<TAB>value lines; bins as `bin<TAB>start<TAB>count<TAB>exact<TAB>labelwise`.
void write_report(std::ostream& out, const MetricReport& report);
void print_summary(std::ostream& out, const MetricReport& report);

// Reference predictors.
PredictionSet oracle_predict(std::span<const Trajectory> shard);
// Predicts s[max(0, t - k)] at step t.
PredictionSet lagk_predict(std::span<const Trajectory> shard, std::size_t k);
// Gold board and side labels; castling, ep and counters frozen at t = 0.
PredictionSet amnesiac_predict(std::span<const Trajectory> shard);

}  // namespace cwm
