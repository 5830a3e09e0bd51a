#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/codec.hpp"

namespace cwm {

// Shard result codes.
enum class GameResult : std::uint8_t { WhiteWins = 0, BlackWins = 1, Draw = 2, Unknown = 3 };

std::string_view to_string(GameResult r);
GameResult parse_result(std::string_view text);  // anything unrecognised is Unknown

// Aligned move/state sequence: move_tokens[0] is START and states[t] is the
// state after the first t plies, so both have plies() + 1 entries.
struct Trajectory {
  std::string game_id;
  GameResult result = GameResult::Unknown;
  std::vector<MoveToken> move_tokens;
  std::vector<StateLabels> states;

  std::size_t plies() const { return move_tokens.empty() ? 0 : move_tokens.size() - 1; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Replays moves from the initial position. Throws Error(IllegalMove) on the
// first move that is not legal in context.
Trajectory replay_moves(std::string game_id, GameResult result, std::span<const Move> moves,
                        EpEncoding ep = EpEncoding::LegalOnly);

// Keeps games with at least `min_full_moves` completed full moves, i.e.
// 2 * min_full_moves plies.
bool passes_length_filter(const Trajectory& t, int min_full_moves = 10);

}  // namespace cwm
