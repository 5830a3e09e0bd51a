#include "cwm/trajectory.hpp"

namespace cwm {

std::string_view to_string(GameResult r) {
  switch (r) {
    case GameResult::WhiteWins: return "1-0";
    case GameResult::BlackWins: return "0-1";
    case GameResult::Draw: return "1/2-1/2";
    case GameResult::Unknown: break;
  }
  return "*";
}

GameResult parse_result(std::string_view text) {
  if (text == "1-0") return GameResult::WhiteWins;
  if (text == "0-1") return GameResult::BlackWins;
  if (text == "1/2-1/2") return GameResult::Draw;
  return GameResult::Unknown;
}

Trajectory replay_moves(std::string game_id, GameResult result, std::span<const Move> moves, EpEncoding ep) {
  Trajectory t;
  t.game_id = std::move(game_id);
  t.result = result;
  t.move_tokens.reserve(moves.size() + 1);
  t.states.reserve(moves.size() + 1);
  Position pos = Position::initial();
  t.move_tokens.push_back(kStartToken);
  t.states.push_back(encode_state(pos.board(), ep));
  for (const Move& m : moves) {
    pos.apply(m);
    t.move_tokens.push_back(encode_move(m));
    t.states.push_back(encode_state(pos.board(), ep));
  }
  return t;
}

bool passes_length_filter(const Trajectory& t, int min_full_moves) {
  return t.plies() >= static_cast<std::size_t>(2 * min_full_moves);
}

}  // namespace cwm
