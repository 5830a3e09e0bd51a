#pragma once

#include <string>
#include <string_view>

#include "cwm/position.hpp"

namespace cwm {

// Resolves SAN text (piece letter, disambiguators, capture marker, promotion,
// O-O / O-O-O) to the unique legal move it denotes. Check, mate and
// annotation suffixes are ignored. Throws Error(AmbiguousSan) or
// Error(NoMatchSan).
Move san_to_move(const Board& board, std::string_view san);

// Canonical SAN with minimal disambiguation and a +/# suffix. The move must
// be legal in `board`.
std::string move_to_san(const Board& board, const Move& move);

}  // namespace cwm
