#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace cwm {

enum class Split : std::uint8_t { Train, Validation };

inline constexpr std::uint32_t kSplitModulus = 10000;
inline constexpr std::uint32_t kValidationThreshold = 50;

std::array<std::uint8_t, 16> md5_digest(std::string_view bytes);

// MD5 of the UTF-8 game id read as a big-endian 128-bit integer, mod 10000.
std::uint32_t split_residue(std::string_view game_id);

// Validation iff split_residue(game_id) < 50, i.e. about 0.5% of ids.
Split split_of(std::string_view game_id);

}  // namespace cwm
