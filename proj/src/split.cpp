#include "cwm/split.hpp"

#include <openssl/evp.h>

#include "cwm/error.hpp"

namespace cwm {

std::array<std::uint8_t, 16> md5_digest(std::string_view bytes) {
  std::array<std::uint8_t, 16> out{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), out.data(), &len, EVP_md5(), nullptr) != 1 || len != out.size()) {
    throw Error(ErrorCode::Io, "MD5 digest failed");
  }
  return out;
}

std::uint32_t split_residue(std::string_view game_id) {
  std::uint32_t r = 0;
  for (std::uint8_t byte : md5_digest(game_id)) r = (r * 256 + byte) % kSplitModulus;
  return r;
}

Split split_of(std::string_view game_id) {
  return split_residue(game_id) < kValidationThreshold ? Split::Validation : Split::Train;
}

}  // namespace cwm
