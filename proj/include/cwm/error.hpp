#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cwm {

enum class ErrorCode {
  IllegalMove,
  BadFen,
  SpecialToken,
  CounterOverflow,
  InconsistentLabels,
  StreamCorrupt,
  AmbiguousSan,
  NoMatchSan,
  IllegalGame,
  CapReached,
  BadMagic,
  BadVersion,
  ChecksumMismatch,
  TruncatedRecord,
  Mismatch,
  BadLogProb,
  Io,
  Usage,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the toolkit is reported through this type; the
// code is what callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cwm
