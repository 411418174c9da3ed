#pragma once

#include <stdexcept>
#include <string>

namespace tiercrypt {

enum class ErrorCode {
  ERR_BAD_MODULUS,
  ERR_NOT_COPRIME,
  ERR_NOT_PRIME,
  ERR_BAD_KEY,
  ERR_BLOCK_TOO_LARGE,
  ERR_NOT_DIVISIBLE,
  ERR_BAD_BASE,
  ERR_BAD_DIGIT,
  ERR_BAD_VALUE,
  ERR_UNALIGNED,
  ERR_INVALID_SYMBOL,
  ERR_BAD_SPEC,
  ERR_INVALID_WAVEFORM,
  ERR_INVALID_PAIR,
  ERR_AMBIGUOUS_MASK,
  ERR_NO_PREIMAGE,
  ERR_RECIPE_INVALID,
  ERR_ENVELOPE_INVALID,
  ERR_DIGEST_MISMATCH,
  ERR_NOT_FOUND,
  ERR_DUPLICATE_ID,
  ERR_BAD_ID,
  ERR_IO,
  ERR_NAME_TOO_LONG,
  ERR_BAD_MAGIC,
  ERR_TRUNCATED,
  ERR_PAYLOAD_TOO_LARGE,
  ERR_CONNECTION,
  ERR_REMOTE,
};

const char* code_name(ErrorCode c);

/// Exception carrying a stable error code; what() is "ERR_X: detail".
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

private:
  ErrorCode code_;
  std::string detail_;
};

} // namespace tiercrypt
