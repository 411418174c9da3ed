#include "tiercrypt/error.hpp"

namespace tiercrypt {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ERR_BAD_MODULUS: return "ERR_BAD_MODULUS";
    case ErrorCode::ERR_NOT_COPRIME: return "ERR_NOT_COPRIME";
    case ErrorCode::ERR_NOT_PRIME: return "ERR_NOT_PRIME";
    case ErrorCode::ERR_BAD_KEY: return "ERR_BAD_KEY";
    case ErrorCode::ERR_BLOCK_TOO_LARGE: return "ERR_BLOCK_TOO_LARGE";
    case ErrorCode::ERR_NOT_DIVISIBLE: return "ERR_NOT_DIVISIBLE";
    case ErrorCode::ERR_BAD_BASE: return "ERR_BAD_BASE";
    case ErrorCode::ERR_BAD_DIGIT: return "ERR_BAD_DIGIT";
    case ErrorCode::ERR_BAD_VALUE: return "ERR_BAD_VALUE";
    case ErrorCode::ERR_UNALIGNED: return "ERR_UNALIGNED";
    case ErrorCode::ERR_INVALID_SYMBOL: return "ERR_INVALID_SYMBOL";
    case ErrorCode::ERR_BAD_SPEC: return "ERR_BAD_SPEC";
    case ErrorCode::ERR_INVALID_WAVEFORM: return "ERR_INVALID_WAVEFORM";
    case ErrorCode::ERR_INVALID_PAIR: return "ERR_INVALID_PAIR";
    case ErrorCode::ERR_AMBIGUOUS_MASK: return "ERR_AMBIGUOUS_MASK";
    case ErrorCode::ERR_NO_PREIMAGE: return "ERR_NO_PREIMAGE";
    case ErrorCode::ERR_RECIPE_INVALID: return "ERR_RECIPE_INVALID";
    case ErrorCode::ERR_ENVELOPE_INVALID: return "ERR_ENVELOPE_INVALID";
    case ErrorCode::ERR_DIGEST_MISMATCH: return "ERR_DIGEST_MISMATCH";
    case ErrorCode::ERR_NOT_FOUND: return "ERR_NOT_FOUND";
    case ErrorCode::ERR_DUPLICATE_ID: return "ERR_DUPLICATE_ID";
    case ErrorCode::ERR_BAD_ID: return "ERR_BAD_ID";
    case ErrorCode::ERR_IO: return "ERR_IO";
    case ErrorCode::ERR_NAME_TOO_LONG: return "ERR_NAME_TOO_LONG";
    case ErrorCode::ERR_BAD_MAGIC: return "ERR_BAD_MAGIC";
    case ErrorCode::ERR_TRUNCATED: return "ERR_TRUNCATED";
    case ErrorCode::ERR_PAYLOAD_TOO_LARGE: return "ERR_PAYLOAD_TOO_LARGE";
    case ErrorCode::ERR_CONNECTION: return "ERR_CONNECTION";
    case ErrorCode::ERR_REMOTE: return "ERR_REMOTE";
  }
  return "ERR_UNKNOWN";
}

} // namespace tiercrypt
