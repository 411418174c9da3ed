#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tiercrypt/digest.hpp"
#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

// Ciphertext container. Masked block values can be negative, so each block
// carries an explicit sign; magnitudes travel as decimal strings.
struct MaskedEnvelope {
  struct Block {
    char sign = '+';
    std::string magnitude;     // canonical decimal, no leading zeros except "0"
    std::size_t plain_len = 0; // plaintext bytes this block restores to
  };

  unsigned format_version = 1;
  std::string recipe_id;
  std::string key_id;
  std::size_t chunk_len = 0;
  std::size_t original_len = 0;
  std::string digest_hex; // SHA-256 of the plaintext, 64 lowercase hex chars
  std::vector<Block> blocks;
};

std::string envelope_to_json(const MaskedEnvelope& env);

/// Strict parse: schema violations, non-canonical numbers, bad hex, or a
/// block-length sum that disagrees with original_len all raise
/// ERR_ENVELOPE_INVALID. parse(serialize(e)) == e and re-serialization is
/// byte-exact.
MaskedEnvelope envelope_from_json(const std::string& text);

} // namespace tiercrypt
