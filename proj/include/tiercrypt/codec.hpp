#pragma once

#include <optional>
#include <string>

#include "tiercrypt/error.hpp"

namespace tiercrypt {

// Line symbols are std::string over {'+','0','-'}; two-level schemes use only
// {'+','-'}. Bit strings are std::string over {'0','1'} as in radix.hpp.

enum class Scheme {
  B4B5,
  NRZ_L,
  NRZ_I,
  MANCHESTER,
  DIFF_MANCHESTER,
  AMI,
  PSEUDOTERNARY,
  B8ZS,
};

/// Exact scheme identifier as it appears in recipe files.
const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct CodecSpec {
  Scheme scheme = Scheme::B4B5;
  std::optional<char> initial_level;    // NRZ_I, DIFF_MANCHESTER: level before the first cell
  std::optional<char> initial_polarity; // AMI, PSEUDOTERNARY, B8ZS: polarity of the first pulse
};

/// Throws ERR_BAD_SPEC unless parameters are present exactly when the scheme
/// requires them and are '+' or '-'.
void validate_codec_spec(const CodecSpec& spec);

/// Each 4-bit nibble replaced by its 5-bit symbol. Throws ERR_UNALIGNED when
/// len(b) is not a multiple of 4.
std::string encode_4b5b(const std::string& bits);

/// Exact inverse. Throws ERR_UNALIGNED (len not a multiple of 5) or
/// ERR_INVALID_SYMBOL (5-bit group outside the 16-entry table).
std::string decode_4b5b(const std::string& bits);

std::string line_encode(const std::string& bits, const CodecSpec& spec);

/// Exact inverse of line_encode under the same spec. Strict: any symbol or
/// pattern a conforming encoder cannot emit throws ERR_INVALID_WAVEFORM.
std::string line_decode(const std::string& symbols, const CodecSpec& spec);

/// Fixed 2-bit serialization: '+' -> "01", '0' -> "00", '-' -> "10".
std::string symbols_to_bits(const std::string& symbols);

/// Inverse of symbols_to_bits; throws ERR_INVALID_PAIR on "11" or odd length.
std::string bits_to_symbols(const std::string& bits);

} // namespace tiercrypt
