#pragma once

#include <string>

#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

// Bit strings are std::string over {'0','1'}; length is explicit, so leading
// zeros are significant. Digit strings use the uppercase alphabet [0-9A-Z].

/// Most-significant-digit-first representation of x in `base` (2..36).
/// x = 0 yields "0"; otherwise no leading zeros. Throws ERR_BAD_BASE.
std::string int_to_digits(const BigInt& x, int base);

/// Positional value of s in `base`. Leading zeros are accepted and ignored.
/// Throws ERR_BAD_DIGIT for an empty string or any digit outside the base,
/// ERR_BAD_BASE for base outside 2..36.
BigInt digits_to_int(const std::string& s, int base);

/// Left-pads a bit string with '0' to the next multiple of k. Value-preserving.
std::string pad_to_multiple(const std::string& bits, std::size_t k);

} // namespace tiercrypt
