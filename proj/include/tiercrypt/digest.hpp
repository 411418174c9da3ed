#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tiercrypt {

using Sha256 = std::array<uint8_t, 32>;

Sha256 sha256(const uint8_t* data, std::size_t len);
Sha256 sha256(const std::vector<uint8_t>& data);
Sha256 sha256(const std::string& data);

std::string to_hex(const Sha256& digest);

/// Parses exactly 64 lowercase hex characters; returns false otherwise.
bool from_hex(const std::string& hex, Sha256& out);

} // namespace tiercrypt
