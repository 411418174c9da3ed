#include "tiercrypt/digest.hpp"

#include <openssl/evp.h>

#include "tiercrypt/error.hpp"

namespace tiercrypt {

Sha256 sha256(const uint8_t* data, std::size_t len) {
  Sha256 out{};
  unsigned out_len = 0;
  if (EVP_Digest(data, len, out.data(), &out_len, EVP_sha256(), nullptr) != 1 || out_len != 32)
    throw Error(ErrorCode::ERR_IO, "SHA-256 computation failed");
  return out;
}

Sha256 sha256(const std::vector<uint8_t>& data) { return sha256(data.data(), data.size()); }

Sha256 sha256(const std::string& data) {
  return sha256(reinterpret_cast<const uint8_t*>(data.data()), data.size());
}

std::string to_hex(const Sha256& digest) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (uint8_t b : digest) {
    out.push_back(hex[b >> 4]);
    out.push_back(hex[b & 0x0f]);
  }
  return out;
}

bool from_hex(const std::string& hex, Sha256& out) {
  if (hex.size() != 64) return false;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < 32; ++i) {
    int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return false;
    out[i] = uint8_t(hi << 4 | lo);
  }
  return true;
}

} // namespace tiercrypt
