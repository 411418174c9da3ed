#pragma once

#include <cstdint>
#include <string>

#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

// Wire unit:
//   magic "TTEA" | version u8 | command u8 | name_len u16be | name
//   | payload_len u64be | payload | sha256(payload)
inline constexpr uint8_t kFrameMagic[4] = {0x54, 0x54, 0x45, 0x41};
inline constexpr uint8_t kFrameVersion = 1;
inline constexpr uint64_t kDefaultMaxPayload = 256ull << 20;

enum class FrameCommand : uint8_t { PUT = 0x01, ACK = 0x02, ERR = 0x03 };

struct Frame {
  FrameCommand command = FrameCommand::PUT;
  std::string name;
  Bytes payload;
};

/// Deterministic byte layout. Throws ERR_NAME_TOO_LONG past 65535 name bytes.
Bytes frame_encode(const Frame& frame);
Bytes frame_encode(const std::string& name, const Bytes& payload); // PUT

/// Validates magic, version, digest, and exact length. Throws ERR_BAD_MAGIC,
/// ERR_TRUNCATED, ERR_PAYLOAD_TOO_LARGE, or ERR_DIGEST_MISMATCH.
Frame frame_decode(const Bytes& wire, uint64_t max_payload = kDefaultMaxPayload);

} // namespace tiercrypt
