#include "tiercrypt/frame.hpp"

#include <cstring>

#include "tiercrypt/digest.hpp"
#include "tiercrypt/error.hpp"

namespace tiercrypt {

namespace {

void put_u16be(Bytes& out, uint16_t v) {
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}

void put_u64be(Bytes& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(uint8_t(v >> shift));
}

uint16_t get_u16be(const uint8_t* p) { return uint16_t(p[0]) << 8 | p[1]; }

uint64_t get_u64be(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | p[i];
  return v;
}

} // namespace

Bytes frame_encode(const Frame& frame) {
  if (frame.name.size() > 0xffff)
    throw Error(ErrorCode::ERR_NAME_TOO_LONG,
                std::to_string(frame.name.size()) + " bytes, limit is 65535");
  Bytes out;
  out.reserve(48 + frame.name.size() + frame.payload.size());
  out.insert(out.end(), kFrameMagic, kFrameMagic + 4);
  out.push_back(kFrameVersion);
  out.push_back(uint8_t(frame.command));
  put_u16be(out, uint16_t(frame.name.size()));
  out.insert(out.end(), frame.name.begin(), frame.name.end());
  put_u64be(out, frame.payload.size());
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  Sha256 digest = sha256(frame.payload);
  out.insert(out.end(), digest.begin(), digest.end());
  return out;
}

Bytes frame_encode(const std::string& name, const Bytes& payload) {
  return frame_encode(Frame{FrameCommand::PUT, name, payload});
}

Frame frame_decode(const Bytes& wire, uint64_t max_payload) {
  if (wire.size() < 8) throw Error(ErrorCode::ERR_TRUNCATED, "frame shorter than fixed header");
  if (std::memcmp(wire.data(), kFrameMagic, 4) != 0)
    throw Error(ErrorCode::ERR_BAD_MAGIC, "frame does not start with TTEA");
  if (wire[4] != kFrameVersion)
    throw Error(ErrorCode::ERR_BAD_MAGIC, "unsupported frame version " + std::to_string(wire[4]));
  Frame frame;
  switch (wire[5]) {
    case 0x01: frame.command = FrameCommand::PUT; break;
    case 0x02: frame.command = FrameCommand::ACK; break;
    case 0x03: frame.command = FrameCommand::ERR; break;
    default:
      throw Error(ErrorCode::ERR_BAD_MAGIC, "unknown command " + std::to_string(wire[5]));
  }
  const uint16_t name_len = get_u16be(wire.data() + 6);
  std::size_t off = 8;
  if (wire.size() < off + name_len + 8)
    throw Error(ErrorCode::ERR_TRUNCATED, "frame ends inside name or length field");
  frame.name.assign(wire.begin() + off, wire.begin() + off + name_len);
  off += name_len;
  const uint64_t payload_len = get_u64be(wire.data() + off);
  off += 8;
  if (payload_len > max_payload)
    throw Error(ErrorCode::ERR_PAYLOAD_TOO_LARGE,
                std::to_string(payload_len) + " bytes exceeds the configured maximum");
  if (wire.size() < off + payload_len + 32)
    throw Error(ErrorCode::ERR_TRUNCATED, "frame ends inside payload or digest");
  if (wire.size() > off + payload_len + 32)
    throw Error(ErrorCode::ERR_BAD_VALUE, "trailing bytes after frame");
  frame.payload.assign(wire.begin() + off, wire.begin() + off + payload_len);
  Sha256 expect = sha256(frame.payload);
  if (!std::equal(expect.begin(), expect.end(), wire.begin() + off + payload_len))
    throw Error(ErrorCode::ERR_DIGEST_MISMATCH, "payload digest does not match");
  return frame;
}

} // namespace tiercrypt
