#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tiercrypt/digest.hpp"
#include "tiercrypt/frame.hpp"

using namespace tiercrypt;

TEST_CASE("sha256 known vectors") {
  CHECK(to_hex(sha256(std::string(""))) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(to_hex(sha256(std::string("abc"))) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  Sha256 parsed;
  CHECK(from_hex("e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855", parsed));
  CHECK(parsed == sha256(std::string("")));
  CHECK_FALSE(from_hex("zz", parsed));
  CHECK_FALSE(from_hex(std::string(64, 'G'), parsed));
  CHECK_FALSE(from_hex(std::string(64, 'A'), parsed)); // uppercase is not canonical
}

TEST_CASE("frame layout for a one-char name and empty payload") {
  Bytes wire = frame_encode("a", Bytes{});
  REQUIRE(wire.size() == 49); // 4+1+1+2+1+8+0+32
  CHECK(wire[0] == 0x54);
  CHECK(wire[1] == 0x54);
  CHECK(wire[2] == 0x45);
  CHECK(wire[3] == 0x41);
  CHECK(wire[4] == 1);    // version
  CHECK(wire[5] == 0x01); // PUT
  CHECK(wire[6] == 0);
  CHECK(wire[7] == 1);
  CHECK(wire[8] == 'a');
  for (int i = 9; i < 17; ++i) CHECK(wire[i] == 0); // payload_len
  Sha256 empty_digest = sha256(Bytes{});
  CHECK(std::equal(empty_digest.begin(), empty_digest.end(), wire.begin() + 17));
}

TEST_CASE("payload_len field semantics") {
  Bytes payload(11 * 1024, 0xab);
  Bytes wire = frame_encode("f", payload);
  uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len = len << 8 | wire[9 + i];
  CHECK(len == 11264);
}

TEST_CASE("frame roundtrip") {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 1000; ++i) {
    Frame frame;
    frame.command = i % 3 == 0 ? FrameCommand::PUT : i % 3 == 1 ? FrameCommand::ACK
                                                                : FrameCommand::ERR;
    std::size_t name_len = rng() % 40;
    frame.name.resize(name_len);
    for (auto& c : frame.name) c = char('a' + rng() % 26);
    frame.payload = oracles::random_bytes(rng, rng() % 300);
    Frame back = frame_decode(frame_encode(frame));
    CHECK(back.command == frame.command);
    CHECK(back.name == frame.name);
    CHECK(back.payload == frame.payload);
  }
}

TEST_CASE("frame rejects") {
  Bytes good = frame_encode("name", Bytes{1, 2, 3});

  Bytes bad_magic = good;
  bad_magic[0] ^= 0xff;
  CHECK_THROWS_WITH_AS(frame_decode(bad_magic), doctest::Contains("ERR_BAD_MAGIC"), Error);

  Bytes bad_version = good;
  bad_version[4] = 9;
  CHECK_THROWS_AS(frame_decode(bad_version), Error);

  Bytes bad_command = good;
  bad_command[5] = 0x7f;
  CHECK_THROWS_AS(frame_decode(bad_command), Error);

  Bytes truncated(good.begin(), good.begin() + long(good.size()) - 40);
  CHECK_THROWS_WITH_AS(frame_decode(truncated), doctest::Contains("ERR_TRUNCATED"), Error);
  CHECK_THROWS_AS(frame_decode(Bytes{0x54, 0x54}), Error);

  Bytes corrupt_payload = good;
  corrupt_payload[8 + 4 + 8] ^= 0x01; // first payload byte
  CHECK_THROWS_WITH_AS(frame_decode(corrupt_payload), doctest::Contains("ERR_DIGEST_MISMATCH"),
                       Error);

  Bytes trailing = good;
  trailing.push_back(0);
  CHECK_THROWS_AS(frame_decode(trailing), Error);

  CHECK_THROWS_WITH_AS(frame_encode(std::string(70000, 'x'), Bytes{}),
                       doctest::Contains("ERR_NAME_TOO_LONG"), Error);

  Bytes big = frame_encode("x", Bytes(2048, 7));
  CHECK_THROWS_WITH_AS(frame_decode(big, 1024), doctest::Contains("ERR_PAYLOAD_TOO_LARGE"),
                       Error);
}
