#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tiercrypt/keystage.hpp"

using namespace tiercrypt;

namespace {

Tier1Params scalar_params(const BigInt& salt, const BigInt& factor,
                          PackMode pack = PackMode::PAPER_VARIABLE) {
  Tier1Params p;
  p.mode = Tier1Mode::PAPER_SCALAR;
  p.salt = salt;
  p.scalar_factor = factor;
  p.pack_mode = pack;
  return p;
}

Tier1Params textbook_params(const BigInt& salt) {
  Tier1Params p;
  p.mode = Tier1Mode::TEXTBOOK_RSA;
  p.salt = salt;
  return p;
}

} // namespace

TEST_CASE("make_keypair on the reference primes") {
  KeyMaterial key = make_keypair(11, 13, 7, "toy");
  CHECK(key.n == 143);
  CHECK(key.phi == 120);
  CHECK(key.e == 103);
  CHECK(key.e == oracles::brute_inverse(7, 120));
  CHECK(key.e * key.d % key.phi == 1);
  CHECK(key.bits == 4);
}

TEST_CASE("make_keypair rejects the broken exponent and degenerate inputs") {
  // d = 3 shares a factor with phi = 120, so no public exponent exists
  CHECK_THROWS_WITH_AS(make_keypair(11, 13, 3), doctest::Contains("ERR_NOT_COPRIME"), Error);
  CHECK_THROWS_WITH_AS(make_keypair(11, 11, 7), doctest::Contains("ERR_BAD_KEY"), Error);
  CHECK_THROWS_WITH_AS(make_keypair(15, 13, 7), doctest::Contains("ERR_NOT_PRIME"), Error);
  CHECK_THROWS_AS(make_keypair(11, 13, 1), Error);
  CHECK_THROWS_AS(make_keypair(11, 13, 120), Error);
}

TEST_CASE("generate_keypair") {
  KeyMaterial key = generate_keypair(64, "unit-seed", "k64");
  CHECK(key.bits == 64);
  CHECK(bit_length(key.p) == 64);
  CHECK(bit_length(key.q) == 64);
  CHECK(key.p != key.q);
  CHECK(key.n == key.p * key.q);
  CHECK(key.phi == (key.p - 1) * (key.q - 1));
  CHECK(key.e * key.d % key.phi == 1);

  KeyMaterial again = generate_keypair(64, "unit-seed", "k64");
  CHECK(again.n == key.n);
  CHECK(again.d == key.d);
}

TEST_CASE("ascii_pack") {
  CHECK(ascii_pack("HELLO", PackMode::PAPER_VARIABLE) == "7269767679");
  CHECK(ascii_pack("HELLO", PackMode::FIXED_WIDTH3) == "072069076076079");
  CHECK(ascii_pack("", PackMode::FIXED_WIDTH3) == "");
  CHECK(ascii_pack("\x07", PackMode::FIXED_WIDTH3) == "007");

  // variable packing is demonstrably not injective
  std::string a = {7, 27};
  std::string b = {72, 7};
  CHECK(ascii_pack(a, PackMode::PAPER_VARIABLE) == "727");
  CHECK(ascii_pack(b, PackMode::PAPER_VARIABLE) == "727");
  CHECK(ascii_pack(a, PackMode::FIXED_WIDTH3) != ascii_pack(b, PackMode::FIXED_WIDTH3));

  // fixed-width packing is injective: distinct inputs, distinct outputs
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    auto xs = oracles::random_bytes(rng, 1 + rng() % 12);
    auto ys = oracles::random_bytes(rng, 1 + rng() % 12);
    std::string x(xs.begin(), xs.end()), y(ys.begin(), ys.end());
    if (x != y)
      CHECK(ascii_pack(x, PackMode::FIXED_WIDTH3) != ascii_pack(y, PackMode::FIXED_WIDTH3));
  }
}

TEST_CASE("paper_scalar mode reproduces the reference chain") {
  auto params = scalar_params(34, 40);
  const BigInt m("7269767679");
  CHECK(m * params.salt == BigInt("247172101086"));
  CHECK(tier1_encrypt(m, nullptr, params) == BigInt("9886884043440"));
  CHECK(tier1_decrypt(BigInt("9886884043440"), nullptr, params) == m);
  CHECK_THROWS_WITH_AS(tier1_decrypt(BigInt("9886884043441"), nullptr, params),
                       doctest::Contains("ERR_NOT_DIVISIBLE"), Error);

  auto identity = scalar_params(1, 1);
  CHECK(tier1_encrypt(12345, nullptr, identity) == 12345);
  CHECK(tier1_decrypt(12345, nullptr, identity) == 12345);
}

TEST_CASE("paper_scalar is linear, not encryption") {
  auto params = scalar_params(34, 40);
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    BigInt a = rng() % 1000000, b = rng() % 1000000;
    CHECK(tier1_encrypt(a, nullptr, params) + tier1_encrypt(b, nullptr, params) ==
          tier1_encrypt(a + b, nullptr, params));
  }
}

TEST_CASE("textbook mode on the toy key") {
  // d = 103 makes the public exponent 7; 5^7 mod 143 = 47
  KeyMaterial key = make_keypair(11, 13, 103);
  CHECK(key.e == 7);
  auto params = textbook_params(1);
  CHECK(tier1_encrypt(5, &key, params) == 47);
  CHECK(tier1_encrypt(5, &key, params) == oracles::naive_modexp(5, 7, 143));
  CHECK(tier1_decrypt(47, &key, params) == 5);

  CHECK_THROWS_WITH_AS(tier1_encrypt(143, &key, params),
                       doctest::Contains("ERR_BLOCK_TOO_LARGE"), Error);
  auto salted = textbook_params(10);
  CHECK_THROWS_AS(tier1_encrypt(20, &key, salted), Error); // 200 >= 143
  CHECK(tier1_decrypt(tier1_encrypt(14, &key, salted), &key, salted) == 14);
}

TEST_CASE("parameter discipline") {
  Tier1Params missing_factor;
  missing_factor.mode = Tier1Mode::PAPER_SCALAR;
  missing_factor.salt = 2;
  CHECK_THROWS_AS(tier1_encrypt(1, nullptr, missing_factor), Error);

  Tier1Params stray_factor;
  stray_factor.mode = Tier1Mode::TEXTBOOK_RSA;
  stray_factor.salt = 1;
  stray_factor.scalar_factor = 40;
  KeyMaterial key = make_keypair(11, 13, 103);
  CHECK_THROWS_AS(tier1_encrypt(1, &key, stray_factor), Error);

  Tier1Params zero_salt;
  zero_salt.mode = Tier1Mode::TEXTBOOK_RSA;
  zero_salt.salt = 0;
  CHECK_THROWS_AS(tier1_encrypt(1, &key, zero_salt), Error);

  CHECK_THROWS_AS(tier1_encrypt(1, nullptr, textbook_params(1)), Error);
}

TEST_CASE("roundtrip across key sizes") {
  std::mt19937_64 rng(43);
  for (unsigned bits : {64u, 256u}) {
    KeyMaterial key = generate_keypair(bits, "rt-" + std::to_string(bits));
    for (int i = 0; i < 100; ++i) {
      BigInt salt = 1 + rng() % 1000;
      auto params = textbook_params(salt);
      BigInt limit = key.n / salt;
      BigInt m = BigInt(rng()) % limit;
      CHECK(tier1_decrypt(tier1_encrypt(m, &key, params), &key, params) == m);
    }
  }
  for (int i = 0; i < 1000; ++i) {
    auto params = scalar_params(1 + rng() % 1000, 1 + rng() % 1000);
    BigInt m = rng();
    CHECK(tier1_decrypt(tier1_encrypt(m, nullptr, params), nullptr, params) == m);
  }
}

TEST_CASE("chunk sizing keeps salted blocks under the modulus") {
  std::mt19937_64 rng(44);
  KeyMaterial key = generate_keypair(64, "chunk-seed");
  for (int i = 0; i < 200; ++i) {
    BigInt salt = 1 + rng() % 100000;
    std::size_t chunk = max_chunk_len(key, salt);
    CHECK(chunk >= 1);
    // largest m representable in `chunk` bytes still satisfies m*salt < n
    BigInt max_m = (BigInt(1) << (8 * chunk)) - 1;
    CHECK(max_m * salt < key.n);
  }
  CHECK_THROWS_AS(max_chunk_len(key, BigInt(1) << 200), Error);
}

TEST_CASE("key json roundtrip") {
  KeyMaterial key = generate_keypair(64, "json-seed", "kj");
  KeyMaterial back = key_from_json(key_to_json(key));
  CHECK(back.key_id == key.key_id);
  CHECK(back.p == key.p);
  CHECK(back.q == key.q);
  CHECK(back.n == key.n);
  CHECK(back.phi == key.phi);
  CHECK(back.e == key.e);
  CHECK(back.d == key.d);
  CHECK(back.bits == key.bits);

  CHECK_THROWS_AS(key_from_json("{}"), Error);
  CHECK_THROWS_AS(key_from_json("not json"), Error);
  // tampered field breaks the consistency check
  std::string j = key_to_json(key);
  auto pos = j.find("\"n\": \"");
  j[pos + 6] = j[pos + 6] == '9' ? '8' : '9';
  CHECK_THROWS_AS(key_from_json(j), Error);
}
