#pragma once

#include <optional>
#include <string>

#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

struct KeyMaterial {
  std::string key_id;
  BigInt p, q, n, phi, e, d;
  unsigned bits = 0; // bit size of each prime, per the modulus-size convention n ~ 2*bits
};

enum class Tier1Mode { TEXTBOOK_RSA, PAPER_SCALAR };
enum class PackMode { PAPER_VARIABLE, FIXED_WIDTH3 };

const char* tier1_mode_name(Tier1Mode m);
std::optional<Tier1Mode> tier1_mode_from_name(const std::string& name);
const char* pack_mode_name(PackMode m);
std::optional<PackMode> pack_mode_from_name(const std::string& name);

struct Tier1Params {
  Tier1Mode mode = Tier1Mode::TEXTBOOK_RSA;
  BigInt salt = 1;                      // operator-chosen multiplier, >= 1
  std::optional<BigInt> scalar_factor;  // present iff mode == PAPER_SCALAR
  PackMode pack_mode = PackMode::FIXED_WIDTH3;
};

/// Builds key material from chosen primes and decryption exponent d;
/// e = d^-1 mod phi. Throws ERR_NOT_PRIME, ERR_BAD_KEY (p = q or d out of
/// range), ERR_NOT_COPRIME (gcd(d, phi) != 1).
KeyMaterial make_keypair(const BigInt& p, const BigInt& q, const BigInt& d,
                         const std::string& key_id = "");

/// Deterministic keypair from a seed: primes of `bits` bits each and a random
/// d coprime with phi.
KeyMaterial generate_keypair(unsigned bits, const std::string& seed,
                             const std::string& key_id = "");

/// Concatenated decimal ASCII codes. PAPER_VARIABLE packs each byte with no
/// padding (not uniquely decodable); FIXED_WIDTH3 packs each byte as exactly
/// three digits.
std::string ascii_pack(const std::string& text, PackMode mode);

/// PAPER_SCALAR: m * salt * factor (a linear map, not encryption — kept for
/// fidelity with the reference figures). TEXTBOOK_RSA: (m*salt)^e mod n,
/// requiring m*salt < n (ERR_BLOCK_TOO_LARGE otherwise).
BigInt tier1_encrypt(const BigInt& m, const KeyMaterial* key, const Tier1Params& params);

/// Exact inverse; divisions are verified and failure raises ERR_NOT_DIVISIBLE.
BigInt tier1_decrypt(const BigInt& c, const KeyMaterial* key, const Tier1Params& params);

/// Largest chunk size (bytes) with m * salt < n guaranteed for every chunk.
std::size_t max_chunk_len(const KeyMaterial& key, const BigInt& salt);

std::string key_to_json(const KeyMaterial& key);
KeyMaterial key_from_json(const std::string& text);

} // namespace tiercrypt
