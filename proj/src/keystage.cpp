#include "tiercrypt/keystage.hpp"

#include <random>

#include <nlohmann/json.hpp>

namespace tiercrypt {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_params(const Tier1Params& params) {
  if (params.salt < 1) throw Error(ErrorCode::ERR_BAD_VALUE, "salt must be >= 1");
  if ((params.mode == Tier1Mode::PAPER_SCALAR) != params.scalar_factor.has_value())
    throw Error(ErrorCode::ERR_BAD_VALUE,
                "scalar_factor must be present exactly in paper_scalar mode");
  if (params.scalar_factor && *params.scalar_factor < 1)
    throw Error(ErrorCode::ERR_BAD_VALUE, "scalar_factor must be >= 1");
}

const KeyMaterial& require_key(const KeyMaterial* key) {
  if (!key) throw Error(ErrorCode::ERR_BAD_KEY, "textbook_rsa mode needs key material");
  return *key;
}

BigInt exact_divide(const BigInt& value, const BigInt& divisor) {
  if (value % divisor != 0)
    throw Error(ErrorCode::ERR_NOT_DIVISIBLE,
                "value is not a multiple of " + divisor.str() + ", corrupt block");
  return value / divisor;
}

} // namespace

const char* tier1_mode_name(Tier1Mode m) {
  return m == Tier1Mode::TEXTBOOK_RSA ? "textbook_rsa" : "paper_scalar";
}

std::optional<Tier1Mode> tier1_mode_from_name(const std::string& name) {
  if (name == "textbook_rsa") return Tier1Mode::TEXTBOOK_RSA;
  if (name == "paper_scalar") return Tier1Mode::PAPER_SCALAR;
  return std::nullopt;
}

const char* pack_mode_name(PackMode m) {
  return m == PackMode::PAPER_VARIABLE ? "paper_variable" : "fixed_width3";
}

std::optional<PackMode> pack_mode_from_name(const std::string& name) {
  if (name == "paper_variable") return PackMode::PAPER_VARIABLE;
  if (name == "fixed_width3") return PackMode::FIXED_WIDTH3;
  return std::nullopt;
}

KeyMaterial make_keypair(const BigInt& p, const BigInt& q, const BigInt& d,
                         const std::string& key_id) {
  if (!is_probable_prime(p, 64))
    throw Error(ErrorCode::ERR_NOT_PRIME, "p = " + p.str() + " is not prime");
  if (!is_probable_prime(q, 64))
    throw Error(ErrorCode::ERR_NOT_PRIME, "q = " + q.str() + " is not prime");
  if (p == q) throw Error(ErrorCode::ERR_BAD_KEY, "p and q must be distinct");

  KeyMaterial key;
  key.key_id = key_id;
  key.p = p;
  key.q = q;
  key.n = p * q;
  key.phi = (p - 1) * (q - 1);
  if (d <= 1 || d >= key.phi)
    throw Error(ErrorCode::ERR_BAD_KEY, "d must satisfy 1 < d < phi");
  key.d = d;
  key.e = mod_inverse(d, key.phi); // throws ERR_NOT_COPRIME for unusable exponents
  key.bits = unsigned(std::max(bit_length(p), bit_length(q)));
  if (key.e * key.d % key.phi != 1)
    throw Error(ErrorCode::ERR_BAD_KEY, "exponent inversion failed");
  return key;
}

KeyMaterial generate_keypair(unsigned bits, const std::string& seed, const std::string& key_id) {
  BigInt p = gen_prime(bits, seed + "/p");
  BigInt q = gen_prime(bits, seed + "/q");
  for (unsigned salvage = 0; p == q; ++salvage)
    q = gen_prime(bits, seed + "/q" + std::to_string(salvage));
  BigInt phi = (p - 1) * (q - 1);

  std::seed_seq seq(seed.begin(), seed.end());
  std::mt19937_64 rng(seq);
  for (;;) {
    BigInt d = 0;
    std::size_t produced = 0;
    while (produced < bit_length(phi) + 64) {
      d <<= 64;
      d |= BigInt(rng());
      produced += 64;
    }
    d = 3 + d % (phi - 3);
    if (boost::multiprecision::gcd(d, phi) == 1) return make_keypair(p, q, d, key_id);
  }
}

std::string ascii_pack(const std::string& text, PackMode mode) {
  std::string out;
  for (unsigned char c : text) {
    std::string v = std::to_string(unsigned(c));
    if (mode == PackMode::FIXED_WIDTH3) out += std::string(3 - v.size(), '0');
    out += v;
  }
  return out;
}

BigInt tier1_encrypt(const BigInt& m, const KeyMaterial* key, const Tier1Params& params) {
  check_params(params);
  if (m < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "message value must be >= 0");
  if (params.mode == Tier1Mode::PAPER_SCALAR) return m * params.salt * *params.scalar_factor;

  const KeyMaterial& k = require_key(key);
  BigInt salted = m * params.salt;
  if (salted >= k.n)
    throw Error(ErrorCode::ERR_BLOCK_TOO_LARGE,
                "m*salt has " + std::to_string(bit_length(salted)) + " bits, modulus has " +
                    std::to_string(bit_length(k.n)));
  return mod_pow(salted, k.e, k.n);
}

BigInt tier1_decrypt(const BigInt& c, const KeyMaterial* key, const Tier1Params& params) {
  check_params(params);
  if (params.mode == Tier1Mode::PAPER_SCALAR)
    return exact_divide(c, params.salt * *params.scalar_factor);

  const KeyMaterial& k = require_key(key);
  BigInt salted = mod_pow(c, k.d, k.n);
  return exact_divide(salted, params.salt);
}

std::size_t max_chunk_len(const KeyMaterial& key, const BigInt& salt) {
  // 256^(chunk + salt_bytes) <= 2^(bits(n)-1) <= n forces m*salt < n.
  std::size_t salt_bytes = (bit_length(salt) + 7) / 8;
  std::size_t budget = (bit_length(key.n) - 1) / 8;
  if (budget <= salt_bytes)
    throw Error(ErrorCode::ERR_BLOCK_TOO_LARGE, "key too small for this salt");
  return budget - salt_bytes;
}

std::string key_to_json(const KeyMaterial& key) {
  ordered_json j;
  j["key_id"] = key.key_id;
  j["p"] = key.p.str();
  j["q"] = key.q.str();
  j["n"] = key.n.str();
  j["phi"] = key.phi.str();
  j["e"] = key.e.str();
  j["d"] = key.d.str();
  j["bits"] = key.bits;
  return j.dump(2) + "\n";
}

KeyMaterial key_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    KeyMaterial key;
    key.key_id = j.at("key_id").get<std::string>();
    key.p = BigInt(j.at("p").get<std::string>());
    key.q = BigInt(j.at("q").get<std::string>());
    key.n = BigInt(j.at("n").get<std::string>());
    key.phi = BigInt(j.at("phi").get<std::string>());
    key.e = BigInt(j.at("e").get<std::string>());
    key.d = BigInt(j.at("d").get<std::string>());
    key.bits = j.at("bits").get<unsigned>();
    if (key.n != key.p * key.q || key.phi != (key.p - 1) * (key.q - 1) ||
        key.e * key.d % key.phi != 1)
      throw Error(ErrorCode::ERR_BAD_KEY, "key fields are inconsistent");
    return key;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ERR_BAD_KEY, std::string("unreadable key file: ") + e.what());
  }
}

} // namespace tiercrypt
