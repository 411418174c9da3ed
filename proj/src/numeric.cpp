#include "tiercrypt/numeric.hpp"

#include <algorithm>
#include <array>
#include <random>

namespace tiercrypt {

namespace {

// Odd primes below 2^16, enough for exact trial division of any n < 2^32.
const std::vector<uint32_t>& small_primes() {
  static const std::vector<uint32_t> primes = [] {
    std::vector<bool> composite(65536, false);
    std::vector<uint32_t> out;
    for (uint32_t i = 3; i < 65536; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (uint32_t j = i * i; j < 65536; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool trial_division_exact(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint32_t p : small_primes()) {
    if (uint64_t(p) * p > n) break;
    if (n % p == 0) return n == p;
  }
  return true;
}

// n odd, n > 2. Returns false if `a` witnesses compositeness.
bool miller_rabin_round(const BigInt& n, const BigInt& a, const BigInt& d_odd, unsigned s) {
  BigInt x = mod_pow(a, d_odd, n);
  const BigInt n_minus_1 = n - 1;
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
  }
  return false;
}

BigInt random_bits(std::mt19937_64& rng, std::size_t bits) {
  BigInt r = 0;
  std::size_t produced = 0;
  while (produced < bits) {
    r <<= 64;
    r |= BigInt(rng());
    produced += 64;
  }
  r >>= produced - bits;
  return r;
}

} // namespace

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& modulus) {
  if (modulus < 2) throw Error(ErrorCode::ERR_BAD_MODULUS, "modulus must be >= 2");
  if (base < 0 || exp < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "mod_pow needs base, exp >= 0");
  BigInt result = 1;
  BigInt b = base % modulus;
  BigInt e = exp;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) result = (result * b) % modulus;
    b = (b * b) % modulus;
    e >>= 1;
  }
  return result;
}

BigInt mod_inverse(const BigInt& a, const BigInt& modulus) {
  if (modulus < 2) throw Error(ErrorCode::ERR_BAD_MODULUS, "modulus must be >= 2");
  // Extended Euclid on (a mod m, m), tracking only the coefficient of a.
  BigInt r0 = a % modulus;
  if (r0 < 0) r0 += modulus;
  BigInt r1 = modulus;
  BigInt t0 = 1, t1 = 0;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    BigInt t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1)
    throw Error(ErrorCode::ERR_NOT_COPRIME,
                "gcd(a, modulus) = " + r0.str() + ", no inverse exists");
  if (t0 < 0) t0 += modulus;
  return t0;
}

bool is_probable_prime(const BigInt& n, unsigned rounds) {
  if (rounds < 1) throw Error(ErrorCode::ERR_BAD_VALUE, "rounds must be >= 1");
  if (n < 2) return false;
  if (n < (BigInt(1) << 32)) return trial_division_exact(n.convert_to<uint64_t>());
  if (boost::multiprecision::bit_test(n, 0) == false) return false;

  // Quick small-factor screen before the expensive rounds.
  for (uint32_t p : small_primes()) {
    if (p > 8192) break;
    if (n % p == 0) return false;
  }

  unsigned s = 0;
  BigInt d = n - 1;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }

  // Deterministic witness stream keyed on n keeps the function pure.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (n % (BigInt(1) << 64)).convert_to<uint64_t>());
  const BigInt span = n - 3; // bases drawn from [2, n-2]
  for (unsigned i = 0; i < rounds; ++i) {
    BigInt a = 2 + random_bits(rng, bit_length(n) + 64) % span;
    if (!miller_rabin_round(n, a, d, s)) return false;
  }
  return true;
}

BigInt gen_prime(unsigned bits, const std::string& seed) {
  if (bits < 8) throw Error(ErrorCode::ERR_BAD_VALUE, "gen_prime needs bits >= 8");
  std::seed_seq seq(seed.begin(), seed.end());
  std::mt19937_64 rng(seq);
  for (;;) {
    BigInt candidate = random_bits(rng, bits);
    boost::multiprecision::bit_set(candidate, bits - 1); // exact bit width
    boost::multiprecision::bit_set(candidate, 0);        // odd
    if (is_probable_prime(candidate, 64)) return candidate;
  }
}

BigInt bytes_to_int(const uint8_t* data, std::size_t len) {
  if (len == 0) return 0;
  BigInt x;
  boost::multiprecision::import_bits(x, data, data + len, 8);
  return x;
}

BigInt bytes_to_int(const Bytes& data) { return bytes_to_int(data.data(), data.size()); }

Bytes int_to_bytes(const BigInt& x, std::size_t len) {
  if (x < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "negative value has no byte form");
  if (bit_length(x) > len * 8)
    throw Error(ErrorCode::ERR_BLOCK_TOO_LARGE,
                "value needs " + std::to_string((bit_length(x) + 7) / 8) + " bytes, block is " +
                    std::to_string(len));
  Bytes out;
  out.reserve(len);
  boost::multiprecision::export_bits(x, std::back_inserter(out), 8);
  if (x == 0) out.clear(); // export_bits emits a single 0x00 for zero
  Bytes padded(len - out.size(), 0);
  padded.insert(padded.end(), out.begin(), out.end());
  return padded;
}

} // namespace tiercrypt
