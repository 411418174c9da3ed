#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tiercrypt/error.hpp"

namespace tiercrypt {

// Arbitrary-precision signed integer and exact reduced rational.
// cpp_rational keeps gcd(num, den) = 1 and den > 0 canonically.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

using Bytes = std::vector<uint8_t>;

/// Number of significant bits; bit_length(0) = 0.
std::size_t bit_length(const BigInt& x);

/// base^exp mod modulus by square-and-multiply. Throws ERR_BAD_MODULUS if modulus < 2.
BigInt mod_pow(const BigInt& base, const BigInt& exp, const BigInt& modulus);

/// Unique b in [1, modulus) with a*b = 1 (mod modulus), by extended Euclid.
/// Throws ERR_NOT_COPRIME when gcd(a, modulus) != 1, ERR_BAD_MODULUS when modulus < 2.
BigInt mod_inverse(const BigInt& a, const BigInt& modulus);

/// Miller-Rabin with `rounds` bases; exact (trial division) for n < 2^32.
/// Witness bases are derived deterministically from n, so calls are pure.
bool is_probable_prime(const BigInt& n, unsigned rounds);

/// Prime with exactly `bits` bits (top bit set), deterministic for a fixed seed.
/// bits must be >= 8.
BigInt gen_prime(unsigned bits, const std::string& seed);

/// Big-endian bytes -> non-negative integer. Empty input yields 0.
BigInt bytes_to_int(const uint8_t* data, std::size_t len);
BigInt bytes_to_int(const Bytes& data);

/// Inverse of bytes_to_int, left-padded with zero bytes to exactly `len` bytes.
/// Throws ERR_BLOCK_TOO_LARGE when x does not fit in `len` bytes, ERR_BAD_VALUE when x < 0.
Bytes int_to_bytes(const BigInt& x, std::size_t len);

} // namespace tiercrypt
