#include "tiercrypt/radix.hpp"

#include <algorithm>

namespace tiercrypt {

namespace {

const char kAlphabet[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

int digit_value(char c, int base) {
  int v;
  if (c >= '0' && c <= '9') v = c - '0';
  else if (c >= 'A' && c <= 'Z') v = c - 'A' + 10;
  else return -1;
  return v < base ? v : -1;
}

void check_base(int base) {
  if (base < 2 || base > 36)
    throw Error(ErrorCode::ERR_BAD_BASE, "base " + std::to_string(base) + " outside 2..36");
}

} // namespace

std::string int_to_digits(const BigInt& x, int base) {
  check_base(base);
  if (x < 0) throw Error(ErrorCode::ERR_BAD_VALUE, "negative value has no digit form");
  if (x == 0) return "0";
  std::string out;
  BigInt v = x;
  const BigInt b = base;
  while (v > 0) {
    out.push_back(kAlphabet[(v % b).convert_to<unsigned>()]);
    v /= b;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

BigInt digits_to_int(const std::string& s, int base) {
  check_base(base);
  if (s.empty()) throw Error(ErrorCode::ERR_BAD_DIGIT, "empty digit string");
  BigInt acc = 0;
  const BigInt b = base;
  for (char c : s) {
    int v = digit_value(c, base);
    if (v < 0)
      throw Error(ErrorCode::ERR_BAD_DIGIT,
                  std::string("'") + c + "' is not a base-" + std::to_string(base) + " digit");
    acc = acc * b + v;
  }
  return acc;
}

std::string pad_to_multiple(const std::string& bits, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::ERR_BAD_VALUE, "k must be >= 1");
  if (bits.empty()) return bits;
  std::size_t rem = bits.size() % k;
  if (rem == 0) return bits;
  return std::string(k - rem, '0') + bits;
}

} // namespace tiercrypt
