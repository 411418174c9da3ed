#pragma once

#include <optional>
#include <string>

#include "tiercrypt/numeric.hpp"

namespace tiercrypt {

// A recipe is operator-written configuration: fields that name enumerations
// are kept as raw strings here and resolved by validate_recipe, so a recipe
// with an unknown codec or mode is representable and rejected with a named
// failing stage instead of failing to parse.
struct Recipe {
  std::string recipe_id;
  unsigned version = 1;

  struct {
    std::string mode;                    // "textbook_rsa" | "paper_scalar"
    BigInt salt = 0;                     // 0 = unset; valid recipes need >= 1
    std::optional<BigInt> factor;        // paper_scalar only
    std::string pack = "fixed_width3";   // "paper_variable" | "fixed_width3"
    std::string key_id;                  // required for textbook_rsa
  } tier1;

  int base = 2; // tier-2 radix, 2..36

  struct {
    std::string scheme;                  // codec scheme identifier
    std::optional<char> initial_level;
    std::optional<char> initial_polarity;
  } codec;

  struct {
    std::string kind;                    // "SIN" | "COS" | "EXP"
    unsigned n = 0;                      // 0 = unset
  } series;
};

std::string recipe_to_json(const Recipe& r);
Recipe recipe_from_json(const std::string& text); // throws ERR_RECIPE_INVALID

} // namespace tiercrypt
