#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tiercrypt/codec.hpp"
#include "tiercrypt/envelope.hpp"
#include "tiercrypt/keystage.hpp"
#include "tiercrypt/recipe.hpp"
#include "tiercrypt/seriesmask.hpp"

namespace tiercrypt {

enum class ValueKind { INTEGER, BIT_STRING, SYMBOL_STRING };

struct StageInfo {
  std::string name;
  ValueKind in;
  ValueKind out;
};

// A recipe resolved into typed stage parameters plus the ordered, type-checked
// stage chain (Integer -> Integer -> BitString -> BitString -> Integer -> Integer).
struct StagePlan {
  Tier1Params tier1;
  std::string key_id; // empty in paper_scalar mode
  int base = 2;
  CodecSpec codec;
  SeriesSpec series;
  std::vector<StageInfo> stages;
};

/// Resolves and checks every stage parameter; throws ERR_RECIPE_INVALID with
/// the first failing stage named in the message.
StagePlan validate_recipe(const Recipe& recipe);

using KeyResolver = std::function<KeyMaterial(const std::string& key_id)>;

/// Wall-clock milliseconds accumulated per stage across all blocks.
struct StageTimings {
  double tier1_ms = 0;
  double radix_ms = 0;
  double codec_ms = 0;
  double reinterpret_ms = 0;
  double mask_ms = 0;
};

MaskedEnvelope pipeline_encrypt(const Bytes& data, const Recipe& recipe, const KeyResolver& keys,
                                StageTimings* timings = nullptr);

/// Exact inverse; verifies the envelope against the recipe (ids, chunk size)
/// and the plaintext digest. Stage errors carry the failing block index.
Bytes pipeline_decrypt(const MaskedEnvelope& env, const Recipe& recipe, const KeyResolver& keys);

} // namespace tiercrypt
