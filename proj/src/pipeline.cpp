#include "tiercrypt/pipeline.hpp"

#include <chrono>

#include "tiercrypt/radix.hpp"

namespace tiercrypt {

namespace {

// paper_scalar mode has no modulus to bound the chunk, so the size is fixed.
constexpr std::size_t kScalarChunkLen = 64;

[[noreturn]] void invalid_recipe(const std::string& stage, const std::string& why) {
  throw Error(ErrorCode::ERR_RECIPE_INVALID, stage + ": " + why);
}

class StageClock {
public:
  explicit StageClock(double* slot) : slot_(slot), start_(clock::now()) {}
  ~StageClock() {
    if (slot_) *slot_ += std::chrono::duration<double, std::milli>(clock::now() - start_).count();
  }

private:
  using clock = std::chrono::steady_clock;
  double* slot_;
  clock::time_point start_;
};

struct PipelineContext {
  StagePlan plan;
  const KeyMaterial* key = nullptr; // borrowed from `storage` when textbook
  KeyMaterial storage;
  std::size_t chunk_len = 0;
};

PipelineContext make_context(const Recipe& recipe, const KeyResolver& keys) {
  PipelineContext ctx;
  ctx.plan = validate_recipe(recipe);
  if (ctx.plan.tier1.mode == Tier1Mode::TEXTBOOK_RSA) {
    ctx.storage = keys(ctx.plan.key_id);
    ctx.key = &ctx.storage;
    ctx.chunk_len = max_chunk_len(ctx.storage, ctx.plan.tier1.salt);
  } else {
    ctx.chunk_len = kScalarChunkLen;
  }
  return ctx;
}

// Codec stage, bit string to bit string. 4B/5B output re-aligns on decode by
// left-padding to a multiple of 5 (its symbols carry at most one leading
// zero). Line schemes serialize through symbols_to_bits behind a '1' sentinel
// bit so that leading zero symbols survive the integer reinterpretation.
std::string codec_forward(const std::string& bits, const CodecSpec& spec) {
  if (spec.scheme == Scheme::B4B5) return encode_4b5b(bits);
  return "1" + symbols_to_bits(line_encode(bits, spec));
}

std::string codec_backward(const std::string& bits, const CodecSpec& spec) {
  if (spec.scheme == Scheme::B4B5) return decode_4b5b(pad_to_multiple(bits, 5));
  if (bits.empty() || bits[0] != '1')
    throw Error(ErrorCode::ERR_INVALID_WAVEFORM, "codec sentinel bit missing");
  return line_decode(bits_to_symbols(bits.substr(1)), spec);
}

BigInt encrypt_block(const Bytes& chunk, const PipelineContext& ctx, StageTimings* t) {
  BigInt m = bytes_to_int(chunk);
  BigInt c;
  {
    StageClock clock(t ? &t->tier1_ms : nullptr);
    c = tier1_encrypt(m, ctx.key, ctx.plan.tier1);
  }
  std::string bits;
  {
    // The recorded radix normalizes through binary before codec entry.
    StageClock clock(t ? &t->radix_ms : nullptr);
    bits = pad_to_multiple(int_to_digits(c, 2), 4);
  }
  std::string coded;
  {
    StageClock clock(t ? &t->codec_ms : nullptr);
    coded = codec_forward(bits, ctx.plan.codec);
  }
  BigInt x;
  {
    StageClock clock(t ? &t->reinterpret_ms : nullptr);
    x = digits_to_int(coded, 2);
  }
  StageClock clock(t ? &t->mask_ms : nullptr);
  return mask_encode(x, ctx.plan.series);
}

Bytes decrypt_block(const BigInt& masked, std::size_t plain_len, const PipelineContext& ctx) {
  BigInt x = mask_decode(masked, ctx.plan.series);
  std::string coded = int_to_digits(x, 2);
  std::string bits = codec_backward(coded, ctx.plan.codec);
  BigInt c = digits_to_int(bits, 2);
  BigInt m = tier1_decrypt(c, ctx.key, ctx.plan.tier1);
  return int_to_bytes(m, plain_len);
}

} // namespace

StagePlan validate_recipe(const Recipe& recipe) {
  StagePlan plan;
  if (recipe.version != 1) invalid_recipe("version", "unsupported recipe version");
  if (recipe.recipe_id.empty()) invalid_recipe("recipe_id", "must be non-empty");

  auto mode = tier1_mode_from_name(recipe.tier1.mode);
  if (!mode) invalid_recipe("tier1", "unknown mode \"" + recipe.tier1.mode + "\"");
  plan.tier1.mode = *mode;
  if (recipe.tier1.salt < 1) invalid_recipe("tier1", "salt missing or < 1");
  plan.tier1.salt = recipe.tier1.salt;
  if (*mode == Tier1Mode::PAPER_SCALAR) {
    if (!recipe.tier1.factor) invalid_recipe("tier1", "paper_scalar needs a factor");
    if (*recipe.tier1.factor < 1) invalid_recipe("tier1", "factor must be >= 1");
    if (!recipe.tier1.key_id.empty()) invalid_recipe("tier1", "paper_scalar takes no key_id");
    plan.tier1.scalar_factor = recipe.tier1.factor;
  } else {
    if (recipe.tier1.factor) invalid_recipe("tier1", "factor is only for paper_scalar");
    if (recipe.tier1.key_id.empty()) invalid_recipe("tier1", "textbook_rsa needs a key_id");
    plan.key_id = recipe.tier1.key_id;
  }
  auto pack = pack_mode_from_name(recipe.tier1.pack);
  if (!pack) invalid_recipe("tier1", "unknown pack mode \"" + recipe.tier1.pack + "\"");
  plan.tier1.pack_mode = *pack;

  if (recipe.base < 2 || recipe.base > 36) invalid_recipe("radix", "base outside 2..36");
  plan.base = recipe.base;

  auto scheme = scheme_from_name(recipe.codec.scheme);
  if (!scheme) invalid_recipe("codec", "unknown scheme \"" + recipe.codec.scheme + "\"");
  plan.codec.scheme = *scheme;
  plan.codec.initial_level = recipe.codec.initial_level;
  plan.codec.initial_polarity = recipe.codec.initial_polarity;
  try {
    validate_codec_spec(plan.codec);
  } catch (const Error& e) {
    invalid_recipe("codec", e.detail());
  }

  auto kind = series_from_name(recipe.series.kind);
  if (!kind) invalid_recipe("series", "unknown kind \"" + recipe.series.kind + "\"");
  plan.series.kind = *kind;
  if (recipe.series.n < 1) invalid_recipe("series", "n must be >= 1");
  plan.series.n_terms = recipe.series.n;

  plan.stages = {
      {"tier1", ValueKind::INTEGER, ValueKind::INTEGER},
      {"radix", ValueKind::INTEGER, ValueKind::BIT_STRING},
      {"codec", ValueKind::BIT_STRING, ValueKind::BIT_STRING},
      {"reinterpret", ValueKind::BIT_STRING, ValueKind::INTEGER},
      {"mask", ValueKind::INTEGER, ValueKind::INTEGER},
  };
  for (std::size_t i = 1; i < plan.stages.size(); ++i)
    if (plan.stages[i].in != plan.stages[i - 1].out)
      invalid_recipe(plan.stages[i].name, "stage input kind mismatch");
  return plan;
}

MaskedEnvelope pipeline_encrypt(const Bytes& data, const Recipe& recipe, const KeyResolver& keys,
                                StageTimings* timings) {
  PipelineContext ctx = make_context(recipe, keys);

  MaskedEnvelope env;
  env.recipe_id = recipe.recipe_id;
  env.key_id = ctx.plan.key_id;
  env.chunk_len = ctx.chunk_len;
  env.original_len = data.size();
  env.digest_hex = to_hex(sha256(data));

  for (std::size_t off = 0; off < data.size(); off += ctx.chunk_len) {
    std::size_t len = std::min(ctx.chunk_len, data.size() - off);
    Bytes chunk(data.begin() + off, data.begin() + off + len);
    BigInt masked;
    try {
      masked = encrypt_block(chunk, ctx, timings);
    } catch (const Error& e) {
      throw Error(e.code(), "block " + std::to_string(off / ctx.chunk_len) + ": " + e.detail());
    }
    MaskedEnvelope::Block block;
    block.sign = masked < 0 ? '-' : '+';
    block.magnitude = boost::multiprecision::abs(masked).str();
    block.plain_len = len;
    env.blocks.push_back(std::move(block));
  }
  return env;
}

Bytes pipeline_decrypt(const MaskedEnvelope& env, const Recipe& recipe, const KeyResolver& keys) {
  PipelineContext ctx = make_context(recipe, keys);
  if (env.format_version != 1)
    throw Error(ErrorCode::ERR_ENVELOPE_INVALID, "unsupported format_version");
  if (env.recipe_id != recipe.recipe_id)
    throw Error(ErrorCode::ERR_ENVELOPE_INVALID,
                "envelope was produced by recipe \"" + env.recipe_id + "\"");
  if (env.key_id != ctx.plan.key_id)
    throw Error(ErrorCode::ERR_ENVELOPE_INVALID, "envelope key_id does not match the recipe");
  if (env.chunk_len != ctx.chunk_len)
    throw Error(ErrorCode::ERR_ENVELOPE_INVALID, "envelope chunk_len does not match the recipe");

  Bytes out;
  out.reserve(env.original_len);
  std::size_t total = 0;
  for (std::size_t i = 0; i < env.blocks.size(); ++i) {
    const auto& block = env.blocks[i];
    if (block.plain_len < 1 || block.plain_len > ctx.chunk_len)
      throw Error(ErrorCode::ERR_ENVELOPE_INVALID,
                  "block " + std::to_string(i) + ": bad plaintext length");
    try {
      BigInt masked(block.magnitude);
      if (block.sign == '-') masked = -masked;
      Bytes plain = decrypt_block(masked, block.plain_len, ctx);
      out.insert(out.end(), plain.begin(), plain.end());
    } catch (const Error& e) {
      throw Error(e.code(), "block " + std::to_string(i) + ": " + e.detail());
    }
    total += block.plain_len;
  }
  if (total != env.original_len)
    throw Error(ErrorCode::ERR_ENVELOPE_INVALID, "block lengths do not sum to original_len");
  if (to_hex(sha256(out)) != env.digest_hex)
    throw Error(ErrorCode::ERR_DIGEST_MISMATCH, "plaintext digest does not match the envelope");
  return out;
}

} // namespace tiercrypt
