#include "tiercrypt/envelope.hpp"

#include <nlohmann/json.hpp>

#include "tiercrypt/error.hpp"

namespace tiercrypt {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::ERR_ENVELOPE_INVALID, what);
}

bool canonical_decimal(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return s == "0" || s[0] != '0';
}

} // namespace

std::string envelope_to_json(const MaskedEnvelope& env) {
  ordered_json j;
  j["format_version"] = env.format_version;
  j["recipe_id"] = env.recipe_id;
  j["key_id"] = env.key_id;
  j["chunk_len"] = env.chunk_len;
  j["original_len"] = env.original_len;
  j["digest"] = env.digest_hex;
  ordered_json blocks = ordered_json::array();
  for (const auto& b : env.blocks) {
    ordered_json jb;
    jb["s"] = std::string(1, b.sign);
    jb["m"] = b.magnitude;
    jb["l"] = b.plain_len;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j.dump(2) + "\n";
}

MaskedEnvelope envelope_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    invalid(std::string("not valid JSON: ") + e.what());
  }
  try {
    MaskedEnvelope env;
    env.format_version = j.at("format_version").get<unsigned>();
    if (env.format_version != 1) invalid("unsupported format_version");
    env.recipe_id = j.at("recipe_id").get<std::string>();
    env.key_id = j.at("key_id").get<std::string>();
    env.chunk_len = j.at("chunk_len").get<std::size_t>();
    env.original_len = j.at("original_len").get<std::size_t>();
    env.digest_hex = j.at("digest").get<std::string>();
    Sha256 parsed;
    if (!from_hex(env.digest_hex, parsed)) invalid("digest is not 64 lowercase hex chars");
    if (env.chunk_len < 1) invalid("chunk_len must be >= 1");

    std::size_t total = 0;
    for (const auto& jb : j.at("blocks")) {
      MaskedEnvelope::Block b;
      std::string sign = jb.at("s").get<std::string>();
      if (sign != "+" && sign != "-") invalid("block sign must be '+' or '-'");
      b.sign = sign[0];
      b.magnitude = jb.at("m").get<std::string>();
      if (!canonical_decimal(b.magnitude)) invalid("block magnitude is not canonical decimal");
      if (b.sign == '-' && b.magnitude == "0") invalid("negative zero magnitude");
      b.plain_len = jb.at("l").get<std::size_t>();
      if (b.plain_len < 1) invalid("block plaintext length must be >= 1");
      if (b.plain_len > env.chunk_len) invalid("block longer than chunk_len");
      total += b.plain_len;
      env.blocks.push_back(std::move(b));
    }
    if (total != env.original_len) invalid("block lengths do not sum to original_len");
    if (env.blocks.empty() != (env.original_len == 0))
      invalid("blocks must be non-empty exactly when original_len > 0");
    return env;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    invalid(std::string("schema mismatch: ") + e.what());
  }
}

} // namespace tiercrypt
