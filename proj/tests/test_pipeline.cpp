#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "tiercrypt/pipeline.hpp"
#include "tiercrypt/radix.hpp"
#include "tiercrypt/store.hpp"

using namespace tiercrypt;
namespace fs = std::filesystem;

namespace {

Recipe paper_recipe(const std::string& id = "paper") {
  Recipe r;
  r.recipe_id = id;
  r.tier1.mode = "paper_scalar";
  r.tier1.salt = 34;
  r.tier1.factor = 40;
  r.tier1.pack = "paper_variable";
  r.base = 2;
  r.codec.scheme = "B4B5";
  r.series.kind = "SIN";
  r.series.n = 3;
  return r;
}

Recipe textbook_recipe(const std::string& id, const std::string& key_id,
                       const std::string& series = "SIN", unsigned n = 3,
                       const std::string& scheme = "B4B5") {
  Recipe r;
  r.recipe_id = id;
  r.tier1.mode = "textbook_rsa";
  r.tier1.salt = 34;
  r.tier1.key_id = key_id;
  r.base = 2;
  r.codec.scheme = scheme;
  r.series.kind = series;
  r.series.n = n;
  return r;
}

KeyResolver resolver_for(const KeyMaterial& key) {
  return [key](const std::string& id) -> KeyMaterial {
    if (id != key.key_id) throw Error(ErrorCode::ERR_NOT_FOUND, "keys/" + id + " not in store");
    return key;
  };
}

KeyResolver no_keys() {
  return [](const std::string& id) -> KeyMaterial {
    throw Error(ErrorCode::ERR_NOT_FOUND, "keys/" + id + " not in store");
  };
}

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path = fs::temp_directory_path() /
           ("tiercrypt-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter.fetch_add(1)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("validate_recipe accepts the canonical chain") {
  KeyMaterial key = generate_keypair(64, "vr-seed", "k1");
  Recipe r = textbook_recipe("r1", "k1");
  StagePlan plan = validate_recipe(r);
  REQUIRE(plan.stages.size() == 5);
  CHECK(plan.stages[0].name == "tier1");
  CHECK(plan.stages[1].name == "radix");
  CHECK(plan.stages[2].name == "codec");
  CHECK(plan.stages[3].name == "reinterpret");
  CHECK(plan.stages[4].name == "mask");
  CHECK(plan.stages.front().in == ValueKind::INTEGER);
  for (std::size_t i = 1; i < plan.stages.size(); ++i)
    CHECK(plan.stages[i].in == plan.stages[i - 1].out);
  CHECK(plan.stages.back().out == ValueKind::INTEGER);
  CHECK(plan.key_id == "k1");
}

TEST_CASE("validate_recipe names the failing stage") {
  auto expect_fail = [](Recipe r, const std::string& stage) {
    try {
      validate_recipe(r);
      CAPTURE(stage);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ERR_RECIPE_INVALID);
      CHECK(std::string(e.what()).find(stage) != std::string::npos);
    }
  };

  Recipe missing_salt = textbook_recipe("r", "k");
  missing_salt.tier1.salt = 0;
  expect_fail(missing_salt, "tier1");

  Recipe unknown_codec = paper_recipe();
  unknown_codec.codec.scheme = "B5B6";
  expect_fail(unknown_codec, "codec");

  Recipe unknown_mode = paper_recipe();
  unknown_mode.tier1.mode = "double_rot13";
  expect_fail(unknown_mode, "tier1");

  Recipe no_key = textbook_recipe("r", "");
  expect_fail(no_key, "tier1");

  Recipe stray_factor = textbook_recipe("r", "k");
  stray_factor.tier1.factor = 40;
  expect_fail(stray_factor, "tier1");

  Recipe scalar_with_key = paper_recipe();
  scalar_with_key.tier1.key_id = "k";
  expect_fail(scalar_with_key, "tier1");

  Recipe bad_base = paper_recipe();
  bad_base.base = 37;
  expect_fail(bad_base, "radix");

  Recipe bad_series = paper_recipe();
  bad_series.series.n = 0;
  expect_fail(bad_series, "series");

  Recipe bad_kind = paper_recipe();
  bad_kind.series.kind = "TAN";
  expect_fail(bad_kind, "series");

  Recipe ami_no_polarity = paper_recipe();
  ami_no_polarity.codec.scheme = "AMI";
  expect_fail(ami_no_polarity, "codec");

  Recipe bad_version = paper_recipe();
  bad_version.version = 2;
  expect_fail(bad_version, "version");
}

TEST_CASE("single byte against the stage-by-stage oracle") {
  // every stage recomputed here with independent pieces
  const uint8_t byte = 0x48;
  BigInt c = BigInt(int(byte)) * 34 * 40;
  CHECK(c == 97920);
  std::string bits = int_to_digits(c, 2);
  std::string padded = pad_to_multiple(bits, 4);
  std::string coded;
  for (std::size_t i = 0; i < padded.size(); i += 4) {
    std::string nib = padded.substr(i, 4);
    for (const auto& [n4, s5] : oracles::table_4b5b())
      if (n4 == nib) coded += s5;
  }
  REQUIRE(coded.size() == padded.size() / 4 * 5);
  BigInt x = digits_to_int(coded, 2);
  CHECK(x == 9957982);
  BigInt t = oracles::series_mask_value(0, 3, x);
  CHECK(t == BigInt("-9709555720543923663070135100873858410412284317664"));

  MaskedEnvelope env = pipeline_encrypt(Bytes{byte}, paper_recipe(), no_keys());
  REQUIRE(env.blocks.size() == 1);
  CHECK(env.blocks[0].sign == '-');
  CHECK(env.blocks[0].magnitude == "9709555720543923663070135100873858410412284317664");
  CHECK(env.blocks[0].plain_len == 1);
  CHECK(env.original_len == 1);

  CHECK(pipeline_decrypt(env, paper_recipe(), no_keys()) == Bytes{byte});
}

TEST_CASE("empty input, zero blocks") {
  MaskedEnvelope env = pipeline_encrypt(Bytes{}, paper_recipe(), no_keys());
  CHECK(env.blocks.empty());
  CHECK(env.original_len == 0);
  CHECK(pipeline_decrypt(env, paper_recipe(), no_keys()).empty());
}

TEST_CASE("leading zero bytes survive the roundtrip") {
  Bytes data = {0x00, 0x00, 0x48, 0x00};
  MaskedEnvelope env = pipeline_encrypt(data, paper_recipe(), no_keys());
  CHECK(pipeline_decrypt(env, paper_recipe(), no_keys()) == data);

  Bytes zeros(300, 0x00);
  env = pipeline_encrypt(zeros, paper_recipe(), no_keys());
  CHECK(pipeline_decrypt(env, paper_recipe(), no_keys()) == zeros);
}

TEST_CASE("roundtrip across recipes and codecs") {
  std::mt19937_64 rng(51);
  KeyMaterial key = generate_keypair(256, "rt-seed", "k256");
  auto keys = resolver_for(key);

  std::vector<Recipe> recipes;
  recipes.push_back(paper_recipe());
  recipes.push_back(textbook_recipe("tb-sin", "k256", "SIN", 3));
  recipes.push_back(textbook_recipe("tb-exp", "k256", "EXP", 3));
  recipes.push_back(textbook_recipe("tb-cos", "k256", "COS", 2));
  for (const char* scheme : {"NRZ_L", "NRZ_I", "MANCHESTER", "DIFF_MANCHESTER", "AMI",
                             "PSEUDOTERNARY", "B8ZS"}) {
    Recipe r = textbook_recipe(std::string("tb-") + scheme, "k256", "EXP", 3, scheme);
    if (r.codec.scheme == "NRZ_I" || r.codec.scheme == "DIFF_MANCHESTER")
      r.codec.initial_level = '-';
    if (r.codec.scheme == "AMI" || r.codec.scheme == "PSEUDOTERNARY" || r.codec.scheme == "B8ZS")
      r.codec.initial_polarity = '+';
    recipes.push_back(r);
  }

  for (const auto& recipe : recipes) {
    CAPTURE(recipe.recipe_id);
    for (int i = 0; i < 6; ++i) {
      Bytes data = oracles::random_bytes(rng, rng() % 2048);
      MaskedEnvelope env = pipeline_encrypt(data, recipe, keys);
      CHECK(pipeline_decrypt(env, recipe, keys) == data);
      // serialization is stable and byte-exact
      std::string json = envelope_to_json(env);
      CHECK(envelope_to_json(envelope_from_json(json)) == json);
    }
  }
}

TEST_CASE("decrypt validates envelope against recipe") {
  KeyMaterial key = generate_keypair(64, "xv-seed", "kx");
  auto keys = resolver_for(key);
  Recipe r = textbook_recipe("xr", "kx");
  MaskedEnvelope env = pipeline_encrypt(Bytes{1, 2, 3}, r, keys);

  Recipe other = r;
  other.recipe_id = "different";
  CHECK_THROWS_WITH_AS(pipeline_decrypt(env, other, keys),
                       doctest::Contains("ERR_ENVELOPE_INVALID"), Error);

  MaskedEnvelope bad_chunk = env;
  bad_chunk.chunk_len += 1;
  CHECK_THROWS_AS(pipeline_decrypt(bad_chunk, r, keys), Error);

  MaskedEnvelope bad_key = env;
  bad_key.key_id = "someone-else";
  CHECK_THROWS_AS(pipeline_decrypt(bad_key, r, keys), Error);
}

TEST_CASE("mutated envelopes never decrypt silently") {
  std::mt19937_64 rng(52);
  Recipe r = paper_recipe();
  Bytes data = oracles::random_bytes(rng, 200);
  std::string json = envelope_to_json(pipeline_encrypt(data, r, no_keys()));

  int mutations = 0;
  while (mutations < 60) {
    std::string broken = json;
    std::size_t byte_idx = rng() % broken.size();
    int bit = rng() % 8;
    broken[byte_idx] = char(uint8_t(broken[byte_idx]) ^ (1u << bit));
    if (broken == json) continue;
    ++mutations;
    CAPTURE(byte_idx, bit);
    try {
      MaskedEnvelope env = envelope_from_json(broken);
      Bytes out = pipeline_decrypt(env, r, no_keys());
      // reaching here silently with altered plaintext is the one forbidden outcome
      CHECK(out == data);
    } catch (const Error&) {
      // any named error is a pass
    }
  }
}

TEST_CASE("single magnitude digit corruption surfaces") {
  std::mt19937_64 rng(53);
  Recipe r = paper_recipe();
  Bytes data = oracles::random_bytes(rng, 100);
  MaskedEnvelope env = pipeline_encrypt(data, r, no_keys());

  for (int i = 0; i < 20; ++i) {
    MaskedEnvelope broken = env;
    auto& mag = broken.blocks[rng() % broken.blocks.size()].magnitude;
    std::size_t pos = rng() % mag.size();
    char replacement = char('0' + rng() % 10);
    if (mag[pos] == replacement) continue;
    if (pos == 0 && replacement == '0' && mag.size() > 1) continue; // non-canonical, parse-level
    mag[pos] = replacement;
    CHECK_THROWS_AS(pipeline_decrypt(broken, r, no_keys()), Error);
  }
}

TEST_CASE("file store") {
  TempDir dir;
  FileStore store(dir.path);

  Recipe rb = paper_recipe("b");
  Recipe ra = paper_recipe("a");
  store.put_recipe(rb);
  store.put_recipe(ra);
  CHECK(store.list_recipes() == std::vector<std::string>{"a", "b"});

  Recipe got = store.get_recipe("a");
  CHECK(recipe_to_json(got) == recipe_to_json(ra));

  CHECK_THROWS_WITH_AS(store.get_recipe("zz"), doctest::Contains("ERR_NOT_FOUND"), Error);
  CHECK_THROWS_WITH_AS(store.put_recipe(ra), doctest::Contains("ERR_DUPLICATE_ID"), Error);
  ra.series.n = 4;
  store.put_recipe(ra, true); // overwrite flag
  CHECK(store.get_recipe("a").series.n == 4);

  store.delete_recipe("a");
  CHECK(store.list_recipes() == std::vector<std::string>{"b"});
  CHECK_THROWS_AS(store.delete_recipe("a"), Error);

  KeyMaterial key = generate_keypair(64, "store-seed", "key-1");
  store.put_key(key);
  CHECK(store.get_key("key-1").n == key.n);
  CHECK(store.list_keys() == std::vector<std::string>{"key-1"});

  Recipe evil = paper_recipe("../escape");
  CHECK_THROWS_WITH_AS(store.put_recipe(evil), doctest::Contains("ERR_BAD_ID"), Error);
  Recipe dot = paper_recipe(".hidden");
  CHECK_THROWS_AS(store.put_recipe(dot), Error);
  CHECK_THROWS_AS(store.get_recipe(""), Error);
}

TEST_CASE("recipe json roundtrip") {
  Recipe r = paper_recipe();
  Recipe back = recipe_from_json(recipe_to_json(r));
  CHECK(recipe_to_json(back) == recipe_to_json(r));

  Recipe t = textbook_recipe("t", "k", "EXP", 2, "AMI");
  t.codec.initial_polarity = '+';
  back = recipe_from_json(recipe_to_json(t));
  CHECK(recipe_to_json(back) == recipe_to_json(t));
  CHECK(back.codec.initial_polarity == '+');

  // missing fields parse into an invalid-but-representable recipe
  Recipe sparse = recipe_from_json("{\"version\":1,\"recipe_id\":\"x\"}");
  CHECK_THROWS_AS(validate_recipe(sparse), Error);
  CHECK_THROWS_AS(recipe_from_json("{nope"), Error);
}

TEST_CASE("timings accumulate when requested") {
  StageTimings timings;
  std::mt19937_64 rng(54);
  Bytes data = oracles::random_bytes(rng, 512);
  pipeline_encrypt(data, paper_recipe(), no_keys(), &timings);
  CHECK(timings.tier1_ms >= 0);
  CHECK(timings.radix_ms >= 0);
  CHECK(timings.codec_ms >= 0);
  CHECK(timings.reinterpret_ms >= 0);
  CHECK(timings.mask_ms >= 0);
}
