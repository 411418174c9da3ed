#include "tiercrypt/recipe.hpp"

#include <nlohmann/json.hpp>

namespace tiercrypt {

namespace {

using ordered_json = nlohmann::ordered_json;

std::optional<char> level_from_json(const ordered_json& j, const char* field) {
  if (!j.contains(field)) return std::nullopt;
  std::string s = j.at(field).get<std::string>();
  if (s.size() != 1) throw Error(ErrorCode::ERR_RECIPE_INVALID, std::string(field) + " malformed");
  return s[0];
}

} // namespace

std::string recipe_to_json(const Recipe& r) {
  ordered_json j;
  j["version"] = r.version;
  j["recipe_id"] = r.recipe_id;
  ordered_json t;
  t["mode"] = r.tier1.mode;
  t["salt"] = r.tier1.salt.str();
  if (r.tier1.factor) t["factor"] = r.tier1.factor->str();
  t["pack"] = r.tier1.pack;
  if (!r.tier1.key_id.empty()) t["key_id"] = r.tier1.key_id;
  j["tier1"] = t;
  j["base"] = r.base;
  ordered_json c;
  c["scheme"] = r.codec.scheme;
  if (r.codec.initial_level) c["initial_level"] = std::string(1, *r.codec.initial_level);
  if (r.codec.initial_polarity) c["initial_polarity"] = std::string(1, *r.codec.initial_polarity);
  j["codec"] = c;
  ordered_json s;
  s["kind"] = r.series.kind;
  s["n"] = r.series.n;
  j["series"] = s;
  return j.dump(2) + "\n";
}

Recipe recipe_from_json(const std::string& text) {
  try {
    ordered_json j = ordered_json::parse(text);
    Recipe r;
    r.version = j.value("version", 0u);
    r.recipe_id = j.value("recipe_id", std::string());
    if (j.contains("tier1")) {
      const auto& t = j.at("tier1");
      r.tier1.mode = t.value("mode", std::string());
      if (t.contains("salt")) r.tier1.salt = BigInt(t.at("salt").get<std::string>());
      if (t.contains("factor")) r.tier1.factor = BigInt(t.at("factor").get<std::string>());
      r.tier1.pack = t.value("pack", std::string("fixed_width3"));
      r.tier1.key_id = t.value("key_id", std::string());
    }
    r.base = j.value("base", 0);
    if (j.contains("codec")) {
      const auto& c = j.at("codec");
      r.codec.scheme = c.value("scheme", std::string());
      r.codec.initial_level = level_from_json(c, "initial_level");
      r.codec.initial_polarity = level_from_json(c, "initial_polarity");
    }
    if (j.contains("series")) {
      const auto& s = j.at("series");
      r.series.kind = s.value("kind", std::string());
      r.series.n = s.value("n", 0u);
    }
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ERR_RECIPE_INVALID, std::string("unreadable recipe: ") + e.what());
  }
}

} // namespace tiercrypt
