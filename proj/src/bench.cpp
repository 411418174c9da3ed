#include "tiercrypt/bench.hpp"

#include <sys/utsname.h>

#include <cctype>
#include <chrono>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

namespace tiercrypt {

namespace {

using ordered_json = nlohmann::ordered_json;

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string default_machine_note() {
  utsname u{};
  if (uname(&u) == 0)
    return std::string(u.sysname) + " " + u.release + " " + u.machine;
  return "unknown";
}

} // namespace

std::string bench_report_to_json(const BenchReport& report) {
  ordered_json j;
  j["file_bytes"] = report.file_bytes;
  j["word_count"] = report.word_count;
  j["keygen_ms"] = report.keygen_ms;
  ordered_json stages;
  stages["tier1_ms"] = report.stage_ms.tier1_ms;
  stages["radix_ms"] = report.stage_ms.radix_ms;
  stages["codec_ms"] = report.stage_ms.codec_ms;
  stages["reinterpret_ms"] = report.stage_ms.reinterpret_ms;
  stages["mask_ms"] = report.stage_ms.mask_ms;
  j["stages"] = stages;
  j["encode_ms"] = report.encode_ms;
  j["total_ms"] = report.total_ms;
  j["machine"] = report.machine;
  return j.dump(2) + "\n";
}

BenchReport run_bench(const std::filesystem::path& file, const std::string& recipe_id,
                      const FileStore& store, const std::string& machine_note) {
  const auto t_total = std::chrono::steady_clock::now();
  BenchReport report;
  report.machine = machine_note.empty() ? default_machine_note() : machine_note;

  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::ERR_IO, "cannot read " + file.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  report.file_bytes = data.size();

  bool in_word = false;
  for (uint8_t c : data) {
    bool space = std::isspace(int(c)) != 0;
    if (!space && !in_word) ++report.word_count;
    in_word = !space;
  }

  Recipe recipe = store.get_recipe(recipe_id);
  StagePlan plan = validate_recipe(recipe);
  if (plan.tier1.mode == Tier1Mode::TEXTBOOK_RSA) {
    unsigned bits = store.get_key(plan.key_id).bits;
    std::random_device rd;
    std::string seed = "bench-" + std::to_string(rd()) + "-" + std::to_string(rd());
    const auto t_keygen = std::chrono::steady_clock::now();
    generate_keypair(bits, seed, "bench-throwaway");
    report.keygen_ms = ms_since(t_keygen);
  }

  auto resolver = [&store](const std::string& id) { return store.get_key(id); };
  const auto t_encode = std::chrono::steady_clock::now();
  pipeline_encrypt(data, recipe, resolver, &report.stage_ms);
  report.encode_ms = ms_since(t_encode);
  report.total_ms = ms_since(t_total);
  return report;
}

} // namespace tiercrypt
