#pragma once

#include <filesystem>
#include <string>

#include "tiercrypt/pipeline.hpp"
#include "tiercrypt/store.hpp"

namespace tiercrypt {

struct BenchReport {
  std::size_t file_bytes = 0;
  std::size_t word_count = 0; // whitespace-separated tokens
  double keygen_ms = 0;       // throwaway keypair at the recipe's key size
  StageTimings stage_ms;
  double encode_ms = 0;
  double total_ms = 0;
  std::string machine;
};

std::string bench_report_to_json(const BenchReport& report);

/// Times one throwaway keygen (textbook recipes) plus one full encode of the
/// file, stage by stage. Measurements only; no pass/fail judgment.
BenchReport run_bench(const std::filesystem::path& file, const std::string& recipe_id,
                      const FileStore& store, const std::string& machine_note = "");

} // namespace tiercrypt
