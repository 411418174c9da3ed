#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tiercrypt/bench.hpp"
#include "tiercrypt/pipeline.hpp"
#include "tiercrypt/store.hpp"
#include "tiercrypt/transfer.hpp"

namespace {

using namespace tiercrypt;

constexpr uint16_t kDefaultPort = 7441;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

uint16_t default_port() {
  std::string v = env_or("TIERCRYPT_PORT", "");
  if (v.empty()) return kDefaultPort;
  int port = std::stoi(v);
  if (port < 1 || port > 65535) throw Error(ErrorCode::ERR_BAD_VALUE, "TIERCRYPT_PORT out of range");
  return uint16_t(port);
}

// "host" or "host:port"
std::pair<std::string, uint16_t> split_addr(const std::string& addr, uint16_t fallback) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) return {addr, fallback};
  int port = std::stoi(addr.substr(colon + 1));
  if (port < 1 || port > 65535) throw Error(ErrorCode::ERR_BAD_VALUE, "port out of range");
  return {addr.substr(0, colon), uint16_t(port)};
}

Bytes read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ERR_IO, "cannot read " + path);
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file_or_die(const std::string& path, const uint8_t* data, std::size_t len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::ERR_IO, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(data), std::streamsize(len));
  if (!out.good()) throw Error(ErrorCode::ERR_IO, "short write to " + path);
}

std::string random_seed() {
  std::random_device rd;
  std::string seed;
  for (int i = 0; i < 4; ++i) seed += std::to_string(rd()) + ".";
  return seed;
}

std::optional<char> parse_pulse_flag(const std::string& v, const char* flag) {
  if (v.empty()) return std::nullopt;
  if (v != "+" && v != "-")
    throw Error(ErrorCode::ERR_BAD_VALUE, std::string(flag) + " must be '+' or '-'");
  return v[0];
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiercrypt - layered-encoding secure file transfer toolkit"};
  app.require_subcommand(1);

  std::string store_dir = env_or("TIERCRYPT_STORE", "./store");
  app.add_option("--store", store_dir, "store directory (env TIERCRYPT_STORE)")
      ->capture_default_str();

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate an RSA keypair");
  unsigned kg_bits = 2048;
  std::string kg_id, kg_seed;
  bool kg_overwrite = false;
  keygen->add_option("--bits", kg_bits, "prime size in bits (modulus is ~2x)")
      ->capture_default_str();
  keygen->add_option("--id", kg_id, "key id")->required();
  keygen->add_option("--seed", kg_seed, "deterministic seed (default: OS entropy)");
  keygen->add_flag("--overwrite", kg_overwrite, "replace an existing key");

  // recipe new|list|show
  auto* recipe_cmd = app.add_subcommand("recipe", "manage recipes");
  recipe_cmd->require_subcommand(1);
  auto* rnew = recipe_cmd->add_subcommand("new", "create and store a recipe");
  Recipe nr;
  std::string nr_salt, nr_factor, nr_level, nr_polarity;
  bool nr_overwrite = false;
  nr.tier1.mode = "textbook_rsa";
  nr.codec.scheme = "B4B5";
  nr.series.kind = "SIN";
  nr.series.n = 3;
  rnew->add_option("--id", nr.recipe_id, "recipe id")->required();
  rnew->add_option("--mode", nr.tier1.mode, "textbook_rsa | paper_scalar")->capture_default_str();
  rnew->add_option("--salt", nr_salt, "salt (decimal, >= 1)")->required();
  rnew->add_option("--factor", nr_factor, "scalar factor (paper_scalar only)");
  rnew->add_option("--pack", nr.tier1.pack, "paper_variable | fixed_width3")
      ->capture_default_str();
  rnew->add_option("--key", nr.tier1.key_id, "key id (textbook_rsa only)");
  rnew->add_option("--base", nr.base, "tier-2 radix, 2..36")->capture_default_str();
  rnew->add_option("--codec", nr.codec.scheme, "codec scheme id")->capture_default_str();
  rnew->add_option("--initial-level", nr_level, "initial level for NRZ_I/DIFF_MANCHESTER");
  rnew->add_option("--initial-polarity", nr_polarity, "first pulse polarity for AMI/PSEUDOTERNARY/B8ZS");
  rnew->add_option("--series", nr.series.kind, "SIN | COS | EXP")->capture_default_str();
  rnew->add_option("--n", nr.series.n, "series truncation index")->capture_default_str();
  rnew->add_flag("--overwrite", nr_overwrite, "replace an existing recipe");
  auto* rlist = recipe_cmd->add_subcommand("list", "list recipe ids");
  auto* rshow = recipe_cmd->add_subcommand("show", "print a stored recipe");
  std::string rshow_id;
  rshow->add_option("--id", rshow_id, "recipe id")->required();

  // encode / decode
  auto* encode = app.add_subcommand("encode", "encrypt a file into an envelope");
  std::string enc_in, enc_out, enc_recipe;
  encode->add_option("--in", enc_in)->required();
  encode->add_option("--out", enc_out)->required();
  encode->add_option("--recipe", enc_recipe)->required();

  auto* decode = app.add_subcommand("decode", "decrypt an envelope");
  std::string dec_in, dec_out, dec_recipe;
  decode->add_option("--in", dec_in)->required();
  decode->add_option("--out", dec_out)->required();
  decode->add_option("--recipe", dec_recipe, "recipe id (default: envelope header)");

  // send / serve
  auto* send = app.add_subcommand("send", "encrypt and transmit a file");
  std::string send_to, send_file_path, send_recipe;
  uint16_t send_port = 0;
  send->add_option("--to", send_to, "host or host:port")->required();
  send->add_option("--file", send_file_path)->required();
  send->add_option("--recipe", send_recipe)->required();
  send->add_option("--port", send_port, "port (default: TIERCRYPT_PORT or 7441)");

  auto* serve = app.add_subcommand("serve", "receive, decrypt, and store files");
  std::string serve_listen = "0.0.0.0";
  std::string serve_out;
  uint16_t serve_port = 0;
  uint64_t serve_max_payload = kDefaultMaxPayload;
  bool serve_once = false;
  serve->add_option("--listen", serve_listen, "bind host or host:port")->capture_default_str();
  serve->add_option("--out", serve_out, "directory for received plaintext")->required();
  serve->add_option("--port", serve_port, "port (default: TIERCRYPT_PORT or 7441)");
  serve->add_option("--max-payload", serve_max_payload, "frame payload cap in bytes")
      ->capture_default_str();
  serve->add_flag("--once", serve_once, "exit after one session");

  // bench
  auto* bench = app.add_subcommand("bench", "time keygen and a full encode");
  std::string bench_file, bench_recipe, bench_note;
  bench->add_option("--file", bench_file)->required();
  bench->add_option("--recipe", bench_recipe)->required();
  bench->add_option("--note", bench_note, "machine note for the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    FileStore store{store_dir};

    if (keygen->parsed()) {
      std::string seed = kg_seed.empty() ? random_seed() : kg_seed;
      KeyMaterial key = generate_keypair(kg_bits, seed, kg_id);
      store.put_key(key, kg_overwrite);
      std::cerr << "wrote key " << kg_id << " (" << kg_bits << "-bit primes, "
                << bit_length(key.n) << "-bit modulus)\n";
    } else if (rnew->parsed()) {
      nr.tier1.salt = BigInt(nr_salt);
      if (!nr_factor.empty()) nr.tier1.factor = BigInt(nr_factor);
      nr.codec.initial_level = parse_pulse_flag(nr_level, "--initial-level");
      nr.codec.initial_polarity = parse_pulse_flag(nr_polarity, "--initial-polarity");
      validate_recipe(nr);
      store.put_recipe(nr, nr_overwrite);
      std::cerr << "wrote recipe " << nr.recipe_id << "\n";
    } else if (rlist->parsed()) {
      for (const auto& id : store.list_recipes()) std::cout << id << "\n";
    } else if (rshow->parsed()) {
      std::cout << recipe_to_json(store.get_recipe(rshow_id));
    } else if (encode->parsed()) {
      Bytes data = read_file_or_die(enc_in);
      Recipe recipe = store.get_recipe(enc_recipe);
      auto resolver = [&store](const std::string& id) { return store.get_key(id); };
      std::string json = envelope_to_json(pipeline_encrypt(data, recipe, resolver));
      write_file_or_die(enc_out, reinterpret_cast<const uint8_t*>(json.data()), json.size());
      std::cerr << "encoded " << data.size() << " bytes -> " << enc_out << "\n";
    } else if (decode->parsed()) {
      Bytes raw = read_file_or_die(dec_in);
      MaskedEnvelope env = envelope_from_json(std::string(raw.begin(), raw.end()));
      std::string recipe_id = dec_recipe.empty() ? env.recipe_id : dec_recipe;
      Recipe recipe = store.get_recipe(recipe_id);
      auto resolver = [&store](const std::string& id) { return store.get_key(id); };
      Bytes plain = pipeline_decrypt(env, recipe, resolver);
      write_file_or_die(dec_out, plain.data(), plain.size());
      std::cerr << "decoded " << plain.size() << " bytes -> " << dec_out << "\n";
    } else if (send->parsed()) {
      auto [host, port] = split_addr(send_to, send_port ? send_port : default_port());
      TransferReport report = send_file(host, port, send_file_path, send_recipe, store);
      if (!report.success) {
        std::cerr << "error: transfer rejected: " << report.error << "\n";
        return 1;
      }
      std::cerr << "sent " << report.file_bytes << " bytes (" << report.payload_bytes
                << " on the wire) in " << report.total_ms << " ms, ack digest "
                << (report.ack_digest_ok ? "ok" : "MISMATCH") << "\n";
      if (!report.ack_digest_ok) return 1;
    } else if (serve->parsed()) {
      auto [host, port] = split_addr(serve_listen, serve_port ? serve_port : default_port());
      TransferServer::Options options;
      options.bind_host = host;
      options.port = port;
      options.store_dir = store_dir;
      options.out_dir = serve_out;
      options.max_payload = serve_max_payload;
      options.max_sessions = serve_once ? 1 : 0;
      TransferServer server(options);
      std::cerr << "listening on " << host << ":" << server.port() << "\n";
      server.run();
      server.stop();
    } else if (bench->parsed()) {
      BenchReport report = run_bench(bench_file, bench_recipe, store, bench_note);
      std::cout << bench_report_to_json(report);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
