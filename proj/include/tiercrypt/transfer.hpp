#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tiercrypt/frame.hpp"
#include "tiercrypt/pipeline.hpp"
#include "tiercrypt/store.hpp"

namespace tiercrypt {

struct TransferReport {
  bool success = false;
  std::string error;           // server/connection failure reason when !success
  std::size_t file_bytes = 0;
  std::size_t payload_bytes = 0;
  StageTimings stage_ms;       // per-stage encrypt breakdown
  double encrypt_ms = 0;
  double network_ms = 0;
  double total_ms = 0;
  bool ack_digest_ok = false;  // server's plaintext digest matches ours
};

/// Encrypts `file` with the named recipe and streams one PUT frame; waits for
/// the ACK (payload = plaintext SHA-256) or ERR (payload = reason). Connection
/// failures throw ERR_CONNECTION; a server-side ERR is reported, not thrown.
TransferReport send_file(const std::string& host, uint16_t port,
                         const std::filesystem::path& file, const std::string& recipe_id,
                         const FileStore& store);

// Accepts concurrent connections, one PUT per session. Each session decrypts
// immediately and writes the plaintext to out_dir atomically; on any error no
// file appears and the client gets an ERR frame with the reason.
class TransferServer {
public:
  struct Options {
    std::string bind_host = "0.0.0.0";
    uint16_t port = 0; // 0 picks an ephemeral port
    std::filesystem::path store_dir;
    std::filesystem::path out_dir;
    uint64_t max_payload = kDefaultMaxPayload;
    std::size_t max_sessions = 0; // 0 = serve until stop()
  };

  explicit TransferServer(Options options); // binds and listens
  ~TransferServer();

  uint16_t port() const { return port_; }
  std::size_t sessions_handled() const { return sessions_; }

  void run();   // accept loop on the calling thread
  void start(); // accept loop on a background thread
  void stop();  // closes the listener and joins workers

private:
  void accept_loop();
  void handle_session(int fd);

  Options options_;
  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::atomic<std::size_t> sessions_{0};
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::vector<std::thread> workers_;
  std::mutex workers_mu_;
};

} // namespace tiercrypt
