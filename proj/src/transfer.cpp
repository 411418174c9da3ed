#include "tiercrypt/transfer.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <fstream>
#include <random>

namespace tiercrypt {

namespace fs = std::filesystem;

namespace {

class Socket {
public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  Socket& operator=(Socket&& other) noexcept {
    if (this != &other) {
      close();
      fd_ = other.fd_;
      other.fd_ = -1;
    }
    return *this;
  }
  ~Socket() { close(); }

  int fd() const { return fd_; }
  void close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

private:
  int fd_ = -1;
};

void write_all(int fd, const uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n <= 0) throw Error(ErrorCode::ERR_CONNECTION, std::string("send: ") + std::strerror(errno));
    data += n;
    len -= std::size_t(n);
  }
}

void read_exact(int fd, uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::recv(fd, data, len, 0);
    if (n == 0) throw Error(ErrorCode::ERR_TRUNCATED, "peer closed mid-frame");
    if (n < 0) throw Error(ErrorCode::ERR_CONNECTION, std::string("recv: ") + std::strerror(errno));
    data += n;
    len -= std::size_t(n);
  }
}

// Reads one frame from the stream, walking the length fields so the payload
// buffer is only sized after magic/version pass frame_decode's checks.
Frame read_frame(int fd, uint64_t max_payload) {
  Bytes buf(8);
  read_exact(fd, buf.data(), 8);
  if (std::memcmp(buf.data(), kFrameMagic, 4) != 0)
    throw Error(ErrorCode::ERR_BAD_MAGIC, "frame does not start with TTEA");
  if (buf[4] != kFrameVersion)
    throw Error(ErrorCode::ERR_BAD_MAGIC, "unsupported frame version " + std::to_string(buf[4]));
  const uint16_t name_len = uint16_t(buf[6]) << 8 | buf[7];
  std::size_t off = buf.size();
  buf.resize(off + name_len + 8);
  read_exact(fd, buf.data() + off, name_len + 8);
  uint64_t payload_len = 0;
  for (int i = 0; i < 8; ++i) payload_len = payload_len << 8 | buf[off + name_len + i];
  if (payload_len > max_payload)
    throw Error(ErrorCode::ERR_PAYLOAD_TOO_LARGE,
                std::to_string(payload_len) + " bytes exceeds the configured maximum");
  off = buf.size();
  buf.resize(off + payload_len + 32);
  read_exact(fd, buf.data() + off, payload_len + 32);
  return frame_decode(buf, max_payload);
}

Socket connect_to(const std::string& host, uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* result = nullptr;
  int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &result);
  if (rc != 0)
    throw Error(ErrorCode::ERR_CONNECTION, host + ": " + gai_strerror(rc));
  Socket sock;
  std::string last_error = "no addresses";
  for (addrinfo* ai = result; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      sock = Socket(fd);
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(result);
  if (sock.fd() < 0)
    throw Error(ErrorCode::ERR_CONNECTION, host + ":" + std::to_string(port) + ": " + last_error);
  return sock;
}

Bytes read_whole_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ERR_IO, "cannot read " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

bool safe_file_name(const std::string& name) {
  if (name.empty() || name.size() > 255) return false;
  if (name == "." || name == "..") return false;
  for (char c : name)
    if (c == '/' || c == '\\' || uint8_t(c) < 0x20) return false;
  return true;
}

void write_file_atomic(const fs::path& dir, const std::string& name, const Bytes& data) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = dir / (".incoming-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter.fetch_add(1)) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ERR_IO, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
    if (!out.good()) throw Error(ErrorCode::ERR_IO, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, dir / name, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::ERR_IO, "cannot place " + name + ": " + ec.message());
  }
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

} // namespace

TransferReport send_file(const std::string& host, uint16_t port, const fs::path& file,
                         const std::string& recipe_id, const FileStore& store) {
  const auto t_total = std::chrono::steady_clock::now();
  TransferReport report;

  Bytes data = read_whole_file(file);
  report.file_bytes = data.size();
  const Sha256 local_digest = sha256(data);

  Recipe recipe = store.get_recipe(recipe_id);
  auto resolver = [&store](const std::string& id) { return store.get_key(id); };

  const auto t_encrypt = std::chrono::steady_clock::now();
  MaskedEnvelope env = pipeline_encrypt(data, recipe, resolver, &report.stage_ms);
  std::string env_json = envelope_to_json(env);
  report.encrypt_ms = ms_since(t_encrypt);

  Bytes payload(env_json.begin(), env_json.end());
  report.payload_bytes = payload.size();
  Bytes wire = frame_encode(file.filename().string(), payload);

  const auto t_net = std::chrono::steady_clock::now();
  Socket sock = connect_to(host, port);
  write_all(sock.fd(), wire.data(), wire.size());
  Frame reply = read_frame(sock.fd(), kDefaultMaxPayload);
  report.network_ms = ms_since(t_net);
  report.total_ms = ms_since(t_total);

  if (reply.command == FrameCommand::ACK) {
    report.success = true;
    report.ack_digest_ok = reply.payload.size() == local_digest.size() &&
                           std::equal(local_digest.begin(), local_digest.end(),
                                      reply.payload.begin());
  } else {
    report.success = false;
    report.error.assign(reply.payload.begin(), reply.payload.end());
  }
  return report;
}

TransferServer::TransferServer(Options options) : options_(std::move(options)) {
  fs::create_directories(options_.out_dir);

  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::ERR_CONNECTION, "cannot create socket");
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (options_.bind_host.empty() || options_.bind_host == "0.0.0.0")
    addr.sin_addr.s_addr = INADDR_ANY;
  else if (::inet_pton(AF_INET, options_.bind_host.c_str(), &addr.sin_addr) != 1)
    throw Error(ErrorCode::ERR_CONNECTION, "cannot parse bind address " + options_.bind_host);

  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
    throw Error(ErrorCode::ERR_CONNECTION, std::string("bind: ") + std::strerror(errno));
  if (::listen(listen_fd_, 16) != 0)
    throw Error(ErrorCode::ERR_CONNECTION, std::string("listen: ") + std::strerror(errno));

  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TransferServer::~TransferServer() { stop(); }

void TransferServer::run() { accept_loop(); }

void TransferServer::start() {
  acceptor_ = std::thread([this] { accept_loop(); });
}

void TransferServer::stop() {
  if (!stopping_.exchange(true)) {
    if (listen_fd_ >= 0) {
      ::shutdown(listen_fd_, SHUT_RDWR);
      ::close(listen_fd_);
      listen_fd_ = -1;
    }
  }
  if (acceptor_.joinable()) acceptor_.join();
  std::lock_guard<std::mutex> lock(workers_mu_);
  for (auto& worker : workers_)
    if (worker.joinable()) worker.join();
  workers_.clear();
}

void TransferServer::accept_loop() {
  while (!stopping_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) break; // listener closed or fatal error
    {
      std::lock_guard<std::mutex> lock(workers_mu_);
      workers_.emplace_back([this, fd] { handle_session(fd); });
    }
    std::size_t handled = ++sessions_;
    if (options_.max_sessions > 0 && handled >= options_.max_sessions) break;
  }
}

void TransferServer::handle_session(int fd) {
  Socket sock(fd);
  try {
    Frame frame = read_frame(sock.fd(), options_.max_payload);
    if (frame.command != FrameCommand::PUT)
      throw Error(ErrorCode::ERR_BAD_VALUE, "expected a PUT frame");
    if (!safe_file_name(frame.name))
      throw Error(ErrorCode::ERR_BAD_VALUE, "unacceptable file name");

    FileStore store(options_.store_dir);
    std::string env_json(frame.payload.begin(), frame.payload.end());
    MaskedEnvelope env = envelope_from_json(env_json);
    Recipe recipe = store.get_recipe(env.recipe_id);
    auto resolver = [&store](const std::string& id) { return store.get_key(id); };
    Bytes plain = pipeline_decrypt(env, recipe, resolver);
    write_file_atomic(options_.out_dir, frame.name, plain);

    Sha256 digest = sha256(plain);
    Frame ack{FrameCommand::ACK, frame.name, Bytes(digest.begin(), digest.end())};
    Bytes wire = frame_encode(ack);
    write_all(sock.fd(), wire.data(), wire.size());
  } catch (const std::exception& e) {
    try {
      std::string reason = e.what();
      Frame err{FrameCommand::ERR, "", Bytes(reason.begin(), reason.end())};
      Bytes wire = frame_encode(err);
      write_all(sock.fd(), wire.data(), wire.size());
    } catch (...) {
      // peer is gone; nothing left to report
    }
  }
}

} // namespace tiercrypt
