#include "tiercrypt/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tiercrypt {

namespace fs = std::filesystem;

namespace {

class StoreLock {
public:
  explicit StoreLock(const fs::path& root) {
    fd_ = ::open((root / ".lock").c_str(), O_CREAT | O_RDWR, 0600);
    if (fd_ < 0) throw Error(ErrorCode::ERR_IO, "cannot open store lock file");
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::ERR_IO, "cannot lock store");
    }
  }
  ~StoreLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  StoreLock(const StoreLock&) = delete;
  StoreLock& operator=(const StoreLock&) = delete;

private:
  int fd_;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ERR_IO, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ERR_IO, "cannot write " + tmp.string());
    out << content;
    if (!out.good()) throw Error(ErrorCode::ERR_IO, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::ERR_IO, "cannot move " + tmp.string() + ": " + ec.message());
}

void put_object(const fs::path& root, const char* kind, const std::string& id,
                const std::string& content, bool overwrite) {
  check_store_id(id);
  StoreLock lock(root);
  fs::path path = root / kind / id;
  if (!overwrite && fs::exists(path))
    throw Error(ErrorCode::ERR_DUPLICATE_ID, std::string(kind) + "/" + id + " already exists");
  write_file_atomic(path, content);
}

std::string get_object(const fs::path& root, const char* kind, const std::string& id) {
  check_store_id(id);
  fs::path path = root / kind / id;
  if (!fs::exists(path))
    throw Error(ErrorCode::ERR_NOT_FOUND, std::string(kind) + "/" + id + " not in store");
  return read_file(path);
}

std::vector<std::string> list_objects(const fs::path& root, const char* kind) {
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(root / kind)) {
    std::string name = entry.path().filename().string();
    if (!name.empty() && name[0] != '.' && !name.ends_with(".tmp")) ids.push_back(name);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void delete_object(const fs::path& root, const char* kind, const std::string& id) {
  check_store_id(id);
  StoreLock lock(root);
  fs::path path = root / kind / id;
  if (!fs::exists(path))
    throw Error(ErrorCode::ERR_NOT_FOUND, std::string(kind) + "/" + id + " not in store");
  fs::remove(path);
}

} // namespace

void check_store_id(const std::string& id) {
  if (id.empty() || id[0] == '.')
    throw Error(ErrorCode::ERR_BAD_ID, "ids must be non-empty and not start with '.'");
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    if (!ok)
      throw Error(ErrorCode::ERR_BAD_ID,
                  std::string("'") + c + "' not allowed in ids ([A-Za-z0-9._-])");
  }
}

FileStore::FileStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_ / "recipes", ec);
  fs::create_directories(root_ / "keys", ec);
  if (ec) throw Error(ErrorCode::ERR_IO, "cannot create store at " + root_.string());
}

void FileStore::put_recipe(const Recipe& r, bool overwrite) {
  put_object(root_, "recipes", r.recipe_id, recipe_to_json(r), overwrite);
}

Recipe FileStore::get_recipe(const std::string& id) const {
  return recipe_from_json(get_object(root_, "recipes", id));
}

std::vector<std::string> FileStore::list_recipes() const { return list_objects(root_, "recipes"); }

void FileStore::delete_recipe(const std::string& id) { delete_object(root_, "recipes", id); }

void FileStore::put_key(const KeyMaterial& key, bool overwrite) {
  put_object(root_, "keys", key.key_id, key_to_json(key), overwrite);
}

KeyMaterial FileStore::get_key(const std::string& id) const {
  return key_from_json(get_object(root_, "keys", id));
}

std::vector<std::string> FileStore::list_keys() const { return list_objects(root_, "keys"); }

void FileStore::delete_key(const std::string& id) { delete_object(root_, "keys", id); }

} // namespace tiercrypt
