#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tiercrypt/keystage.hpp"
#include "tiercrypt/recipe.hpp"

namespace tiercrypt {

// One object per text file under {root}/recipes/{id} and {root}/keys/{id}.
// Writes are atomic (temp file + rename) and serialized through an advisory
// lock file at {root}/.lock; readers do not lock.
class FileStore {
public:
  explicit FileStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  void put_recipe(const Recipe& r, bool overwrite = false);
  Recipe get_recipe(const std::string& id) const;
  std::vector<std::string> list_recipes() const;
  void delete_recipe(const std::string& id);

  void put_key(const KeyMaterial& key, bool overwrite = false);
  KeyMaterial get_key(const std::string& id) const;
  std::vector<std::string> list_keys() const;
  void delete_key(const std::string& id);

private:
  std::filesystem::path root_;
};

/// Ids double as file names: [A-Za-z0-9._-]+, no leading dot. Throws ERR_BAD_ID.
void check_store_id(const std::string& id);

} // namespace tiercrypt
