#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace arbor {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view text);

/// Append-only store of computed facts. Each line of the file is
/// "<16 hex digit hash of key> <json {key, value}>"; a later line for the same key is ignored.
/// Without a path the cache lives in memory only.
class FactCache {
 public:
  FactCache() = default;
  /// Loads the file if it exists. Malformed lines throw InvalidArgument.
  explicit FactCache(std::string path);

  std::optional<nlohmann::json> get(const std::string& key);
  void put(const std::string& key, const nlohmann::json& value);

  std::size_t size() const { return facts_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::string path_;
  std::map<std::string, nlohmann::json> facts_;
  std::size_t hits_ = 0, misses_ = 0;
};

}  // namespace arbor
