#include "arbor/criterion/cache.hpp"

#include <cstdio>
#include <fstream>

#include "arbor/error.hpp"

namespace arbor {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

FactCache::FactCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.empty()) continue;
    const auto bad = [&] { return InvalidArgument("cache " + path_ + ":" + std::to_string(no) + ": malformed line"); };
    if (line.size() < 18 || line[16] != ' ') throw bad();
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line.substr(17));
    } catch (const nlohmann::json::exception&) {
      throw bad();
    }
    if (!rec.contains("key") || !rec.contains("value") || !rec["key"].is_string()) throw bad();
    const std::string key = rec["key"];
    if (line.substr(0, 16) != hex(fnv1a(key))) throw bad();
    facts_.emplace(key, rec["value"]);
  }
}

std::optional<nlohmann::json> FactCache::get(const std::string& key) {
  auto it = facts_.find(key);
  if (it == facts_.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void FactCache::put(const std::string& key, const nlohmann::json& value) {
  if (!facts_.emplace(key, value).second) return;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("cannot write cache " + path_);
  out << hex(fnv1a(key)) << ' ' << nlohmann::json{{"key", key}, {"value", value}}.dump() << '\n';
}

}  // namespace arbor
