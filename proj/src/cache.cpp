#include "zslab/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace zslab {

namespace {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::optional<DiskCache> DiskCache::resolve(const std::optional<std::string>& dir_flag,
                                            bool no_cache) {
  if (no_cache) return std::nullopt;
  std::string dir;
  if (dir_flag && !dir_flag->empty()) {
    dir = *dir_flag;
  } else if (const char* env = std::getenv("ZSLAB_CACHE")) {
    dir = env;
  }
  if (dir.empty()) return std::nullopt;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "warning: cannot create cache directory " << dir << ": "
              << ec.message() << "\n";
    return std::nullopt;
  }
  return DiskCache(dir);
}

std::filesystem::path DiskCache::entry_path(const std::string& key) const {
  return dir_ / ("zslab-" + fnv1a_hex(key) + ".json");
}

std::optional<OrderedJson> DiskCache::load(const std::string& key) const {
  const auto path = entry_path(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  OrderedJson doc = OrderedJson::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("key") ||
      !doc.contains("payload") || doc["key"] != key) {
    std::cerr << "warning: ignoring corrupt or mismatched cache entry " << path
              << "\n";
    return std::nullopt;
  }
  return doc["payload"];
}

void DiskCache::store(const std::string& key, const OrderedJson& payload) const {
  OrderedJson doc;
  doc["key"] = key;
  doc["payload"] = payload;
  const auto path = entry_path(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      std::cerr << "warning: cannot write cache entry " << tmp << "\n";
      return;
    }
    out << doc.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::cerr << "warning: cache rename failed: " << ec.message() << "\n";
}

}  // namespace zslab
