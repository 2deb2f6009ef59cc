#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "zslab/report.hpp"

namespace zslab {

/// Content-addressed report cache keyed by a digest of the manifest inputs.
/// Entries embed the full key; a digest collision or corrupt file is treated
/// as a miss (with a warning) and recomputed.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Resolves --cache-dir / ZSLAB_CACHE; nullopt when caching is off.
  static std::optional<DiskCache> resolve(const std::optional<std::string>& dir_flag,
                                          bool no_cache);

  std::optional<OrderedJson> load(const std::string& key) const;
  void store(const std::string& key, const OrderedJson& payload) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path entry_path(const std::string& key) const;
  std::filesystem::path dir_;
};

}  // namespace zslab
