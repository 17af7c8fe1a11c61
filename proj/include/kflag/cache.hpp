#pragma once

// On-disk persistence of class families.  Files are content-addressed by
// (type, rank, family, code version); writes go through a temporary file and
// a rename, and loads re-check the GKM condition before the data is trusted.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "kflag/kclass.hpp"

namespace kflag {

/// Bumped whenever a stored family could change meaning.
inline constexpr const char* kCodeVersion = "kflag-1.0.0/format-1";

struct CacheKey {
  char type = 'A';
  int rank = 1;
  std::string family;
  std::string version = kCodeVersion;

  static CacheKey of(const FlagPtr& fv, const std::string& family);
  /// 16 hex digits of FNV-1a over the key fields.
  std::string digest() const;
  std::string filename() const;
};

/// Serialized family: {"key": {...}, "classes": [LocalizedClass...]}.
std::string serialize_family(const CacheKey& key, const FlagVariety::Family& classes);

void cache_store(const std::filesystem::path& dir, const CacheKey& key, const FlagVariety::Family& classes);
/// nullopt when the file is absent; on a corrupt, stale or non-GKM file also
/// nullopt, with the reason in *warning.
std::optional<FlagVariety::Family> cache_load(const std::filesystem::path& dir, const FlagPtr& fv, const CacheKey& key,
                                              std::string* warning = nullptr);

/// Makes fv read the named families from dir on first use and write them
/// there after building.  Warnings (ignored files) go to `warn`, one call per
/// file; it must be safe to call from worker threads.
void attach_disk_cache(const std::filesystem::path& dir, const FlagPtr& fv, const std::vector<std::string>& families,
                       std::function<void(const std::string&)> warn = {});

/// Installs every cached family for fv found in dir into its in-process
/// cache; returns the names loaded.  Warnings go to *warnings (one per line).
std::vector<std::string> cache_prime(const std::filesystem::path& dir, const FlagPtr& fv,
                                     const std::vector<std::string>& families, std::string* warnings = nullptr);
/// Writes the named families fv has built that are not already on disk.
std::vector<std::string> cache_flush(const std::filesystem::path& dir, const FlagPtr& fv,
                                     const std::vector<std::string>& families);

}  // namespace kflag
