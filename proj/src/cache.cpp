#include "kflag/cache.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "kflag/errors.hpp"
#include "kflag/io.hpp"

namespace kflag {

namespace fs = std::filesystem;

namespace {

ojson key_json(const CacheKey& k) {
  ojson j;
  j["type"] = std::string(1, k.type);
  j["rank"] = k.rank;
  j["family"] = k.family;
  j["version"] = k.version;
  return j;
}

}  // namespace

CacheKey CacheKey::of(const FlagPtr& fv, const std::string& family) {
  return {fv->roots().type(), fv->roots().rank(), family, kCodeVersion};
}

std::string CacheKey::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key_json(*this).dump()) h = (h ^ ch) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string CacheKey::filename() const {
  return std::string(1, type) + std::to_string(rank) + "-" + family + "-" + digest() + ".json";
}

std::string serialize_family(const CacheKey& key, const FlagVariety::Family& classes) {
  ojson j;
  j["key"] = key_json(key);
  ojson arr = ojson::array();
  for (const auto& c : classes) arr.push_back(to_json(c));
  j["classes"] = std::move(arr);
  return j.dump() + "\n";
}

void cache_store(const fs::path& dir, const CacheKey& key, const FlagVariety::Family& classes) {
  fs::create_directories(dir);
  const fs::path target = dir / key.filename();
  std::random_device rd;
  const fs::path tmp = dir / (key.filename() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << serialize_family(key, classes);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<FlagVariety::Family> cache_load(const fs::path& dir, const FlagPtr& fv, const CacheKey& key,
                                              std::string* warning) {
  const fs::path file = dir / key.filename();
  if (!fs::exists(file)) return std::nullopt;
  auto fail = [&](const std::string& why) -> std::optional<FlagVariety::Family> {
    if (warning) *warning = "cache file " + file.string() + " ignored: " + why;
    return std::nullopt;
  };
  try {
    std::ifstream in(file, std::ios::binary);
    ojson j = ojson::parse(in);
    if (j.at("key") != key_json(key)) return fail("key mismatch (stale version?)");
    FlagVariety::Family fam;
    for (const auto& c : j.at("classes")) fam.push_back(class_from_json(fv, c));
    if (fam.size() != static_cast<std::size_t>(fv->size())) return fail("wrong number of classes");
    for (const auto& c : fam)
      if (auto bad = gkm_violation(c)) return fail("GKM check failed: " + *bad);
    return fam;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

void attach_disk_cache(const fs::path& dir, const FlagPtr& fv, const std::vector<std::string>& families,
                       std::function<void(const std::string&)> warn) {
  auto wanted = [families](const std::string& name) {
    return std::find(families.begin(), families.end(), name) != families.end();
  };
  std::weak_ptr<const FlagVariety> weak = fv;
  FlagVariety::Persistence p;
  p.load = [=](const std::string& name) -> std::optional<FlagVariety::Family> {
    auto self = weak.lock();
    if (!self || !wanted(name)) return std::nullopt;
    std::string w;
    auto fam = cache_load(dir, self, CacheKey::of(self, name), &w);
    if (!w.empty() && warn) warn(w);
    return fam;
  };
  p.store = [=](const std::string& name, const FlagVariety::Family& fam) {
    auto self = weak.lock();
    if (!self || !wanted(name)) return;
    try {
      cache_store(dir, CacheKey::of(self, name), fam);
    } catch (const std::exception& e) {
      if (warn) warn(std::string("cache write failed: ") + e.what());
    }
  };
  fv->set_persistence(std::move(p));
}

std::vector<std::string> cache_prime(const fs::path& dir, const FlagPtr& fv, const std::vector<std::string>& families,
                                     std::string* warnings) {
  std::vector<std::string> loaded;
  for (const auto& name : families) {
    std::string warn;
    auto fam = cache_load(dir, fv, CacheKey::of(fv, name), &warn);
    if (!warn.empty() && warnings) *warnings += warn + "\n";
    if (!fam) continue;
    fv->family(name, [&] { return std::move(*fam); });
    loaded.push_back(name);
  }
  return loaded;
}

std::vector<std::string> cache_flush(const fs::path& dir, const FlagPtr& fv, const std::vector<std::string>& families) {
  std::vector<std::string> written;
  for (const auto& [name, fam] : fv->built_families()) {
    if (std::find(families.begin(), families.end(), name) == families.end()) continue;
    const CacheKey key = CacheKey::of(fv, name);
    if (fs::exists(dir / key.filename())) continue;
    cache_store(dir, key, *fam);
    written.push_back(name);
  }
  return written;
}

}  // namespace kflag
