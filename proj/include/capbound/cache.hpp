#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <unistd.h>

namespace capbound {

// Content-addressed result cache keyed by a canonical computation
// descriptor (graph encoding + operation + parameters). Entries echo
// their descriptor so hash collisions and torn writes are detected and
// treated as misses; writes go through a temp file plus rename, so a
// concurrent reader never sees a partial entry.
class ComputationCache {
 public:
  explicit ComputationCache(std::string dir = "") : dir_(std::move(dir)) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }

  static const char* env_var() { return "CAPBOUND_CACHE_DIR"; }

  // disabled (pure pass-through) when the variable is unset
  static ComputationCache from_env() {
    const char* dir = std::getenv(env_var());
    return ComputationCache(dir ? dir : "");
  }

  bool enabled() const { return !dir_.empty(); }

  // Returns the cached payload for the descriptor, or computes, stores,
  // and returns it. A `valid` predicate may reject stored payloads;
  // rejected or corrupt entries are discarded and recomputed.
  std::string get_or_compute(const std::string& descriptor,
                             const std::function<std::string()>& compute,
                             const std::function<bool(const std::string&)>& valid = {}) const {
    if (!enabled()) return compute();
    std::string path = path_for(descriptor);
    {
      std::ifstream in(path, std::ios::binary);
      if (in) {
        std::string stored_key;
        std::getline(in, stored_key);
        std::ostringstream rest;
        rest << in.rdbuf();
        std::string payload = rest.str();
        if (stored_key == descriptor && (!valid || valid(payload))) return payload;
        std::fprintf(stderr, "cache: discarding bad entry %s\n", path.c_str());
        std::error_code ec;
        std::filesystem::remove(path, ec);
      }
    }
    std::string payload = compute();
    std::string tmp = path + ".tmp" + std::to_string(static_cast<unsigned>(
                                          std::hash<std::string>{}(descriptor) ^
                                          static_cast<std::size_t>(::getpid())));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << descriptor << '\n' << payload;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);  // atomic on POSIX
    if (ec) std::filesystem::remove(tmp, ec);
    return payload;
  }

 private:
  // FNV-1a; the in-file descriptor echo guards against collisions
  std::string path_for(const std::string& descriptor) const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : descriptor) {
      h ^= c;
      h *= 1099511628211ull;
    }
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.entry", static_cast<unsigned long long>(h));
    return dir_ + "/" + name;
  }

  std::string dir_;
};

}  // namespace capbound
