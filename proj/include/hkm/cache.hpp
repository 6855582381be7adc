#pragma once

#include "hkm/hk_engine.hpp"

#include <atomic>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hkm {

/// Changing the engine tag invalidates every cache entry.
inline constexpr const char* kEngineVersion = "hkm-engine-1";

/// Canonical one-line serialization of a colength query: p, variables,
/// order, formatted relations and ideal generators.
std::string canonical_query(const RingPresentation& ring, const Ideal& ideal, MonomialOrder order);

/// Lower-case hex SHA-256 of `text`.
std::string sha256_hex(const std::string& text);

/// Content-addressed store of colength results.
///
/// Layout: <dir>/<first two hex digits>/<sha256 of canonical query>.json.
/// Each file holds the engine tag, the full query and the result. Writes go
/// to a temporary file in the same directory followed by a rename, so
/// concurrent writers of distinct keys never observe partial files.
class ColengthCache {
 public:
  explicit ColengthCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const noexcept { return directory_; }

  /// Empty on a miss, a stale engine tag, or an unreadable entry.
  std::optional<ColengthResult> lookup(const std::string& canonical) const;
  void store(const std::string& canonical, const ColengthResult& result) const;

  /// A ColengthSource that consults the cache before computing with `options`.
  ColengthSource source(EngineOptions options);

  std::filesystem::path entry_path(const std::string& canonical) const;
  /// Entry files, sorted by path.
  std::vector<std::filesystem::path> entries() const;

  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  std::filesystem::path directory_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

/// Serialized entry bytes, shared by store() and verification.
std::string serialize_entry(const std::string& canonical, const ColengthResult& result);

/// Recomputes the colength described by a canonical query from scratch.
ColengthResult recompute_query(const std::string& canonical, const GroebnerOptions& options = {});

struct CacheVerification {
  std::size_t total_entries = 0;
  std::size_t checked = 0;
  std::vector<std::string> mismatches;  // entry path and reason

  bool ok() const { return mismatches.empty(); }
};

/// Recomputes `samples` entries chosen deterministically (seeded shuffle of the
/// sorted entry list) and compares the re-serialized bytes with the files.
CacheVerification verify_cache(const ColengthCache& cache, std::size_t samples = 20,
                               const GroebnerOptions& options = {});

}  // namespace hkm
