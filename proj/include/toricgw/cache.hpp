#pragma once

// Append-only JSON-lines store of computed invariants.

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "toricgw/localization.hpp"

namespace toricgw {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCacheEnvVar = "TORICGW_CACHE";

std::uint64_t fnv1a(std::string_view data);

/// Hash of the canonical JSON dump of the fan.
std::string fan_hash(const FanInput& fan);

/// Key over fan hash, class, sorted insertions and the sampling parameters.
std::string cache_key(const FanInput& fan, const CurveClass& a, const std::vector<Insertion>& insertions,
                      const SamplingOptions& sampling);

class InvariantCache {
 public:
  explicit InvariantCache(std::string path) : path_(std::move(path)) {}

  /// Last entry recorded for the key, if any.
  std::optional<nlohmann::json> lookup(const std::string& key) const;
  void store(const std::string& key, const nlohmann::json& value) const;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace toricgw
