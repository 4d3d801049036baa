#include "toricgw/cache.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "toricgw/error.hpp"
#include "toricgw/fan_io.hpp"

namespace toricgw {

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fan_hash(const FanInput& fan) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(fan_to_json(fan).dump())));
  return buf;
}

std::string cache_key(const FanInput& fan, const CurveClass& a, const std::vector<Insertion>& insertions,
                      const SamplingOptions& sampling) {
  std::vector<std::string> marks;
  for (const auto& ins : insertions)
    for (int i = 0; i < ins.multiplicity; ++i) marks.push_back(to_string(ins.monomial));
  std::sort(marks.begin(), marks.end());
  std::string key = fan_hash(fan) + "|" + to_string(a) + "|";
  for (const auto& m : marks) key += m + ";";
  key += "|" + std::to_string(sampling.points) + "," + std::to_string(sampling.seed) + "," +
         std::to_string(sampling.bound);
  return key;
}

std::optional<nlohmann::json> InvariantCache::lookup(const std::string& key) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::optional<nlohmann::json> hit;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;  // tolerate a torn last line
    if (rec.value("key", "") == key && rec.contains("result")) hit = rec.at("result");
  }
  return hit;
}

void InvariantCache::store(const std::string& key, const nlohmann::json& value) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write cache " + path_);
  auto now = std::chrono::system_clock::now().time_since_epoch();
  nlohmann::json rec{{"key", key},
                     {"result", value},
                     {"version", kToolVersion},
                     {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()}};
  out << rec.dump() << '\n';
}

}  // namespace toricgw
