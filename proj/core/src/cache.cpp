#include "gcube/cache.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace gcube {

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string config_hash(std::string_view fingerprint) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fnv1a(fingerprint)));
  return buffer;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {}

std::optional<std::string> ResultCache::lookup(std::string_view command, std::string_view parameters,
                                               std::string_view config, double tolerance) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  const auto wanted_params = nlohmann::json::parse(parameters, nullptr, false);
  std::optional<std::string> hit;
  std::string line;
  while (std::getline(in, line)) {
    const auto entry = nlohmann::json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) continue;
    try {
      if (entry.at("command").get<std::string>() != command) continue;
      if (entry.at("config").get<std::string>() != config) continue;
      if (entry.at("params") != wanted_params) continue;
      if (entry.at("tolerance").get<double>() > tolerance) continue;
      hit = entry.at("result").dump();
    } catch (const nlohmann::json::exception&) {
      continue;
    }
  }
  return hit;
}

void ResultCache::store(std::string_view command, std::string_view parameters, std::string_view config,
                        double tolerance, std::string_view result) const {
  nlohmann::json entry;
  entry["command"] = command;
  entry["params"] = nlohmann::json::parse(parameters);
  entry["config"] = config;
  entry["tolerance"] = tolerance;
  entry["result"] = nlohmann::json::parse(result);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache file " + path_.string());
  out << entry.dump() << '\n';
}

}  // namespace gcube
