#pragma once

// Append-only JSON-lines result cache. Each line records one computed
// result under the key (command, parameters, config hash) together with
// the tolerance it was computed at.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace gcube {

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

/// Lowercase 16-digit hex of fnv1a(fingerprint).
std::string config_hash(std::string_view fingerprint);

class ResultCache {
public:
  explicit ResultCache(std::filesystem::path path);

  /// Most recent entry for the key whose tolerance is no looser than
  /// `tolerance`. `parameters` and the returned result are serialized JSON.
  /// Unparseable lines are skipped.
  std::optional<std::string> lookup(std::string_view command, std::string_view parameters,
                                    std::string_view config, double tolerance) const;

  /// Appends one line. Throws std::runtime_error if the file cannot be opened.
  void store(std::string_view command, std::string_view parameters, std::string_view config, double tolerance,
             std::string_view result) const;

  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
};

}  // namespace gcube
