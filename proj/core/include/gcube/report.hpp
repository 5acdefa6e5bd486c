#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gcube {

/// Outcome of an exhaustive or randomized check. `failures` holds one
/// human-readable line per counterexample.
struct VerificationReport {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
  void fail(std::string message) { failures.push_back(std::move(message)); }
  void merge(const VerificationReport& other) {
    checks += other.checks;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }
};

}  // namespace gcube
