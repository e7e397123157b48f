#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eghz::cli {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// "metric", "associativity", "derivation", "lhv", "codecs", "sign-ghz".
const std::vector<std::string>& suite_names();

/// Runs one invariant suite with `samples` seeded cases. Throws
/// std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name, int samples, std::uint64_t seed);

}  // namespace eghz::cli
