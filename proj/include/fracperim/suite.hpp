#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracperim {

struct SuiteConfig {
  std::uint64_t seed = 0;
  double tol_scale = 1.0;     ///< multiplies every floating-point tolerance
  std::vector<int> criteria;  ///< empty selects all of 1..12
  std::size_t certificate_trials = 1000;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  nlohmann::json detail;
};

struct SuiteResult {
  std::vector<CriterionResult> results;
  bool pass() const;
  nlohmann::json to_json() const;
};

inline constexpr int kCriterionCount = 12;
const char* criterion_title(int id);

/// Runs the acceptance battery on generated instances. Deterministic given the config;
/// `progress` (optional) is called after each criterion.
SuiteResult run_suite(const SuiteConfig& cfg,
                      const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace fracperim
