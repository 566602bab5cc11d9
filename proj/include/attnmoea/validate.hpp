#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "attnmoea/metrics.hpp"

namespace attnmoea {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using HvFunction = std::function<double(const Front&, const NormalizationContext&)>;

struct ValidateOptions {
  std::uint64_t seed = 20240611;
  /// Implementation checked by the hypervolume suite. Swapping in a broken
  /// function must make that suite fail.
  HvFunction hv = hv_2d;
  /// Monte Carlo samples per front in the hypervolume suite.
  std::size_t hv_samples = 1'000'000;
};

/// Runs every oracle suite once, in a fixed order: dominance_sort,
/// hypervolume_monte_carlo, igd_brute_force, variance_two_pass,
/// mcs_dual_implementation, reference_front_audit.
std::vector<SuiteResult> run_validation(const ValidateOptions& options = {});

}  // namespace attnmoea
