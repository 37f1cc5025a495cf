#pragma once

// Seeded numerical batteries over the library: identities, monotonicity
// properties, broadcasting, recovery, monogamy and the r_ex properties.
// Each suite returns named checks with the measured worst case.

#include <cstdint>
#include <string>
#include <vector>

#include "qcmi/optimize.hpp"

namespace qcmi {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool passed() const;
  std::vector<SuiteCheck> failures() const;
};

struct SuiteOptions {
  std::size_t trials = 0;  // 0 means the suite's default
  std::uint64_t seed = 20240611;
  OptimizerConfig optimizer{};
};

/// measured <= tolerance.
SuiteCheck check_le(std::string name, double measured, double tolerance, std::string detail = {});
/// measured >= tolerance.
SuiteCheck check_ge(std::string name, double measured, double tolerance, std::string detail = {});

/// Exact CMI values of the worked example.
SuiteReport example_suite(const SuiteOptions& opts = {});

/// Discord decomposition R(A;E|S) of the worked example.
SuiteReport example_discord_suite(const SuiteOptions& opts = {});

/// Decomposition and capacity identities along random trajectories
/// (default 200).
SuiteReport identity_suite(const SuiteOptions& opts = {});

/// Environment channels, local operations on S, extensions of E and the
/// flow of I(A:E|S) (default 100 trials each).
SuiteReport property_suite(const SuiteOptions& opts = {});

/// Broadcasting of classical parties, Naimark dilation and redundancy
/// (default 20 trials per family).
SuiteReport broadcast_suite(const SuiteOptions& opts = {});

/// Composite extension and its exact recovery (default 50 pairs).
SuiteReport recovery_suite(const SuiteOptions& opts = {});

/// Koashi-Winter equality (default 20 random pure states plus fixtures).
SuiteReport koashi_winter_suite(const SuiteOptions& opts = {});

/// Generalized trade-off on the worked example, its E1/E2 split and rank-2
/// setting states.
SuiteReport generalized_monogamy_suite(const SuiteOptions& opts = {});

/// classical_cmi against a Fibonacci grid of projective qubit measurements
/// (default 10 states, 10^4 grid points).
SuiteReport discord_oracle_suite(const SuiteOptions& opts = {});

/// r_ex on structured, product and Bell-type fixtures and its invariance and
/// monotonicity properties.
SuiteReport rex_suite(const SuiteOptions& opts = {});

}  // namespace qcmi
