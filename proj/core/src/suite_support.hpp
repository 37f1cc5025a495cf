#pragma once

#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qcmi/random.hpp"
#include "qcmi/state.hpp"
#include "qcmi/suites.hpp"

namespace qcmi::detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Largest value seen and where it occurred.
struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  std::string where;

  void see(double v, const std::string& at) {
    if (v > value) {
      value = v;
      where = at;
    }
  }
  double or_zero() const { return where.empty() ? 0.0 : value; }
  std::string detail() const { return where.empty() ? "no trials" : "worst at " + where; }
};

inline std::vector<double> dirichlet(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) total += v = e(rng);
  for (auto& v : p) v /= total;
  return p;
}

inline LabeledState mix(const LabeledState& a, const LabeledState& b, double weight_a) {
  return LabeledState(a.layout(), a.matrix() * Complex(weight_a) + b.matrix() * Complex(1.0 - weight_a));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t trials_or(const SuiteOptions& opts, std::size_t fallback) {
  return opts.trials ? opts.trials : fallback;
}

}  // namespace qcmi::detail
