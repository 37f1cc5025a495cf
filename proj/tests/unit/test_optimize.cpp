#include <gtest/gtest.h>

#include <cmath>

#include "qcmi/optimize.hpp"

using namespace qcmi;

TEST(NelderMead, Quadratic) {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 0.5) * (x[1] + 0.5);
  };
  const auto r = nelder_mead(f, {0.0, 0.0}, 0.5, 2000, 1e-14);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], -0.5, 1e-5);
  EXPECT_LT(r.value, 1e-10);
}

TEST(NelderMead, RosenbrockConverges) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const auto r = nelder_mead(f, {-1.2, 1.0}, 0.5, 5000, 1e-16);
  EXPECT_LT(r.value, 1e-8);
}

TEST(NelderMead, RespectsBudget) {
  std::size_t calls = 0;
  const Objective f = [&](std::span<const double> x) {
    ++calls;
    return std::sin(x[0]) + std::cos(3 * x[1]) + x[2] * x[2];
  };
  const auto r = nelder_mead(f, {0, 0, 0}, 0.6, 50, 0.0);
  EXPECT_LE(r.evaluations, 50u);
  EXPECT_EQ(r.evaluations, calls);
}

TEST(Halton, DeterministicAndInRange) {
  const auto a = halton_angles(7, 5, 42), b = halton_angles(7, 5, 42), c = halton_angles(7, 5, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (double v : a) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 2 * M_PI);
  }
}

TEST(Minimize, FindsGlobalMinimumOfMultimodal) {
  // Non-negative, zero only at the origin modulo 2 pi, with local minima near
  // multiples of pi / 2.
  const Objective f = [](std::span<const double> x) {
    return 2.0 - std::cos(x[0]) - std::cos(x[1]) + 0.5 * (2.0 - std::cos(4 * x[0]) - std::cos(4 * x[1]));
  };
  OptimizerConfig cfg;
  cfg.restarts = 16;
  EXPECT_LT(minimize(f, 2, cfg).value, 1e-8);
}

TEST(Minimize, MonotoneInRestartsAndThreadIndependent) {
  const Objective f = [](std::span<const double> x) {
    return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.1 * std::sin(x[0] + x[1]);
  };
  OptimizerConfig cfg;
  double prev = 1e300;
  for (std::size_t r : {1u, 2u, 4u, 8u}) {
    cfg.restarts = r;
    const double v = minimize(f, 2, cfg).value;
    EXPECT_LE(v, prev);
    prev = v;
  }
  cfg.restarts = 8;
  cfg.threads = 3;
  EXPECT_EQ(minimize(f, 2, cfg).value, prev);
}

TEST(Minimize, UsesSuppliedStartsFirst) {
  const Objective f = [](std::span<const double> x) { return (x[0] - 0.25) * (x[0] - 0.25); };
  OptimizerConfig cfg;
  cfg.restarts = 1;
  const auto r = minimize(f, 1, cfg, {{0.25}});
  EXPECT_LT(r.value, 1e-12);
  EXPECT_EQ(r.best_restart, 0u);
}
