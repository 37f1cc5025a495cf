#pragma once

// Deterministic multi-start Nelder-Mead over unconstrained real parameters.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qcmi {

struct OptimizerConfig {
  std::size_t restarts = 32;
  std::size_t max_evals = 2000;  // per restart, polish included
  double obj_tol = 1e-8;         // simplex converges when its value spread drops below this
  std::uint64_t seed = 0;
  std::size_t outcomes = 0;      // measurement outcomes; 0 means the measured dimension
  double initial_step = 0.6;     // simplex edge in radians
  std::size_t threads = 1;       // restarts run concurrently when > 1
};

using Objective = std::function<double(std::span<const double>)>;

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with reflection 1, expansion 1 + 2/n, contraction
/// 3/4 - 1/(2n) and shrink 1 - 1/n for n parameters.
LocalResult nelder_mead(const Objective& f, std::vector<double> x0, double step, std::size_t max_evals,
                        double obj_tol);

struct SearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;  // some restart stopped on max_evals
};

/// i-th point (i >= 0) of a Halton sequence in [0, 2pi)^dim with a seeded
/// Cranley-Patterson shift. Point i depends only on (i, dim, seed).
std::vector<double> halton_angles(std::size_t index, std::size_t dim, std::uint64_t seed);

/// Minimizes f from cfg.restarts starts. Restart r starts at starts[r] when
/// r < starts.size() and at halton_angles(r - starts.size(), ...) otherwise;
/// each restart is a Nelder-Mead run followed by one polishing run from its
/// end point. The best restart is chosen by (value, restart index), so the
/// result does not depend on thread scheduling and is monotone in restarts.
SearchResult minimize(const Objective& f, std::size_t dim, const OptimizerConfig& cfg,
                      const std::vector<std::vector<double>>& starts = {});

}  // namespace qcmi
