#include "qcmi/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qcmi/error.hpp"
#include "qcmi/random.hpp"

namespace qcmi {

namespace {

std::vector<std::size_t> first_primes(std::size_t n) {
  std::vector<std::size_t> primes;
  for (std::size_t c = 2; primes.size() < n; ++c) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::size_t i, std::size_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

LocalResult nelder_mead(const Objective& f, std::vector<double> x0, double step, std::size_t max_evals,
                        double obj_tol) {
  const std::size_t n = x0.size();
  LocalResult out;
  if (n == 0) {
    out.value = f(x0);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }
  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);
  out.evaluations = n + 1;

  // Dimension-adapted coefficients; for n = 2 these are the classical 1, 2, 1/2, 1/2.
  const double dn = static_cast<double>(std::max<std::size_t>(n, 2));
  const double expand = 1.0 + 2.0 / dn, contract = 0.75 - 0.5 / dn, shrink = 1.0 - 1.0 / dn;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    return f(x);
  };
  auto along = [&](double t, std::vector<double>& dst, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) dst[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  while (true) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (!(values[worst] - values[best] > obj_tol)) {
      out.converged = true;
      break;
    }
    if (out.evaluations >= max_evals) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);

    along(-1.0, trial, simplex[worst]);
    const double fr = eval(trial);
    if (out.evaluations >= max_evals) {
      if (fr < values[worst]) {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      break;
    }
    if (fr < values[best]) {
      along(-expand, trial2, simplex[worst]);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    along(outside ? -contract : contract, trial2, simplex[worst]);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n && out.evaluations < max_evals; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + shrink * (simplex[i][j] - simplex[best][j]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  out.x = simplex[best];
  out.value = values[best];
  return out;
}

std::vector<double> halton_angles(std::size_t index, std::size_t dim, std::uint64_t seed) {
  static const std::vector<std::size_t> primes = first_primes(256);
  if (dim > primes.size()) throw Error(ErrorKind::RangeError, "Halton sequence limited to 256 dimensions");
  Rng rng = make_rng(seed, 0x4a17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double v = radical_inverse(index + 1, primes[j]) + u(rng);
    v -= std::floor(v);
    x[j] = 2.0 * std::numbers::pi * v;
  }
  return x;
}

SearchResult minimize(const Objective& f, std::size_t dim, const OptimizerConfig& cfg,
                      const std::vector<std::vector<double>>& starts) {
  if (cfg.restarts == 0) throw Error(ErrorKind::RangeError, "restarts must be at least 1");
  const std::size_t restarts = cfg.restarts;
  std::vector<LocalResult> results(restarts);
  std::vector<char> exhausted(restarts, 0);

  auto run = [&](std::size_t r) {
    std::vector<double> x0 = r < starts.size() ? starts[r] : halton_angles(r - starts.size(), dim, cfg.seed);
    if (x0.size() != dim) throw Error(ErrorKind::DimensionMismatch, "start point has wrong dimension");
    LocalResult first = nelder_mead(f, std::move(x0), cfg.initial_step, cfg.max_evals, cfg.obj_tol);
    exhausted[r] = first.converged ? 0 : 1;
    const std::size_t left = cfg.max_evals > first.evaluations ? cfg.max_evals - first.evaluations : 0;
    if (left > dim + 1) {
      LocalResult polish = nelder_mead(f, first.x, 0.1 * cfg.initial_step, left, cfg.obj_tol);
      polish.evaluations += first.evaluations;
      if (polish.value <= first.value) {
        results[r] = std::move(polish);
        return;
      }
      first.evaluations = polish.evaluations;
    }
    results[r] = std::move(first);
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, restarts));
  if (threads == 1) {
    for (std::size_t r = 0; r < restarts; ++r) run(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = next++; r < restarts; r = next++) run(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SearchResult out;
  for (std::size_t r = 0; r < restarts; ++r) {
    out.evaluations += results[r].evaluations;
    out.budget_exhausted = out.budget_exhausted || exhausted[r];
    if (r == 0 || results[r].value < out.value) {
      out.value = results[r].value;
      out.x = results[r].x;
      out.best_restart = r;
    }
  }
  return out;
}

}  // namespace qcmi
