#include "qcmi/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "qcmi/channels.hpp"
#include "qcmi/error.hpp"
#include "qcmi/info.hpp"

namespace qcmi {

Matrix partial_swap(std::size_t d, double t) {
  const double a = 0.5 * std::numbers::pi * t;
  Matrix u = Matrix::identity(d * d) * Complex(std::cos(a));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(j * d + i, i * d + j) += Complex(0.0, -std::sin(a));
  return u;
}

Matrix controlled_dephasing(double t) {
  const double theta = std::numbers::pi * (1.0 - std::exp(-t));
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Matrix u(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 2) = c;
  u(2, 3) = -s;
  u(3, 2) = s;
  u(3, 3) = c;
  return u;
}

Matrix example_unitary(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::RangeError, "example unitary needs t in [0, 1]");
  // Index of |s, e1, e2> with dims (2, 2, 3).
  auto at = [](std::size_t s, std::size_t e1, std::size_t e2) { return (s * 2 + e1) * 3 + e2; };
  const double c = std::sqrt(1.0 - t), sn = std::sqrt(t);
  Matrix u = Matrix::identity(12);
  // Rotate |0,0,2> towards |0,0,0> and |1,0,2> towards |1,1,1>; these are the
  // columns a Gram-Schmidt completion produces for t < 1.
  const std::pair<std::size_t, std::size_t> planes[] = {{at(0, 0, 2), at(0, 0, 0)}, {at(1, 0, 2), at(1, 1, 1)}};
  for (auto [from, to] : planes) {
    u(from, from) = c;
    u(to, from) = sn;
    u(from, to) = -sn;
    u(to, to) = c;
  }
  return u;
}

LabeledState psi_plus(const Label& ancilla, const Label& system) {
  return maximally_entangled(2, ancilla, system);
}

LabeledState paper_example(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorKind::RangeError, "u must lie in [0, 1]");
  const SubsystemLayout layout({"A", "S", "E1", "E2"}, {2, 2, 2, 3});
  auto at = [](std::size_t a, std::size_t s, std::size_t e1, std::size_t e2) { return ((a * 2 + s) * 2 + e1) * 3 + e2; };
  Matrix v(24, 1);
  v(at(0, 0, 0, 0), 0) += std::sqrt(u / 2.0);
  v(at(1, 1, 1, 1), 0) += std::sqrt(u / 2.0);
  v(at(0, 0, 0, 2), 0) += std::sqrt((1.0 - u) / 2.0);
  v(at(1, 1, 0, 2), 0) += std::sqrt((1.0 - u) / 2.0);
  const double norm = frobenius_norm(v);
  if (std::abs(norm - 1.0) > 1e-12)
    throw Error(ErrorKind::NotDensityMatrix, "example state has norm " + std::to_string(norm));
  return LabeledState(layout, Matrix::projector(v));
}

Scenario partial_swap_scenario(std::size_t d) {
  const std::size_t zero[] = {0};
  return {maximally_entangled(d), basis_state(SubsystemLayout({"E"}, {d}), zero),
          [d](double t) { return partial_swap(d, t); }, "partial_swap"};
}

Scenario dephasing_scenario() {
  const std::size_t zero[] = {0};
  return {maximally_entangled(2), basis_state(SubsystemLayout({"E"}, {2}), zero), controlled_dephasing, "dephasing"};
}

Scenario paper_example_scenario() {
  const std::size_t env[] = {0, 2};
  return {psi_plus(), basis_state(SubsystemLayout({"E1", "E2"}, {2, 3}), env), example_unitary, "paper_example"};
}

UnitaryFamily spectral_family(const Matrix& h) {
  const HermitianSpectrum spec = hermitian_eig(h);
  return [spec](double t) {
    const std::size_t n = spec.eigenvalues.size();
    Matrix scaled = spec.eigenvectors;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex phase = std::polar(1.0, -spec.eigenvalues[c] * t);
      for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
    }
    return scaled * spec.eigenvectors.adjoint();
  };
}

LabelSet environment_labels(std::size_t count) {
  if (count == 1) return {"E"};
  LabelSet out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back("E" + std::to_string(i));
  return out;
}

Scenario random_scenario(const std::vector<std::size_t>& env_dims, Rng& rng) {
  const LabelSet env = environment_labels(env_dims.size());
  const SubsystemLayout env_layout(env, env_dims);
  Matrix g = ginibre(2 * env_layout.total_dim(), 2 * env_layout.total_dim(), rng);
  const Matrix h = (g + g.adjoint()) * Complex(0.5);
  return {random_pure(SubsystemLayout({"A", "S"}, {2, 2}), rng), random_density(env_layout, rng),
          spectral_family(h), "random"};
}

UnitaryFamily tabulated_family(std::vector<double> times, std::vector<Matrix> unitaries) {
  if (times.size() != unitaries.size() || times.empty())
    throw Error(ErrorKind::DimensionMismatch, "one unitary per tabulated time is required");
  return [times = std::move(times), unitaries = std::move(unitaries)](double t) {
    for (std::size_t i = 0; i < times.size(); ++i)
      if (times[i] == t) return unitaries[i];
    throw Error(ErrorKind::RangeError, "no unitary tabulated at t = " + std::to_string(t));
  };
}

LabeledState evolve(const Scenario& sc, double t) {
  if (hermitian_eigenvalues(sc.initial_as.matrix()).back() < 1.0 - 1e-10)
    throw Error(ErrorKind::NotDensityMatrix, "initial A-S state is not pure");
  const Matrix u = sc.family(t);
  const double defect = unitarity_defect(u);
  if (defect > 1e-10) throw Error(ErrorKind::NonUnitary, "U(" + std::to_string(t) + ") unitarity defect " + std::to_string(defect));
  LabelSet target{sc.system()};
  for (const auto& l : sc.environment()) target.push_back(l);
  return apply_local_unitary(sc.initial_state(), u, target);
}

double TrajectoryReport::i_a_se_spread() const {
  if (i_a_se.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(i_a_se.begin(), i_a_se.end());
  return *hi - *lo;
}

bool TrajectoryReport::bound_holds(double tol) const {
  return std::all_of(bound_slack.begin(), bound_slack.end(), [tol](double s) { return s >= -tol; });
}

TrajectoryReport trajectory(const Scenario& sc, const std::vector<double>& times, std::size_t threads) {
  if (times.empty()) throw Error(ErrorKind::RangeError, "trajectory needs at least one time");
  if (!std::is_sorted(times.begin(), times.end())) throw Error(ErrorKind::RangeError, "times must be ascending");
  const std::size_t n = times.size();
  TrajectoryReport rep;
  rep.times = times;
  rep.i_as.resize(n);
  rep.i_ae_given_s.resize(n);
  rep.i_a_se.resize(n);
  rep.capacity_residuals.resize(n);
  rep.decomposition_residuals.resize(n);

  const SettingParties parties{{sc.ancilla()}, {sc.system()}, sc.environment()};
  auto point = [&](std::size_t k) {
    const LabeledState s = evolve(sc, times[k]);
    const auto d = decomposition_identity(s, parties);
    rep.i_as[k] = d.i_as;
    rep.i_ae_given_s[k] = d.i_ae_given_s;
    rep.i_a_se[k] = d.i_a_se;
    rep.decomposition_residuals[k] = d.residual;
    rep.capacity_residuals[k] = capacity_identity(s, parties).residual;
  };
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) point(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t k = next++; k < n; k = next++) point(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double delta = rep.i_ae_given_s[k + 1] - rep.i_ae_given_s[k];
    rep.backflow.push_back(delta < -1e-12);
    rep.bound_slack.push_back(rep.i_ae_given_s[k] + delta);
  }
  return rep;
}

}  // namespace qcmi
