#pragma once

// Setting-compliant evolutions (1_A (x) U_SE) and CMI flow along them.

#include <functional>
#include <string>
#include <vector>

#include "qcmi/random.hpp"
#include "qcmi/state.hpp"

namespace qcmi {

using UnitaryFamily = std::function<Matrix(double)>;

/// Initial pure A-S state times an environment state, evolved by a unitary
/// family on S (x) environment (environment factors in layout order).
struct Scenario {
  LabeledState initial_as;   // labels {ancilla, system}
  LabeledState initial_env;
  UnitaryFamily family;
  std::string family_name;

  const Label& ancilla() const { return initial_as.labels().at(0); }
  const Label& system() const { return initial_as.labels().at(1); }
  LabelSet environment() const { return initial_env.labels(); }
  LabeledState initial_state() const { return tensor(initial_as, initial_env); }
};

/// exp(-i (pi t / 2) SWAP) = cos(pi t / 2) I - i sin(pi t / 2) SWAP on C^d (x) C^d.
Matrix partial_swap(std::size_t d, double t);
/// |0><0| (x) I + |1><1| (x) R_y(pi (1 - e^{-t})) on qubit S (x) qubit E.
Matrix controlled_dephasing(double t);
/// Unitary on S E1 E2 (dims 2, 2, 3) taking the u = 0 example state to the
/// u = t state; identity at t = 0 and unitary for all t in [0, 1].
Matrix example_unitary(double t);

/// (|00> + |11>)/sqrt 2 on A S.
LabeledState psi_plus(const Label& ancilla = "A", const Label& system = "S");

/// sqrt(u/2)(|0000> + |1111>) + sqrt(1-u) |Psi+>_AS |02>_E1E2 on
/// A, S, E1, E2 with dims (2, 2, 2, 3). Throws RangeError outside [0, 1].
LabeledState paper_example(double u);

Scenario partial_swap_scenario(std::size_t d = 2);
Scenario dephasing_scenario();
Scenario paper_example_scenario();
/// t -> exp(-i h t) for a Hermitian h, by spectral decomposition.
UnitaryFamily spectral_family(const Matrix& h);

/// "E" for one environment factor, "E1", "E2", ... for several.
LabelSet environment_labels(std::size_t count);

/// Random pure qubit A-S state, full-rank random environment state on
/// env_dims and a spectral family with a random Hermitian generator.
Scenario random_scenario(const std::vector<std::size_t>& env_dims, Rng& rng);

/// Unitaries tabulated at fixed times; evaluating any other time throws RangeError.
UnitaryFamily tabulated_family(std::vector<double> times, std::vector<Matrix> unitaries);

/// (1_A (x) U(t)) rho_0 (1_A (x) U(t))^dagger. Throws NonUnitary when U(t) is
/// not unitary within 1e-10 and NotDensityMatrix when the A-S state is not
/// pure within 1e-10.
LabeledState evolve(const Scenario& sc, double t);

struct TrajectoryReport {
  std::vector<double> times;
  std::vector<double> i_as;
  std::vector<double> i_ae_given_s;
  std::vector<double> i_a_se;
  std::vector<double> capacity_residuals;
  std::vector<double> decomposition_residuals;
  std::vector<bool> backflow;        // per interval: I(A:E|S) decreased by more than 1e-12
  std::vector<double> bound_slack;   // per interval: I(A:E|S)(t_k) + delta I(A:E|S), >= -1e-9 expected

  double i_a_se_spread() const;
  bool bound_holds(double tol = 1e-9) const;
};

/// Evaluates the flow quantities at ascending times. Time points are
/// independent; `threads` > 1 evaluates them concurrently.
TrajectoryReport trajectory(const Scenario& sc, const std::vector<double>& times, std::size_t threads = 1);

}  // namespace qcmi
