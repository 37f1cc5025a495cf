#pragma once

// Entropic functionals in nats.

#include "qcmi/state.hpp"

namespace qcmi {

struct EntropyReport {
  double value = 0.0;         // nats
  double clamped_mass = 0.0;  // total |eigenvalue| clamped to zero
};

/// Eigenvalues in [-1e-8, 1e-12) count as zero; 0 ln 0 := 0.
/// Throws NotDensityMatrix for eigenvalues below -1e-8 or a trace away
/// from one by more than 1e-8.
EntropyReport vn_entropy(const LabeledState& s);

/// Entropy of a raw PSD matrix with the same clamping and no trace check.
double entropy_of_matrix(const Matrix& rho);
/// -sum p ln p over clamped eigenvalues.
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// S of the marginal on labels; the empty set has entropy 0.
double marginal_entropy(const LabeledState& s, std::span<const Label> labels);

/// S(rho || sigma) = tr rho (ln rho - ln sigma). Returns +infinity when
/// rho has weight above 1e-10 outside the support of sigma (eigenvalues
/// of sigma at or below 1e-10 are treated as outside the support).
double relative_entropy(const LabeledState& rho, const LabeledState& sigma);

double mutual_information(const LabeledState& s, const LabelSet& x, const LabelSet& y);

/// I(x:y|z) = S(xz) + S(yz) - S(z) - S(xyz). Empty z gives I(x:y).
double cmi(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z);

/// The three parties of the ancilla-system-environment setting. An empty
/// environment means "every label that is neither ancilla nor system".
struct SettingParties {
  LabelSet ancilla{"A"};
  LabelSet system{"S"};
  LabelSet environment{};

  LabelSet resolved_environment(const SubsystemLayout& layout) const;
};

struct DecompositionResidual {
  double i_a_se = 0.0;         // I(A:SE)
  double i_ae_given_s = 0.0;   // I(A:E|S)
  double i_as = 0.0;           // I(A:S)
  double residual = 0.0;       // |I(A:SE) - I(A:E|S) - I(A:S)|
};

/// Chain-rule split I(A:SE) = I(A:E|S) + I(A:S).
DecompositionResidual decomposition_identity(const LabeledState& s, const SettingParties& parties = {});

struct CapacityResidual {
  double i_ae_given_s = 0.0;
  double i_as = 0.0;
  double s_a = 0.0;
  double residual = 0.0;  // |I(A:E|S) + I(A:S) - 2 S(A)|
};

/// I(A:E|S) + I(A:S) = 2 S(A). Exact only for states reached from a pure
/// A-S state times an environment state under 1_A (x) U_SE; reported, not
/// enforced, for anything else.
CapacityResidual capacity_identity(const LabeledState& s, const SettingParties& parties = {});

}  // namespace qcmi
