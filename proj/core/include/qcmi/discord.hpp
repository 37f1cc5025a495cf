#pragma once

// Measured conditional correlations: J, C, r, R and bipartite discord.
//
// Throughout, x is the witnessed party (A), y the measured party (E) and z
// the conditioning party (S); an empty z gives the bipartite quantities.

#include <span>
#include <vector>

#include "qcmi/channels.hpp"
#include "qcmi/optimize.hpp"

namespace qcmi {

/// Rank-one measurements with k outcomes on C^d (d <= k <= d^2), decoded
/// from an isometry V: C^d -> C^k as effects |w_i><w_i| with
/// w_i = conj(row i of V). For k = d these are exactly the projective
/// measurements, with d(d-1) angles and d-1 relative phases.
class MeasurementParametrization {
 public:
  explicit MeasurementParametrization(std::size_t dim, std::size_t outcomes = 0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t outcomes() const noexcept { return outcomes_; }
  std::size_t parameter_count() const noexcept;

  std::vector<Matrix> effects(std::span<const double> params) const;
  Povm decode(std::span<const double> params, const LabelSet& target) const;
  /// Parameters of a POVM with rank-one (or zero) effects. Throws BadPovm
  /// for higher-rank effects or a mismatched shape.
  std::vector<double> encode(const Povm& povm) const;

 private:
  std::size_t dim_;
  std::size_t outcomes_;
};

/// State reordered to (x, z, y) with the unmeasured entropies cached, so
/// that J can be evaluated for many measurements on y.
class ConditionalEvaluator {
 public:
  ConditionalEvaluator(const LabeledState& s, LabelSet x, LabelSet y, LabelSet z);

  const LabelSet& x() const noexcept { return x_; }
  const LabelSet& y() const noexcept { return y_; }
  const LabelSet& z() const noexcept { return z_; }
  std::size_t measured_dim() const noexcept { return dy_; }
  /// I(x:y|z) of the unmeasured state.
  double cmi() const noexcept { return cmi_; }
  /// I(x:Y|z) of the state after the measurement with these effects on y.
  double j(std::span<const Matrix> effects) const;

 private:
  LabelSet x_, y_, z_;
  Matrix rho_;  // factors ordered (x, z, y)
  std::size_t dx_ = 1, dz_ = 1, dy_ = 1;
  double s_xz_ = 0.0, s_z_ = 0.0, cmi_ = 0.0;
};

/// J(x;y|z) for a POVM on y: the CMI of the measured state. z may be empty.
double j_conditional(const LabeledState& s, const Povm& povm, const LabelSet& x, const LabelSet& z);

/// r(x;y|z) = I(x:y|z) - J(x;y|z) at a fixed POVM.
double r_conditional(const LabeledState& s, const Povm& povm, const LabelSet& x, const LabelSet& z);

struct ClassicalCorrelation {
  double value = 0.0;         // best J found; a lower bound on the supremum
  std::vector<Matrix> effects;
  std::vector<double> params;
  LabelSet target;
  std::size_t outcomes = 0;
  std::size_t best_restart = 0;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  static constexpr bool lower_bound = true;

  Povm argmax() const { return Povm(effects, target); }
};

/// C(x;y|z) = sup over measurements on y of J(x;y|z).
ClassicalCorrelation classical_cmi(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                                   const OptimizerConfig& cfg);

struct QuantumPart {
  double value = 0.0;  // I - C; an upper bound on the minimum of r
  double cmi = 0.0;
  ClassicalCorrelation classical;
  static constexpr bool upper_bound = true;
};

/// R(x;y|z) = I(x:y|z) - C(x;y|z).
QuantumPart big_r(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                  const OptimizerConfig& cfg);

/// C(a;b) with the measurement on b.
ClassicalCorrelation bipartite_classical_corr(const LabeledState& s, const LabelSet& a, const LabelSet& b,
                                              const OptimizerConfig& cfg);

/// D(a;b) = I(a:b) - C(a;b) with the measurement on b.
QuantumPart discord(const LabeledState& s, const LabelSet& a, const LabelSet& b, const OptimizerConfig& cfg);

}  // namespace qcmi
