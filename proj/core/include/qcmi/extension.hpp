#pragma once

// Extension searches (R_ex and the discord-based entanglement measure),
// entanglement of formation, the W quantity and the monogamy checks.

#include <span>
#include <vector>

#include "qcmi/discord.hpp"

namespace qcmi {

/// Isometry from the purifying register P (dim = rank of the state) into
/// X' (x) G; tracing the garbage register G leaves an extension on X'.
class ExtensionParametrization {
 public:
  ExtensionParametrization(std::size_t purifier_dim, std::size_t ext_dim, std::size_t garbage_dim);

  std::size_t purifier_dim() const noexcept { return purifier_dim_; }
  std::size_t ext_dim() const noexcept { return ext_dim_; }
  std::size_t garbage_dim() const noexcept { return garbage_dim_; }
  std::size_t parameter_count() const noexcept;
  Matrix isometry(std::span<const double> params) const;

 private:
  std::size_t purifier_dim_, ext_dim_, garbage_dim_;
};

/// max(2, smallest g with ext_dim * g >= rank): the garbage dimension used
/// when none is configured.
std::size_t default_garbage_dim(std::size_t rank, std::size_t ext_dim);

/// Caches a purification of s so that many extensions can be built from it.
class Extender {
 public:
  /// garbage_dim 0 means default_garbage_dim(rank of s, ext_dim).
  Extender(const LabeledState& s, std::size_t ext_dim, std::size_t garbage_dim = 0, Label ext_label = "X'");

  const ExtensionParametrization& parametrization() const noexcept { return param_; }
  const Label& ext_label() const noexcept { return label_; }
  /// The extension on (labels of s..., X'). Its marginal on s's labels is s.
  LabeledState extend(std::span<const double> params) const;

 private:
  SubsystemLayout layout_;
  Matrix psi_;  // purification, index h * rank + j
  ExtensionParametrization param_;
  Label label_;
};

LabeledState extend(const LabeledState& s, const ExtensionParametrization& ext, std::span<const double> params,
                    const Label& ext_label = "X'");

struct ExtensionConfig {
  OptimizerConfig search{.restarts = 16, .max_evals = 6000};
  std::size_t ext_dim = 2;      // up to 4
  std::size_t garbage_dim = 0;  // 0 means default_garbage_dim(rank, ext_dim)
  Label ext_label = "X'";
};

struct ExtensionResult {
  double value = 0.0;         // min(baseline, search); an upper bound
  double baseline = 0.0;      // R(x;y|z) with the trivial extension
  double search_value = 0.0;  // best r(x;yX'|z) over extension and measurement
  std::vector<double> ext_params;
  std::vector<Matrix> effects;  // measurement on (y, X') at the search optimum
  std::vector<Matrix> baseline_effects;  // measurement on y at the baseline optimum
  bool from_search = false;     // value came from the search, not the baseline
  std::size_t ext_dim = 0;
  std::size_t garbage_dim = 0;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
  static constexpr bool upper_bound = true;
};

/// R_ex(x;y|z): minimum over extensions X' of R(x;yX'|z), searched jointly
/// over the extension isometry and a measurement on y X'.
ExtensionResult r_ex(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                     const ExtensionConfig& cfg = {});

/// The extended state and measurement that attain an r_ex value, rebuilt
/// from the result and evaluated without the search's fast path. The
/// trivial extension is a one-dimensional X'.
struct ExtensionWitness {
  LabeledState state;            // labels x, z, y, then the extension label
  std::vector<Matrix> effects;   // on (y, extension label)
  LabelSet measured;             // y then the extension label
  double r = 0.0;                // r(x; y X'|z) of state at effects
};

ExtensionWitness extension_witness(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                                   const ExtensionResult& result, const ExtensionConfig& cfg = {});

/// r(x;yX'|z) at one point of the r_ex search space: extension parameters
/// followed by measurement parameters for (y, X').
double extended_r(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                  const ExtensionConfig& cfg, std::span<const double> params);

/// Discord-based entanglement measure: minimum over extensions X of D(a;bX).
ExtensionResult e_a(const LabeledState& s, const LabelSet& a, const LabelSet& b, const ExtensionConfig& cfg = {});

/// Binary entropy in nats.
double binary_entropy(double p);
/// Wootters concurrence of a two-qubit state.
double concurrence(const LabeledState& s, const Label& a, const Label& b);
/// Two-qubit entanglement of formation in nats, evaluated on the marginal
/// of (a, b). Throws DimensionMismatch unless both are qubits.
double entanglement_of_formation(const LabeledState& s, const Label& a, const Label& b);

/// Pure-state ensembles {P'_i, psi_i} of a state of rank r with m >= r
/// members, psi~_i = sum_j U_ij sqrt(lambda_j) |e_j> for an m x r isometry U.
class DecompositionParametrization {
 public:
  DecompositionParametrization(std::size_t rank, std::size_t ensemble_size);
  std::size_t rank() const noexcept { return rank_; }
  std::size_t ensemble_size() const noexcept { return size_; }
  std::size_t parameter_count() const noexcept;
  Matrix isometry(std::span<const double> params) const;

 private:
  std::size_t rank_, size_;
};

struct Ensemble {
  std::vector<double> weights;
  std::vector<Matrix> vectors;  // normalized column vectors; zero-weight members keep zero vectors
};

/// The eigenvalues > 1e-10 and eigenvectors of s, largest first.
class EnsembleSource {
 public:
  explicit EnsembleSource(const LabeledState& s);
  std::size_t rank() const noexcept { return sqrt_lambda_.size(); }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  Ensemble ensemble(const Matrix& mixing) const;

 private:
  SubsystemLayout layout_;
  std::vector<double> sqrt_lambda_;
  Matrix vectors_;  // columns
};

struct SearchValue {
  double value = 0.0;
  std::vector<double> params;
  std::size_t ensemble_size = 0;
  bool budget_exhausted = false;
};

/// Upper bound on E_f(a:b) from a decomposition search; ensemble_size 0
/// means rank + 1.
SearchValue eof_general(const LabeledState& s, const LabelSet& a, const LabelSet& b, const OptimizerConfig& cfg,
                        std::size_t ensemble_size = 0);

/// S(xz) - S(z) + sum_i P'_i (S(z)_{psi_i} - S(xz)_{psi_i}) for one ensemble of
/// the state on (x, z, c).
double w_at(const LabeledState& s, const Ensemble& ensemble, const LabelSet& x, const LabelSet& z);

/// W(x;c|z) by decomposition search (a lower bound on the supremum);
/// ensemble_size 0 means rank + 1.
SearchValue w_quantity(const LabeledState& s, const LabelSet& x, const LabelSet& z, const LabelSet& c,
                       const OptimizerConfig& cfg, std::size_t ensemble_size = 0);

struct KoashiWinterRecord {
  double e_f = 0.0;        // E_f(a:b)
  double classical = 0.0;  // C(a;c)
  double s_a = 0.0;
  double residual = 0.0;   // |E_f + C - S(a)|
};

/// Koashi-Winter equality for a pure three-party state with qubits a and b.
KoashiWinterRecord koashi_winter_check(const LabeledState& phi, const Label& a, const Label& b, const LabelSet& c,
                                       const OptimizerConfig& cfg);

struct GeneralizedKwRecord {
  double r = 0.0;            // R(x;yX'|z) = I - C at the optimized measurement
  double i_xc = 0.0;         // I(x:C) with C the purifier of the extended state
  double w_matched = 0.0;    // W(x;C|z) at the decomposition induced by that measurement
  double w_search = 0.0;     // W(x;C|z) from an independent decomposition search
  double classical = 0.0;    // C(x;yX'|z)
  double i_total = 0.0;      // I(x:E_tot|z)
  double capacity_residual = 0.0;
  double residual = 0.0;     // |r + i_xc + w_matched - i_total|
};

/// Generalized Koashi-Winter equality for CMI.
///
/// s is a setting state on x, z and the whole environment; y is the
/// environment part under study. The extension (ext_params, empty for the
/// trivial one) is applied to the marginal on (x, z, y), whose purifier C is
/// either `purifier` (labels of s, then s must be pure) or a fresh register.
GeneralizedKwRecord generalized_kw_check(const LabeledState& s, const LabelSet& x, const LabelSet& y,
                                         const LabelSet& z, const OptimizerConfig& cfg,
                                         const LabelSet& purifier = {}, std::size_t ext_dim = 1,
                                         std::span<const double> ext_params = {});

}  // namespace qcmi
