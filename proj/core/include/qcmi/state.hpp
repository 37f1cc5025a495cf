#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qcmi/linalg.hpp"

namespace qcmi {

using Label = std::string;
using LabelSet = std::vector<Label>;

/// Ordered, uniquely labelled tensor factors. Party labels follow the
/// conventions "A", "S", "E" with primes for copies ("E'", "E''"),
/// "X'" for extensions and "C" for purifiers.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(LabelSet labels, std::vector<std::size_t> dims);

  const LabelSet& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t total_dim() const noexcept;

  bool contains(const Label& label) const noexcept;
  std::size_t index_of(const Label& label) const;  // throws UnknownLabel
  std::size_t dim_of(const Label& label) const;
  std::size_t dim_of(std::span<const Label> labels) const;
  std::vector<std::size_t> indices_of(std::span<const Label> labels) const;
  /// Labels not contained in the given set, in layout order.
  LabelSet complement(std::span<const Label> labels) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  LabelSet labels_;
  std::vector<std::size_t> dims_;
};

/// Density operator over a labelled layout. Construction checks shapes
/// only; use validate() or require_valid() for the physical invariants.
class LabeledState {
 public:
  LabeledState() = default;
  LabeledState(SubsystemLayout layout, Matrix matrix);

  /// Projector onto a pure state; the vector must be normalized within 1e-9.
  static LabeledState from_vector(SubsystemLayout layout, const Matrix& vector);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const LabelSet& labels() const noexcept { return layout_.labels(); }
  std::size_t dim() const noexcept { return matrix_.rows(); }

 private:
  SubsystemLayout layout_;
  Matrix matrix_;
};

struct StateDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  double min_eigenvalue = 0.0;
  double negativity_defect = 0.0;  // max(0, -min_eigenvalue)
  bool finite = true;
  bool passed = false;
};

StateDiagnostics validate(const LabeledState& s, double tol);

/// Throws NotDensityMatrix unless the state is Hermitian and unit-trace
/// within 1e-10 with no eigenvalue below -1e-8. The message names the
/// failing invariant.
void require_valid(const LabeledState& s);

LabeledState tensor(const LabeledState& a, const LabeledState& b);
LabeledState reduce(const LabeledState& s, std::span<const Label> keep);
/// Reorders the factors to the given label order (a permutation of labels()).
LabeledState reorder(const LabeledState& s, std::span<const Label> order);
LabeledState relabel(const LabeledState& s, const Label& from, const Label& to);

/// (1/sqrt d) sum_i |ii> on (label_a, label_s).
LabeledState maximally_entangled(std::size_t d, const Label& label_a = "A", const Label& label_s = "S");

/// sum_k p_k (x)_parties |a_k><a_k| with one basis-index tuple per outcome.
LabeledState classical_state(std::span<const double> probs,
                             const std::vector<std::vector<std::size_t>>& assignments,
                             const SubsystemLayout& layout);

LabeledState basis_state(const SubsystemLayout& layout, std::span<const std::size_t> indices);
LabeledState maximally_mixed(const SubsystemLayout& layout);

/// Concatenation of label sets, rejecting repeated labels with LabelOverlap.
LabelSet join_labels(const LabelSet& a, const LabelSet& b, const LabelSet& c = {});

}  // namespace qcmi
