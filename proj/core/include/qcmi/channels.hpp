#pragma once

#include <cstddef>
#include <vector>

#include "qcmi/state.hpp"

namespace qcmi {

/// Kraus operators acting on the joint space of the target labels.
///
/// The output replaces the targets by output_labels with output_dims
/// (default: the targets themselves) at the position of the first target.
/// Completeness sum_i K_i^dagger K_i = I is checked within 1e-10.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> ops, LabelSet target);
  KrausChannel(std::vector<Matrix> ops, LabelSet target, LabelSet output_labels,
               std::vector<std::size_t> output_dims);

  const std::vector<Matrix>& ops() const noexcept { return ops_; }
  const LabelSet& target() const noexcept { return target_; }
  const LabelSet& output_labels() const noexcept { return output_labels_; }
  const std::vector<std::size_t>& output_dims() const noexcept { return output_dims_; }
  std::size_t input_dim() const noexcept { return ops_.front().cols(); }
  std::size_t output_dim() const noexcept { return ops_.front().rows(); }

  /// Same operators acting on differently named subsystems.
  KrausChannel retarget(LabelSet target) const;

 private:
  std::vector<Matrix> ops_;
  LabelSet target_;
  LabelSet output_labels_;
  std::vector<std::size_t> output_dims_;
};

/// POVM effects on the joint space of the target labels. Each effect must
/// be Hermitian PSD (eigenvalues >= -1e-10) and the effects must sum to I
/// within 1e-10; violations raise BadPovm.
class Povm {
 public:
  Povm(std::vector<Matrix> effects, LabelSet target);

  const std::vector<Matrix>& effects() const noexcept { return effects_; }
  const LabelSet& target() const noexcept { return target_; }
  std::size_t dim() const noexcept { return effects_.front().rows(); }
  std::size_t outcomes() const noexcept { return effects_.size(); }
  /// Every effect is an orthogonal projector within 1e-10.
  bool is_projective() const;
  /// Outcome probabilities tr(M_i rho_target).
  std::vector<double> probabilities(const LabeledState& s) const;

 private:
  std::vector<Matrix> effects_;
  LabelSet target_;
};

/// sum_i (I (x) K_i) rho (I (x) K_i)^dagger.
LabeledState apply_channel(const LabeledState& s, const KrausChannel& ch);

/// X rho X^dagger for a single operator X on the target labels, with no
/// completeness requirement. Used for isometries and their adjoints.
LabeledState apply_operator(const LabeledState& s, const Matrix& op, const LabelSet& target,
                            const LabelSet& output_labels, const std::vector<std::size_t>& output_dims);

LabeledState apply_local_unitary(const LabeledState& s, const Matrix& u, const LabelSet& target);

/// sum_i Tr_target(M_i rho) (x) |i><i| on a classical register of
/// dimension outcomes() that replaces the target. The register label
/// defaults to the concatenated target labels.
LabeledState measure_to_cq(const LabeledState& s, const Povm& povm, const Label& register_label = "");

/// Kraus set {|ii><i|} copying the computational basis of `source` into a
/// fresh register `copy`.
KrausChannel broadcast_channel(std::size_t d, const Label& source = "E", const Label& copy = "E'");

/// Naimark dilation of a POVM on E: the state is embedded by attaching an
/// ancilla E' in |0>, and the returned PVM on E E' reproduces every
/// outcome probability. Projective inputs get a one-dimensional ancilla.
class NaimarkExtension {
 public:
  NaimarkExtension(Povm pvm, Label ancilla_label, std::size_t ancilla_dim);

  const Povm& pvm() const noexcept { return pvm_; }
  const Label& ancilla_label() const noexcept { return ancilla_label_; }
  std::size_t ancilla_dim() const noexcept { return ancilla_dim_; }

  /// rho -> rho (x) |0><0|_{E'}; Tr_{E'} of the result is rho.
  LabeledState embed(const LabeledState& s) const;

 private:
  Povm pvm_;
  Label ancilla_label_;
  std::size_t ancilla_dim_;
};

NaimarkExtension naimark_extend(const Povm& povm, const Label& ancilla_label = "E'");

struct CompositeLabels {
  Label record = "E'";       // Stinespring register, one level per Kraus operator
  Label record_copy = "E''"; // broadcast copy of the record
};

/// eta = (1 (x) Y) rho (1 (x) Y)^dagger with the isometry
/// Y|psi> = sum_i K_i|psi> (x) |i>_{E'} (x) |i>_{E''}: the Stinespring
/// dilation of the channel followed by a coherent copy of its register.
/// Tracing E and E'' leaves sum_i Tr_E(K_i rho K_i^dagger) (x) |i><i|_{E'}.
LabeledState composite_extend(const LabeledState& s, const KrausChannel& ch, const CompositeLabels& labels = {});

/// Inverts composite_extend: undoes the copy with sum_i |i><ii|, applies the
/// adjoint of the unitary completion of the Stinespring isometry on E E',
/// then traces E'.
LabeledState recover(const LabeledState& eta, const KrausChannel& ch, const CompositeLabels& labels = {});

/// Stinespring isometry V = sum_i K_i (x) |i>, rows ordered (out, i).
Matrix stinespring_isometry(const KrausChannel& ch);

}  // namespace qcmi
