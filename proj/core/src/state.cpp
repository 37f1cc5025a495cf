#include "qcmi/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qcmi/error.hpp"

namespace qcmi {

SubsystemLayout::SubsystemLayout(LabelSet labels, std::vector<std::size_t> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.size() != dims_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "layout has " + std::to_string(labels_.size()) +
                                                  " labels but " + std::to_string(dims_.size()) + " dims");
  }
  std::set<Label> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw Error(ErrorKind::UnknownLabel, "empty subsystem label");
    if (!seen.insert(labels_[i]).second) throw Error(ErrorKind::DuplicateLabel, "label '" + labels_[i] + "'");
    if (dims_[i] == 0) throw Error(ErrorKind::DimensionMismatch, "label '" + labels_[i] + "' has dimension 0");
  }
}

std::size_t SubsystemLayout::total_dim() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

bool SubsystemLayout::contains(const Label& label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SubsystemLayout::index_of(const Label& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::UnknownLabel, "no subsystem labelled '" + label + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t SubsystemLayout::dim_of(const Label& label) const { return dims_[index_of(label)]; }

std::size_t SubsystemLayout::dim_of(std::span<const Label> labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::size_t> SubsystemLayout::indices_of(std::span<const Label> labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

LabelSet SubsystemLayout::complement(std::span<const Label> labels) const {
  LabelSet out;
  for (const auto& l : labels_)
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) out.push_back(l);
  return out;
}

LabeledState::LabeledState(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (!matrix_.is_square() || matrix_.rows() != layout_.total_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is " + std::to_string(matrix_.rows()) + "x" +
                                                  std::to_string(matrix_.cols()) + " but layout dimension is " +
                                                  std::to_string(layout_.total_dim()));
  }
}

LabeledState LabeledState::from_vector(SubsystemLayout layout, const Matrix& vector) {
  if (vector.cols() != 1 || vector.rows() != layout.total_dim()) {
    throw Error(ErrorKind::DimensionMismatch, "state vector length " + std::to_string(vector.rows()) +
                                                  " != layout dimension " + std::to_string(layout.total_dim()));
  }
  const double norm = frobenius_norm(vector);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw Error(ErrorKind::NotDensityMatrix, "state vector norm " + std::to_string(norm) + " is not 1");
  }
  Matrix v = vector * Complex(1.0 / norm);
  return LabeledState(std::move(layout), Matrix::projector(v));
}

StateDiagnostics validate(const LabeledState& s, double tol) {
  const Matrix& m = s.matrix();
  StateDiagnostics d;
  d.finite = all_finite(m);
  if (!d.finite) return d;
  d.hermiticity_defect = hermiticity_defect(m);
  d.trace_defect = std::abs(m.trace() - 1.0);
  Matrix h = m;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  const auto eig = hermitian_eigenvalues(h, 1.0);
  d.min_eigenvalue = eig.front();
  d.negativity_defect = std::max(0.0, -d.min_eigenvalue);
  d.passed = d.hermiticity_defect <= tol && d.trace_defect <= tol && d.negativity_defect <= tol;
  return d;
}

void require_valid(const LabeledState& s) {
  const auto d = validate(s, 1e-8);
  std::ostringstream msg;
  if (!d.finite) throw Error(ErrorKind::NotDensityMatrix, "state has non-finite entries");
  if (d.hermiticity_defect > 1e-10) {
    msg << "hermiticity defect " << d.hermiticity_defect << " > 1e-10";
  } else if (d.trace_defect > 1e-10) {
    msg << "trace defect " << d.trace_defect << " > 1e-10";
  } else if (d.min_eigenvalue < -1e-8) {
    msg << "minimum eigenvalue " << d.min_eigenvalue << " < -1e-8";
  } else {
    return;
  }
  throw Error(ErrorKind::NotDensityMatrix, msg.str());
}

LabeledState tensor(const LabeledState& a, const LabeledState& b) {
  LabelSet labels = a.labels();
  std::vector<std::size_t> dims = a.layout().dims();
  for (std::size_t i = 0; i < b.layout().size(); ++i) {
    if (a.layout().contains(b.labels()[i])) {
      throw Error(ErrorKind::DuplicateLabel, "label '" + b.labels()[i] + "' appears in both factors");
    }
    labels.push_back(b.labels()[i]);
    dims.push_back(b.layout().dims()[i]);
  }
  return LabeledState(SubsystemLayout(std::move(labels), std::move(dims)), kron(a.matrix(), b.matrix()));
}

LabeledState reduce(const LabeledState& s, std::span<const Label> keep) {
  if (keep.empty()) throw Error(ErrorKind::EmptyKeepSet, "reduce needs at least one label");
  auto idx = s.layout().indices_of(keep);
  std::sort(idx.begin(), idx.end());
  if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
    throw Error(ErrorKind::DuplicateLabel, "repeated label in keep set");
  LabelSet labels;
  std::vector<std::size_t> dims;
  for (auto i : idx) {
    labels.push_back(s.labels()[i]);
    dims.push_back(s.layout().dims()[i]);
  }
  if (idx.size() == s.layout().size()) return s;
  return LabeledState(SubsystemLayout(std::move(labels), std::move(dims)),
                      partial_trace(s.matrix(), s.layout().dims(), idx));
}

LabeledState reorder(const LabeledState& s, std::span<const Label> order) {
  if (order.size() != s.layout().size())
    throw Error(ErrorKind::LayoutMismatch, "reorder needs every label exactly once");
  const auto perm = s.layout().indices_of(order);
  std::vector<std::size_t> dims;
  for (auto p : perm) dims.push_back(s.layout().dims()[p]);
  SubsystemLayout layout(LabelSet(order.begin(), order.end()), std::move(dims));
  if (layout == s.layout()) return s;
  return LabeledState(std::move(layout), permute_factors(s.matrix(), s.layout().dims(), perm));
}

LabeledState relabel(const LabeledState& s, const Label& from, const Label& to) {
  LabelSet labels = s.labels();
  labels[s.layout().index_of(from)] = to;
  return LabeledState(SubsystemLayout(std::move(labels), s.layout().dims()), s.matrix());
}

LabeledState maximally_entangled(std::size_t d, const Label& label_a, const Label& label_s) {
  if (d < 2) throw Error(ErrorKind::RangeError, "maximally entangled state needs d >= 2");
  Matrix v(d * d, 1);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v(i * d + i, 0) = amp;
  return LabeledState(SubsystemLayout({label_a, label_s}, {d, d}), Matrix::projector(v));
}

LabeledState classical_state(std::span<const double> probs,
                             const std::vector<std::vector<std::size_t>>& assignments,
                             const SubsystemLayout& layout) {
  if (probs.size() != assignments.size())
    throw Error(ErrorKind::BadProbabilities, "one assignment per probability is required");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(ErrorKind::BadProbabilities, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorKind::BadProbabilities, "probabilities sum to " + std::to_string(total));

  const std::size_t n = layout.total_dim();
  Matrix m(n, n);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const auto& a = assignments[k];
    if (a.size() != layout.size())
      throw Error(ErrorKind::IndexOutOfRange, "assignment has wrong number of parties");
    std::size_t index = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] >= layout.dims()[i])
        throw Error(ErrorKind::IndexOutOfRange,
                    "basis index " + std::to_string(a[i]) + " out of range for '" + layout.labels()[i] + "'");
      index = index * layout.dims()[i] + a[i];
    }
    m(index, index) += probs[k];
  }
  return LabeledState(layout, std::move(m));
}

LabeledState basis_state(const SubsystemLayout& layout, std::span<const std::size_t> indices) {
  const double one = 1.0;
  return classical_state(std::span<const double>(&one, 1), {std::vector<std::size_t>(indices.begin(), indices.end())},
                         layout);
}

LabeledState maximally_mixed(const SubsystemLayout& layout) {
  const std::size_t n = layout.total_dim();
  return LabeledState(layout, Matrix::identity(n) * Complex(1.0 / static_cast<double>(n)));
}

LabelSet join_labels(const LabelSet& a, const LabelSet& b, const LabelSet& c) {
  LabelSet out;
  for (const auto* part : {&a, &b, &c})
    for (const auto& l : *part) {
      if (std::find(out.begin(), out.end(), l) != out.end())
        throw Error(ErrorKind::LabelOverlap, "label '" + l + "' appears in more than one party");
      out.push_back(l);
    }
  return out;
}

}  // namespace qcmi
