#include "qcmi/channels.hpp"

#include <algorithm>
#include <cmath>

#include "qcmi/error.hpp"

namespace qcmi {

namespace {

constexpr double kCompletenessTol = 1e-10;

// The state with its factors ordered (others..., targets...), plus what is
// needed to put outputs back where the targets were.
struct TargetSplit {
  LabeledState permuted;
  LabelSet others;
  std::size_t other_dim = 1;
  std::size_t target_dim = 1;
  std::size_t insert_at = 0;  // index among `others` where outputs go
};

TargetSplit split_targets(const LabeledState& s, const LabelSet& target) {
  if (target.empty()) throw Error(ErrorKind::EmptyKeepSet, "operation needs at least one target label");
  auto idx = s.layout().indices_of(target);
  const std::size_t first = *std::min_element(idx.begin(), idx.end());
  TargetSplit split;
  split.others = s.layout().complement(target);
  for (std::size_t i = 0; i < first; ++i)
    if (std::find(target.begin(), target.end(), s.labels()[i]) == target.end()) ++split.insert_at;
  LabelSet order = split.others;
  order.insert(order.end(), target.begin(), target.end());
  split.permuted = reorder(s, order);
  split.other_dim = s.layout().dim_of(split.others);
  split.target_dim = s.layout().dim_of(target);
  return split;
}

LabeledState assemble(const TargetSplit& split, const SubsystemLayout& original, Matrix m,
                      const LabelSet& output_labels, const std::vector<std::size_t>& output_dims) {
  LabelSet labels;
  std::vector<std::size_t> dims;
  for (const auto& l : split.others) {
    labels.push_back(l);
    dims.push_back(original.dim_of(l));
  }
  for (std::size_t i = 0; i < output_labels.size(); ++i) {
    labels.push_back(output_labels[i]);
    dims.push_back(output_dims[i]);
  }
  LabeledState result(SubsystemLayout(labels, dims), std::move(m));
  LabelSet order(split.others.begin(), split.others.begin() + static_cast<std::ptrdiff_t>(split.insert_at));
  order.insert(order.end(), output_labels.begin(), output_labels.end());
  order.insert(order.end(), split.others.begin() + static_cast<std::ptrdiff_t>(split.insert_at),
               split.others.end());
  return reorder(result, order);
}

// Accumulates (I (x) X) rho (I (x) X)^dagger into out.
void conjugate_blocks(const Matrix& rho, std::size_t other_dim, std::size_t d_in, const Matrix& x, Matrix& out) {
  const std::size_t d_out = x.rows();
  Matrix block(d_in, d_in);
  for (std::size_t a = 0; a < other_dim; ++a) {
    for (std::size_t b = 0; b < other_dim; ++b) {
      bool nonzero = false;
      for (std::size_t k = 0; k < d_in; ++k)
        for (std::size_t l = 0; l < d_in; ++l) {
          block(k, l) = rho(a * d_in + k, b * d_in + l);
          nonzero = nonzero || block(k, l) != Complex{};
        }
      if (!nonzero) continue;
      const Matrix t = x * block * x.adjoint();
      for (std::size_t i = 0; i < d_out; ++i)
        for (std::size_t j = 0; j < d_out; ++j) out(a * d_out + i, b * d_out + j) += t(i, j);
    }
  }
}

void check_output_labels(const TargetSplit& split, const LabelSet& output_labels) {
  for (const auto& l : output_labels)
    if (std::find(split.others.begin(), split.others.end(), l) != split.others.end())
      throw Error(ErrorKind::DuplicateLabel, "output label '" + l + "' already present");
}

// Unitary on (out, register) whose column (e, 0) is V|e>.
Matrix dilation_unitary(const Matrix& v, std::size_t d, std::size_t k) {
  const Matrix completed = complete_to_unitary(v);
  const std::size_t n = d * k;
  Matrix u(n, n);
  std::size_t next = d;
  for (std::size_t e = 0; e < d; ++e) {
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t src = (a == 0) ? e : next++;
      for (std::size_t r = 0; r < n; ++r) u(r, e * k + a) = completed(r, src);
    }
  }
  return u;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> ops, LabelSet target)
    : KrausChannel(std::move(ops), target, target, {}) {}

KrausChannel::KrausChannel(std::vector<Matrix> ops, LabelSet target, LabelSet output_labels,
                           std::vector<std::size_t> output_dims)
    : ops_(std::move(ops)),
      target_(std::move(target)),
      output_labels_(std::move(output_labels)),
      output_dims_(std::move(output_dims)) {
  if (ops_.empty()) throw Error(ErrorKind::BadChannel, "channel needs at least one Kraus operator");
  if (target_.empty()) throw Error(ErrorKind::BadChannel, "channel needs a target");
  const std::size_t d_in = ops_.front().cols(), d_out = ops_.front().rows();
  Matrix completeness(d_in, d_in);
  for (const auto& k : ops_) {
    if (k.cols() != d_in || k.rows() != d_out)
      throw Error(ErrorKind::DimensionMismatch, "Kraus operators have inconsistent shapes");
    completeness += k.adjoint() * k;
  }
  const double defect = frobenius_distance(completeness, Matrix::identity(d_in));
  if (defect > kCompletenessTol)
    throw Error(ErrorKind::BadChannel, "completeness defect " + std::to_string(defect));
  if (output_labels_.empty()) output_labels_ = target_;
  if (output_dims_.empty()) {
    if (output_labels_.size() == 1) {
      output_dims_ = {d_out};
    } else if (d_out == d_in && output_labels_ == target_) {
      output_dims_.clear();  // filled in on application from the state's layout
    } else {
      throw Error(ErrorKind::DimensionMismatch, "output_dims required for multi-label outputs");
    }
  }
  if (!output_dims_.empty()) {
    std::size_t total = 1;
    for (auto d : output_dims_) total *= d;
    if (total != d_out || output_dims_.size() != output_labels_.size())
      throw Error(ErrorKind::DimensionMismatch, "output dims do not match Kraus output dimension");
  }
}

KrausChannel KrausChannel::retarget(LabelSet target) const {
  const bool same_output = output_labels_ == target_;
  LabelSet out = same_output ? target : output_labels_;
  return KrausChannel(ops_, std::move(target), std::move(out), same_output ? std::vector<std::size_t>{} : output_dims_);
}

Povm::Povm(std::vector<Matrix> effects, LabelSet target) : effects_(std::move(effects)), target_(std::move(target)) {
  if (effects_.empty()) throw Error(ErrorKind::BadPovm, "POVM needs at least one effect");
  if (target_.empty()) throw Error(ErrorKind::BadPovm, "POVM needs a target");
  const std::size_t d = effects_.front().rows();
  Matrix total(d, d);
  for (const auto& m : effects_) {
    if (!m.is_square() || m.rows() != d) throw Error(ErrorKind::BadPovm, "effects have inconsistent shapes");
    if (hermiticity_defect(m) > 1e-10) throw Error(ErrorKind::BadPovm, "effect is not Hermitian");
    if (d > 1 && hermitian_eigenvalues(m, 1e-6).front() < -1e-10)
      throw Error(ErrorKind::BadPovm, "effect is not positive semidefinite");
    total += m;
  }
  const double defect = frobenius_distance(total, Matrix::identity(d));
  if (defect > 1e-10) throw Error(ErrorKind::BadPovm, "effects sum to identity only within " + std::to_string(defect));
}

bool Povm::is_projective() const {
  return std::all_of(effects_.begin(), effects_.end(),
                     [](const Matrix& m) { return frobenius_distance(m * m, m) <= 1e-10; });
}

std::vector<double> Povm::probabilities(const LabeledState& s) const {
  const auto split = split_targets(s, target_);
  if (split.target_dim != dim()) throw Error(ErrorKind::DimensionMismatch, "POVM dimension mismatch");
  const Matrix& r = split.permuted.matrix();
  const std::size_t d = dim();
  std::vector<double> p;
  for (const auto& m : effects_) {
    Complex acc{};
    for (std::size_t a = 0; a < split.other_dim; ++a)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) acc += m(l, k) * r(a * d + k, a * d + l);
    p.push_back(acc.real());
  }
  return p;
}

LabeledState apply_operator(const LabeledState& s, const Matrix& op, const LabelSet& target,
                            const LabelSet& output_labels, const std::vector<std::size_t>& output_dims) {
  const auto split = split_targets(s, target);
  if (op.cols() != split.target_dim)
    throw Error(ErrorKind::DimensionMismatch, "operator input dimension " + std::to_string(op.cols()) +
                                                  " != target dimension " + std::to_string(split.target_dim));
  check_output_labels(split, output_labels);
  Matrix out(split.other_dim * op.rows(), split.other_dim * op.rows());
  conjugate_blocks(split.permuted.matrix(), split.other_dim, split.target_dim, op, out);
  return assemble(split, s.layout(), std::move(out), output_labels, output_dims);
}

LabeledState apply_channel(const LabeledState& s, const KrausChannel& ch) {
  const auto split = split_targets(s, ch.target());
  if (ch.input_dim() != split.target_dim)
    throw Error(ErrorKind::DimensionMismatch, "channel input dimension " + std::to_string(ch.input_dim()) +
                                                  " != target dimension " + std::to_string(split.target_dim));
  check_output_labels(split, ch.output_labels());
  std::vector<std::size_t> out_dims = ch.output_dims();
  if (out_dims.empty())
    for (const auto& l : ch.target()) out_dims.push_back(s.layout().dim_of(l));

  Matrix out(split.other_dim * ch.output_dim(), split.other_dim * ch.output_dim());
  for (const auto& k : ch.ops()) conjugate_blocks(split.permuted.matrix(), split.other_dim, split.target_dim, k, out);
  return assemble(split, s.layout(), std::move(out), ch.output_labels(), out_dims);
}

LabeledState apply_local_unitary(const LabeledState& s, const Matrix& u, const LabelSet& target) {
  if (unitarity_defect(u) > 1e-10) throw Error(ErrorKind::NonUnitary, "local operation is not unitary");
  std::vector<std::size_t> dims;
  for (const auto& l : target) dims.push_back(s.layout().dim_of(l));
  return apply_operator(s, u, target, target, dims);
}

LabeledState measure_to_cq(const LabeledState& s, const Povm& povm, const Label& register_label) {
  const auto split = split_targets(s, povm.target());
  if (povm.dim() != split.target_dim)
    throw Error(ErrorKind::DimensionMismatch, "POVM dimension " + std::to_string(povm.dim()) +
                                                  " != target dimension " + std::to_string(split.target_dim));
  Label reg = register_label;
  if (reg.empty())
    for (const auto& l : povm.target()) reg += l;
  check_output_labels(split, {reg});

  const std::size_t d = split.target_dim, k = povm.outcomes(), n = split.other_dim;
  const Matrix& r = split.permuted.matrix();
  Matrix out(n * k, n * k);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix& m = povm.effects()[i];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Complex acc{};
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q) acc += m(q, p) * r(a * d + p, b * d + q);
        out(a * k + i, b * k + i) = acc;
      }
  }
  return assemble(split, s.layout(), std::move(out), {reg}, {k});
}

KrausChannel broadcast_channel(std::size_t d, const Label& source, const Label& copy) {
  if (d < 2) throw Error(ErrorKind::RangeError, "broadcast channel needs d >= 2");
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix e(d * d, d);
    e(i * d + i, i) = 1.0;
    ops.push_back(std::move(e));
  }
  return KrausChannel(std::move(ops), {source}, {source, copy}, {d, d});
}

NaimarkExtension::NaimarkExtension(Povm pvm, Label ancilla_label, std::size_t ancilla_dim)
    : pvm_(std::move(pvm)), ancilla_label_(std::move(ancilla_label)), ancilla_dim_(ancilla_dim) {}

LabeledState NaimarkExtension::embed(const LabeledState& s) const {
  Matrix zero(ancilla_dim_, ancilla_dim_);
  zero(0, 0) = 1.0;
  return tensor(s, LabeledState(SubsystemLayout({ancilla_label_}, {ancilla_dim_}), std::move(zero)));
}

NaimarkExtension naimark_extend(const Povm& povm, const Label& ancilla_label) {
  LabelSet target = povm.target();
  target.push_back(ancilla_label);
  if (povm.is_projective()) return NaimarkExtension(Povm(povm.effects(), target), ancilla_label, 1);

  const std::size_t d = povm.dim(), k = povm.outcomes();
  Matrix v(d * k, d);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix root = hermitian_function(povm.effects()[i], [](double x) { return std::sqrt(std::max(x, 0.0)); });
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) v(r * k + i, c) = root(r, c);
  }
  const Matrix u = dilation_unitary(v, d, k);
  std::vector<Matrix> projectors;
  for (std::size_t i = 0; i < k; ++i) {
    Matrix reg(k, k);
    reg(i, i) = 1.0;
    projectors.push_back(u.adjoint() * kron(Matrix::identity(d), reg) * u);
  }
  // Round-off from the completion is well below the Povm tolerance but the
  // projectors are re-symmetrized so that the PVM is exactly Hermitian.
  for (auto& p : projectors) p = 0.5 * (p + p.adjoint());
  return NaimarkExtension(Povm(std::move(projectors), target), ancilla_label, k);
}

Matrix stinespring_isometry(const KrausChannel& ch) {
  const std::size_t k = ch.ops().size(), d_in = ch.input_dim(), d_out = ch.output_dim();
  Matrix v(d_out * k, d_in);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < d_out; ++r)
      for (std::size_t c = 0; c < d_in; ++c) v(r * k + i, c) = ch.ops()[i](r, c);
  return v;
}

LabeledState composite_extend(const LabeledState& s, const KrausChannel& ch, const CompositeLabels& labels) {
  if (ch.input_dim() != ch.output_dim() || ch.output_labels() != ch.target())
    throw Error(ErrorKind::DimensionMismatch, "composite extension needs a channel from E to E");
  const std::size_t k = ch.ops().size(), d = ch.input_dim();
  Matrix y(d * k * k, d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) y(r * k * k + i * k + i, c) = ch.ops()[i](r, c);

  LabelSet out_labels = ch.target();
  std::vector<std::size_t> out_dims;
  for (const auto& l : ch.target()) out_dims.push_back(s.layout().dim_of(l));
  out_labels.push_back(labels.record);
  out_labels.push_back(labels.record_copy);
  out_dims.push_back(k);
  out_dims.push_back(k);
  return apply_operator(s, y, ch.target(), out_labels, out_dims);
}

LabeledState recover(const LabeledState& eta, const KrausChannel& ch, const CompositeLabels& labels) {
  const std::size_t k = ch.ops().size(), d = ch.input_dim();
  if (eta.layout().dim_of(labels.record) != k || eta.layout().dim_of(labels.record_copy) != k)
    throw Error(ErrorKind::DimensionMismatch, "record registers do not match the channel's Kraus count");
  Matrix uncopy(k, k * k);
  for (std::size_t i = 0; i < k; ++i) uncopy(i, i * k + i) = 1.0;
  auto step = apply_operator(eta, uncopy, {labels.record, labels.record_copy}, {labels.record}, {k});

  const Matrix u = dilation_unitary(stinespring_isometry(ch), d, k);
  LabelSet joint = ch.target();
  joint.push_back(labels.record);
  std::vector<std::size_t> joint_dims;
  for (const auto& l : joint) joint_dims.push_back(step.layout().dim_of(l));
  step = apply_operator(step, u.adjoint(), joint, joint, joint_dims);
  return reduce(step, step.layout().complement(LabelSet{labels.record}));
}

}  // namespace qcmi
