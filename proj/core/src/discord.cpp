#include "qcmi/discord.hpp"

#include <algorithm>
#include <cmath>

#include "qcmi/error.hpp"
#include "qcmi/info.hpp"
#include "qcmi/parametrization.hpp"

namespace qcmi {

namespace {

constexpr double kNegligibleOutcome = 1e-14;

std::size_t resolve_outcomes(std::size_t dim, std::size_t outcomes) {
  const std::size_t k = outcomes == 0 ? dim : outcomes;
  if (k < dim || k > dim * dim)
    throw Error(ErrorKind::RangeError, "outcomes must lie in [" + std::to_string(dim) + ", " +
                                           std::to_string(dim * dim) + "], got " + std::to_string(k));
  return k;
}

}  // namespace

MeasurementParametrization::MeasurementParametrization(std::size_t dim, std::size_t outcomes)
    : dim_(dim), outcomes_(resolve_outcomes(dim, outcomes)) {
  if (dim == 0) throw Error(ErrorKind::DimensionMismatch, "measurement dimension must be positive");
}

std::size_t MeasurementParametrization::parameter_count() const noexcept {
  return isometry_parameter_count(outcomes_, dim_);
}

std::vector<Matrix> MeasurementParametrization::effects(std::span<const double> params) const {
  const Matrix v = isometry_from_params(outcomes_, dim_, params);
  std::vector<Matrix> out;
  out.reserve(outcomes_);
  for (std::size_t i = 0; i < outcomes_; ++i) {
    Matrix e(dim_, dim_);
    for (std::size_t a = 0; a < dim_; ++a)
      for (std::size_t b = 0; b < dim_; ++b) e(a, b) = std::conj(v(i, a)) * v(i, b);
    out.push_back(std::move(e));
  }
  return out;
}

Povm MeasurementParametrization::decode(std::span<const double> params, const LabelSet& target) const {
  return Povm(effects(params), target);
}

std::vector<double> MeasurementParametrization::encode(const Povm& povm) const {
  if (povm.dim() != dim_ || povm.outcomes() != outcomes_)
    throw Error(ErrorKind::BadPovm, "POVM shape does not match the parametrization");
  Matrix v(outcomes_, dim_);
  for (std::size_t i = 0; i < outcomes_; ++i) {
    const auto spec = hermitian_eig(povm.effects()[i]);
    const auto& lam = spec.eigenvalues;
    if (dim_ > 1 && lam[dim_ - 2] > 1e-8) throw Error(ErrorKind::BadPovm, "effect " + std::to_string(i) + " is not rank one");
    const double top = std::sqrt(std::max(lam.back(), 0.0));
    for (std::size_t a = 0; a < dim_; ++a) v(i, a) = std::conj(top * spec.eigenvectors(a, dim_ - 1));
  }
  return params_from_isometry(v);
}

ConditionalEvaluator::ConditionalEvaluator(const LabeledState& s, LabelSet x, LabelSet y, LabelSet z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (x_.empty() || y_.empty()) throw Error(ErrorKind::EmptyKeepSet, "x and y must be nonempty");
  const LabelSet order = join_labels(x_, z_, y_);
  rho_ = reorder(reduce(s, order), order).matrix();
  dx_ = s.layout().dim_of(x_);
  dz_ = s.layout().dim_of(z_);
  dy_ = s.layout().dim_of(y_);
  const std::vector<std::size_t> dims{dx_, dz_, dy_};
  const std::vector<std::size_t> keep_xz{0, 1}, keep_z{1}, keep_yz{1, 2};
  const Matrix rho_xz = partial_trace(rho_, dims, keep_xz);
  s_xz_ = entropy_of_matrix(rho_xz);
  s_z_ = entropy_of_matrix(partial_trace(rho_, dims, keep_z));
  cmi_ = s_xz_ + entropy_of_matrix(partial_trace(rho_, dims, keep_yz)) - s_z_ - entropy_of_matrix(rho_);
}

double ConditionalEvaluator::j(std::span<const Matrix> effects) const {
  const std::size_t n = dx_ * dz_;
  const std::vector<std::size_t> dims{dx_, dz_};
  const std::vector<std::size_t> keep_z{1};
  double acc = s_xz_ - s_z_;
  Matrix sigma(n, n);
  for (const auto& m : effects) {
    if (m.rows() != dy_) throw Error(ErrorKind::DimensionMismatch, "effect dimension does not match y");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        Complex v{};
        for (std::size_t p = 0; p < dy_; ++p)
          for (std::size_t q = 0; q < dy_; ++q) v += m(q, p) * rho_(a * dy_ + p, b * dy_ + q);
        sigma(a, b) = v;
        sigma(b, a) = std::conj(v);
      }
    const double p = sigma.trace().real();
    if (p <= kNegligibleOutcome) continue;
    sigma *= Complex(1.0 / p);
    const double s_sz = dz_ == 1 ? 0.0 : entropy_of_matrix(partial_trace(sigma, dims, keep_z));
    acc += p * (s_sz - entropy_of_matrix(sigma));
  }
  return acc;
}

double j_conditional(const LabeledState& s, const Povm& povm, const LabelSet& x, const LabelSet& z) {
  const ConditionalEvaluator ev(s, x, povm.target(), z);
  if (povm.dim() != ev.measured_dim()) throw Error(ErrorKind::DimensionMismatch, "POVM dimension mismatch");
  return ev.j(povm.effects());
}

double r_conditional(const LabeledState& s, const Povm& povm, const LabelSet& x, const LabelSet& z) {
  const ConditionalEvaluator ev(s, x, povm.target(), z);
  if (povm.dim() != ev.measured_dim()) throw Error(ErrorKind::DimensionMismatch, "POVM dimension mismatch");
  return ev.cmi() - ev.j(povm.effects());
}

ClassicalCorrelation classical_cmi(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                                   const OptimizerConfig& cfg) {
  const ConditionalEvaluator ev(s, x, y, z);
  const MeasurementParametrization mp(ev.measured_dim(), cfg.outcomes);
  const Objective f = [&](std::span<const double> p) { return -ev.j(mp.effects(p)); };
  const std::vector<std::vector<double>> starts{std::vector<double>(mp.parameter_count(), 0.0)};
  const SearchResult best = minimize(f, mp.parameter_count(), cfg, starts);

  ClassicalCorrelation out;
  out.value = -best.value;
  out.params = best.x;
  out.effects = mp.effects(best.x);
  out.target = y;
  out.outcomes = mp.outcomes();
  out.best_restart = best.best_restart;
  out.evaluations = best.evaluations;
  out.budget_exhausted = best.budget_exhausted;
  return out;
}

QuantumPart big_r(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                  const OptimizerConfig& cfg) {
  QuantumPart out;
  out.classical = classical_cmi(s, x, y, z, cfg);
  out.cmi = cmi(s, x, y, z);
  out.value = out.cmi - out.classical.value;
  return out;
}

ClassicalCorrelation bipartite_classical_corr(const LabeledState& s, const LabelSet& a, const LabelSet& b,
                                              const OptimizerConfig& cfg) {
  return classical_cmi(s, a, b, {}, cfg);
}

QuantumPart discord(const LabeledState& s, const LabelSet& a, const LabelSet& b, const OptimizerConfig& cfg) {
  return big_r(s, a, b, {}, cfg);
}

}  // namespace qcmi
