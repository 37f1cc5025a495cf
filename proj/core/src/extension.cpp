#include "qcmi/extension.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qcmi/error.hpp"
#include "qcmi/info.hpp"
#include "qcmi/parametrization.hpp"

namespace qcmi {

namespace {

constexpr double kSupport = 1e-10;

double entropy_of_pure_marginal(const Matrix& psi, std::span<const std::size_t> dims, std::span<const std::size_t> keep) {
  if (keep.empty() || keep.size() == dims.size()) return 0.0;
  return entropy_of_matrix(partial_trace(Matrix::projector(psi), dims, keep));
}

std::vector<std::size_t> positions(const SubsystemLayout& layout, const LabelSet& labels) {
  auto idx = layout.indices_of(labels);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// w with E = |w><w| for a rank-one effect.
Matrix rank_one_vector(const Matrix& e) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < e.rows(); ++i)
    if (e(i, i).real() > e(k, k).real()) k = i;
  Matrix w(e.rows(), 1);
  const double top = e(k, k).real();
  if (top <= 0.0) return w;
  for (std::size_t i = 0; i < e.rows(); ++i) w(i, 0) = e(i, k) / std::sqrt(top);
  return w;
}

Matrix pure_vector(const LabeledState& s) {
  const auto spec = hermitian_eig(s.matrix());
  if (spec.eigenvalues.back() < 1.0 - 1e-8) throw Error(ErrorKind::NotDensityMatrix, "state is not pure");
  Matrix v(s.dim(), 1);
  for (std::size_t i = 0; i < s.dim(); ++i) v(i, 0) = spec.eigenvectors(i, s.dim() - 1);
  return v;
}

}  // namespace

ExtensionParametrization::ExtensionParametrization(std::size_t purifier_dim, std::size_t ext_dim,
                                                   std::size_t garbage_dim)
    : purifier_dim_(purifier_dim), ext_dim_(ext_dim), garbage_dim_(garbage_dim) {
  if (purifier_dim == 0 || ext_dim == 0 || garbage_dim == 0)
    throw Error(ErrorKind::DimensionMismatch, "extension dimensions must be positive");
  if (ext_dim * garbage_dim < purifier_dim)
    throw Error(ErrorKind::DimensionMismatch, "ext_dim * garbage_dim must be at least the purifier dimension");
}

std::size_t ExtensionParametrization::parameter_count() const noexcept {
  return isometry_parameter_count(ext_dim_ * garbage_dim_, purifier_dim_);
}

Matrix ExtensionParametrization::isometry(std::span<const double> params) const {
  return isometry_from_params(ext_dim_ * garbage_dim_, purifier_dim_, params);
}

std::size_t default_garbage_dim(std::size_t rank, std::size_t ext_dim) {
  if (ext_dim == 0) throw Error(ErrorKind::DimensionMismatch, "ext_dim must be positive");
  return std::max<std::size_t>(2, (rank + ext_dim - 1) / ext_dim);
}

Extender::Extender(const LabeledState& s, std::size_t ext_dim, std::size_t garbage_dim, Label ext_label)
    : layout_(s.layout()),
      psi_(purify(s.matrix())),
      param_(psi_.rows() / s.dim(), ext_dim, garbage_dim == 0 ? default_garbage_dim(psi_.rows() / s.dim(), ext_dim) : garbage_dim),
      label_(std::move(ext_label)) {
  if (layout_.contains(label_)) throw Error(ErrorKind::DuplicateLabel, "extension label '" + label_ + "' in use");
}

LabeledState Extender::extend(std::span<const double> params) const {
  const std::size_t n = layout_.total_dim(), r = param_.purifier_dim(), m = param_.ext_dim(), g = param_.garbage_dim();
  const Matrix w = param_.isometry(params);
  Matrix phi(n * m, g);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < r; ++j) {
      const Complex a = psi_(h * r + j, 0);
      if (a == Complex{}) continue;
      for (std::size_t x = 0; x < m; ++x)
        for (std::size_t k = 0; k < g; ++k) phi(h * m + x, k) += w(x * g + k, j) * a;
    }
  LabelSet labels = layout_.labels();
  std::vector<std::size_t> dims = layout_.dims();
  labels.push_back(label_);
  dims.push_back(m);
  return LabeledState(SubsystemLayout(std::move(labels), std::move(dims)), phi * phi.adjoint());
}

LabeledState extend(const LabeledState& s, const ExtensionParametrization& ext, std::span<const double> params,
                    const Label& ext_label) {
  const Extender e(s, ext.ext_dim(), ext.garbage_dim(), ext_label);
  if (e.parametrization().purifier_dim() != ext.purifier_dim())
    throw Error(ErrorKind::DimensionMismatch, "purifier dimension does not match the rank of the state");
  return e.extend(params);
}

namespace {

// r(x; y X'|z) evaluated from the purification with the garbage register
// kept explicit. Phi has rows (x, z, y, X') and one column per garbage level,
// so every entropy involved is that of a small Gram matrix.
class ExtendedObjective {
 public:
  ExtendedObjective(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                    const ExtensionConfig& cfg)
      : dx_(s.layout().dim_of(x)), dz_(s.layout().dim_of(z)), dy_(s.layout().dim_of(y)), m_(cfg.ext_dim) {
    const LabelSet order = join_labels(x, z, y);
    const LabeledState marginal = reorder(reduce(s, order), order);
    const Matrix psi = purify(marginal.matrix());
    n_ = marginal.dim();
    r_ = psi.rows() / n_;
    psi_ = Matrix(n_, r_, std::vector<Complex>(psi.entries().begin(), psi.entries().end()));
    g_ = cfg.garbage_dim == 0 ? default_garbage_dim(r_, m_) : cfg.garbage_dim;
    ext_.emplace(r_, m_, g_);
    meas_.emplace(dy_ * m_, cfg.search.outcomes);
    const std::vector<std::size_t> dims{dx_, dz_, dy_};
    const std::vector<std::size_t> keep_xz{0, 1}, keep_z{1};
    s_xz_ = entropy_of_matrix(partial_trace(marginal.matrix(), dims, keep_xz));
    s_z_ = dz_ == 1 ? 0.0 : entropy_of_matrix(partial_trace(marginal.matrix(), dims, keep_z));
  }

  std::size_t extension_parameters() const { return ext_->parameter_count(); }
  std::size_t measurement_parameters() const { return meas_->parameter_count(); }
  std::size_t garbage_dim() const { return g_; }
  const MeasurementParametrization& measurement() const { return *meas_; }

  double operator()(std::span<const double> p) const {
    const std::size_t nw = extension_parameters();
    const Matrix w = ext_->isometry(p.first(nw));
    const std::size_t rows = n_ * m_;
    Matrix phi(rows, g_);
    for (std::size_t h = 0; h < n_; ++h)
      for (std::size_t j = 0; j < r_; ++j) {
        const Complex a = psi_(h, j);
        if (a == Complex{}) continue;
        for (std::size_t e = 0; e < m_; ++e)
          for (std::size_t k = 0; k < g_; ++k) phi(h * m_ + e, k) += w(e * g_ + k, j) * a;
      }

    // I(x:yX'|z) = S(xz) + S(xG) - S(z) - S(G) for the pure state on x z y X' G.
    const double s_g = entropy_of_matrix(phi.adjoint() * phi);
    const std::size_t rest = rows / dx_;
    Matrix rho_xg(dx_ * g_, dx_ * g_);
    for (std::size_t a = 0; a < dx_; ++a)
      for (std::size_t b = 0; b < dx_; ++b)
        for (std::size_t k = 0; k < g_; ++k)
          for (std::size_t l = 0; l < g_; ++l) {
            Complex acc{};
            for (std::size_t q = 0; q < rest; ++q) acc += phi(a * rest + q, k) * std::conj(phi(b * rest + q, l));
            rho_xg(a * g_ + k, b * g_ + l) = acc;
          }
    const double i_cmi = s_xz_ + entropy_of_matrix(rho_xg) - s_z_ - s_g;

    // J from the rank-one effects |w_i><w_i| with conj(w_i) = row i of the measurement isometry.
    const std::size_t d_meas = dy_ * m_, d_xz = dx_ * dz_;
    const Matrix v = isometry_from_params(meas_->outcomes(), d_meas, p.subspan(nw));
    double j = s_xz_ - s_z_;
    Matrix block(d_xz, g_);
    for (std::size_t i = 0; i < meas_->outcomes(); ++i) {
      double prob = 0.0;
      for (std::size_t a = 0; a < d_xz; ++a)
        for (std::size_t k = 0; k < g_; ++k) {
          Complex acc{};
          for (std::size_t b = 0; b < d_meas; ++b) acc += v(i, b) * phi(a * d_meas + b, k);
          block(a, k) = acc;
          prob += std::norm(acc);
        }
      if (prob <= 1e-14) continue;
      block *= Complex(1.0 / std::sqrt(prob));
      const double s_xz_i = g_ < d_xz ? entropy_of_matrix(block.adjoint() * block) : entropy_of_matrix(block * block.adjoint());
      double s_z_i = 0.0;
      if (dz_ > 1) {
        Matrix sz(dz_, dz_);
        for (std::size_t a = 0; a < dx_; ++a)
          for (std::size_t c = 0; c < dz_; ++c)
            for (std::size_t e = 0; e < dz_; ++e)
              for (std::size_t k = 0; k < g_; ++k) sz(c, e) += block(a * dz_ + c, k) * std::conj(block(a * dz_ + e, k));
        s_z_i = entropy_of_matrix(sz);
      }
      j += prob * (s_z_i - s_xz_i);
    }
    return i_cmi - j;
  }

 private:
  std::size_t dx_, dz_, dy_, m_;
  std::size_t n_ = 0, r_ = 0, g_ = 0;
  Matrix psi_;  // rows (x, z, y), columns purifier
  std::optional<ExtensionParametrization> ext_;
  std::optional<MeasurementParametrization> meas_;
  double s_xz_ = 0.0, s_z_ = 0.0;
};

}  // namespace

double extended_r(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                  const ExtensionConfig& cfg, std::span<const double> params) {
  const ExtendedObjective f(s, x, y, z, cfg);
  if (params.size() != f.extension_parameters() + f.measurement_parameters())
    throw Error(ErrorKind::DimensionMismatch, "wrong number of extension and measurement parameters");
  return f(params);
}

ExtensionResult r_ex(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                     const ExtensionConfig& cfg) {
  if (cfg.ext_dim < 1 || cfg.ext_dim > 4) throw Error(ErrorKind::RangeError, "ext_dim must lie in [1, 4]");
  if (x.empty() || y.empty()) throw Error(ErrorKind::EmptyKeepSet, "x and y must be nonempty");

  ExtensionResult out;
  out.ext_dim = cfg.ext_dim;
  const QuantumPart base = big_r(s, x, y, z, cfg.search);
  out.baseline = base.value;
  out.evaluations = base.classical.evaluations;
  out.budget_exhausted = base.classical.budget_exhausted;

  const ExtendedObjective f(s, x, y, z, cfg);
  out.garbage_dim = f.garbage_dim();
  const std::size_t nw = f.extension_parameters(), nm = f.measurement_parameters();
  const Objective obj = [&f](std::span<const double> p) { return f(p); };
  const SearchResult best = minimize(obj, nw + nm, cfg.search, {std::vector<double>(nw + nm, 0.0)});
  out.evaluations += best.evaluations;
  out.budget_exhausted = out.budget_exhausted || best.budget_exhausted;
  out.search_value = best.value;
  out.ext_params.assign(best.x.begin(), best.x.begin() + static_cast<std::ptrdiff_t>(nw));
  out.effects = f.measurement().effects(std::span<const double>(best.x).subspan(nw));
  out.baseline_effects = base.classical.effects;
  out.from_search = out.search_value < out.baseline;
  out.value = std::min(out.baseline, out.search_value);
  return out;
}

ExtensionWitness extension_witness(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z,
                                   const ExtensionResult& result, const ExtensionConfig& cfg) {
  ExtensionWitness w;
  const LabelSet order = join_labels(x, z, y);
  const LabeledState marginal = reorder(reduce(s, order), order);
  if (result.from_search) {
    w.state = Extender(marginal, result.ext_dim, result.garbage_dim, cfg.ext_label).extend(result.ext_params);
    w.effects = result.effects;
  } else {
    w.state = tensor(marginal, basis_state(SubsystemLayout({cfg.ext_label}, {1}), std::vector<std::size_t>{0}));
    w.effects = result.baseline_effects;
  }
  w.measured = y;
  w.measured.push_back(cfg.ext_label);
  w.r = r_conditional(w.state, Povm(w.effects, w.measured), x, z);
  return w;
}

ExtensionResult e_a(const LabeledState& s, const LabelSet& a, const LabelSet& b, const ExtensionConfig& cfg) {
  return r_ex(s, a, b, {}, cfg);
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

double concurrence(const LabeledState& s, const Label& a, const Label& b) {
  const LabelSet ab{a, b};
  const LabeledState m = reorder(reduce(s, ab), ab);
  if (m.layout().dims() != std::vector<std::size_t>{2, 2})
    throw Error(ErrorKind::DimensionMismatch, "concurrence needs two qubits");
  const Matrix& rho = m.matrix();
  Matrix sy(2, 2);
  sy(0, 1) = Complex(0.0, -1.0);
  sy(1, 0) = Complex(0.0, 1.0);
  const Matrix yy = kron(sy, sy);
  const Matrix tilde = yy * rho.conj() * yy;
  const Matrix root = hermitian_function(rho, [](double v) { return std::sqrt(std::max(v, 0.0)); });
  Matrix r = root * tilde * root;
  r = 0.5 * (r + r.adjoint());
  auto mu = hermitian_eigenvalues(r);
  std::vector<double> l;
  for (double v : mu) l.push_back(std::sqrt(std::max(v, 0.0)));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double entanglement_of_formation(const LabeledState& s, const Label& a, const Label& b) {
  const double c = std::min(1.0, concurrence(s, a, b));
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

DecompositionParametrization::DecompositionParametrization(std::size_t rank, std::size_t ensemble_size)
    : rank_(rank), size_(ensemble_size) {
  if (rank == 0 || ensemble_size < rank)
    throw Error(ErrorKind::DimensionMismatch, "ensemble size must be at least the rank");
}

std::size_t DecompositionParametrization::parameter_count() const noexcept {
  return isometry_parameter_count(size_, rank_);
}

Matrix DecompositionParametrization::isometry(std::span<const double> params) const {
  return isometry_from_params(size_, rank_, params);
}

EnsembleSource::EnsembleSource(const LabeledState& s) : layout_(s.layout()) {
  const auto spec = hermitian_eig(s.matrix());
  const std::size_t n = s.dim();
  std::vector<std::size_t> keep;
  for (std::size_t k = n; k-- > 0;)
    if (spec.eigenvalues[k] > kSupport) keep.push_back(k);
  if (keep.empty()) throw Error(ErrorKind::NotDensityMatrix, "state has no support");
  double total = 0.0;
  for (auto k : keep) total += spec.eigenvalues[k];
  vectors_ = Matrix(n, keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    sqrt_lambda_.push_back(std::sqrt(spec.eigenvalues[keep[j]] / total));
    for (std::size_t i = 0; i < n; ++i) vectors_(i, j) = spec.eigenvectors(i, keep[j]);
  }
}

Ensemble EnsembleSource::ensemble(const Matrix& mixing) const {
  const std::size_t n = layout_.total_dim(), r = rank();
  if (mixing.cols() != r) throw Error(ErrorKind::DimensionMismatch, "mixing isometry does not match the rank");
  Ensemble out;
  for (std::size_t i = 0; i < mixing.rows(); ++i) {
    Matrix v(n, 1);
    for (std::size_t j = 0; j < r; ++j) {
      const Complex c = mixing(i, j) * sqrt_lambda_[j];
      for (std::size_t h = 0; h < n; ++h) v(h, 0) += c * vectors_(h, j);
    }
    const double w = std::pow(frobenius_norm(v), 2);
    if (w > 0.0) v *= Complex(1.0 / std::sqrt(w));
    out.weights.push_back(w);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

SearchValue eof_general(const LabeledState& s, const LabelSet& a, const LabelSet& b, const OptimizerConfig& cfg,
                        std::size_t ensemble_size) {
  const LabeledState m = reduce(s, join_labels(a, b));
  const EnsembleSource src(m);
  const DecompositionParametrization dp(src.rank(), ensemble_size == 0 ? src.rank() + 1 : ensemble_size);
  const auto keep = positions(m.layout(), a);
  const Objective f = [&](std::span<const double> p) {
    const Ensemble e = src.ensemble(dp.isometry(p));
    double acc = 0.0;
    for (std::size_t i = 0; i < e.weights.size(); ++i)
      if (e.weights[i] > 1e-14) acc += e.weights[i] * entropy_of_pure_marginal(e.vectors[i], m.layout().dims(), keep);
    return acc;
  };
  const SearchResult best = minimize(f, dp.parameter_count(), cfg,
                                     {std::vector<double>(dp.parameter_count(), 0.0)});
  return {best.value, best.x, dp.ensemble_size(), best.budget_exhausted};
}

double w_at(const LabeledState& s, const Ensemble& ensemble, const LabelSet& x, const LabelSet& z) {
  const LabelSet xz = join_labels(x, z);
  const auto keep_xz = positions(s.layout(), xz);
  const auto keep_z = positions(s.layout(), z);
  double acc = marginal_entropy(s, xz) - marginal_entropy(s, z);
  for (std::size_t i = 0; i < ensemble.weights.size(); ++i) {
    if (ensemble.weights[i] <= 1e-14) continue;
    const Matrix& v = ensemble.vectors[i];
    acc += ensemble.weights[i] * (entropy_of_pure_marginal(v, s.layout().dims(), keep_z) -
                                  entropy_of_pure_marginal(v, s.layout().dims(), keep_xz));
  }
  return acc;
}

SearchValue w_quantity(const LabeledState& s, const LabelSet& x, const LabelSet& z, const LabelSet& c,
                       const OptimizerConfig& cfg, std::size_t ensemble_size) {
  const LabeledState m = reduce(s, join_labels(x, z, c));
  const EnsembleSource src(m);
  const DecompositionParametrization dp(src.rank(), ensemble_size == 0 ? src.rank() + 1 : ensemble_size);
  const Objective f = [&](std::span<const double> p) { return -w_at(m, src.ensemble(dp.isometry(p)), x, z); };
  const SearchResult best = minimize(f, dp.parameter_count(), cfg,
                                     {std::vector<double>(dp.parameter_count(), 0.0)});
  return {-best.value, best.x, dp.ensemble_size(), best.budget_exhausted};
}

KoashiWinterRecord koashi_winter_check(const LabeledState& phi, const Label& a, const Label& b, const LabelSet& c,
                                       const OptimizerConfig& cfg) {
  const LabeledState m = reduce(phi, join_labels({a}, {b}, c));
  if (hermitian_eigenvalues(m.matrix()).back() < 1.0 - 1e-8)
    throw Error(ErrorKind::NotDensityMatrix, "Koashi-Winter check needs a pure state");
  KoashiWinterRecord r;
  r.e_f = entanglement_of_formation(m, a, b);
  r.classical = classical_cmi(m, {a}, c, {}, cfg).value;
  r.s_a = marginal_entropy(m, LabelSet{a});
  r.residual = std::abs(r.e_f + r.classical - r.s_a);
  return r;
}

GeneralizedKwRecord generalized_kw_check(const LabeledState& s, const LabelSet& x, const LabelSet& y,
                                         const LabelSet& z, const OptimizerConfig& cfg, const LabelSet& purifier,
                                         std::size_t ext_dim, std::span<const double> ext_params) {
  GeneralizedKwRecord rec;
  const SettingParties setting{x, z, {}};
  const LabelSet env = setting.resolved_environment(s.layout());
  rec.i_total = cmi(s, x, env, z);
  rec.capacity_residual = capacity_identity(s, setting).residual;

  const Label ext_label = "X'";
  const Label purifier_label = "C";
  const LabeledState marginal = reduce(s, join_labels(x, z, y));
  LabelSet measured = y;
  LabeledState extended = marginal;
  if (ext_dim > 1 || !ext_params.empty()) {
    extended = Extender(marginal, ext_dim, 0, ext_label).extend(ext_params);
    measured.push_back(ext_label);
  }

  // Pure state on (x, z, C, y X') with C the purifier.
  LabelSet c_labels;
  Matrix phi;
  SubsystemLayout phi_layout;
  if (!purifier.empty()) {
    if (measured.size() != y.size()) throw Error(ErrorKind::LayoutMismatch, "explicit purifier needs the trivial extension");
    c_labels = purifier;
    const LabelSet order = join_labels(join_labels(x, z, c_labels), measured);
    const LabeledState pure = reorder(reduce(s, order), order);
    phi = pure_vector(pure);
    phi_layout = pure.layout();
  } else {
    const Matrix psi = purify(extended.matrix());
    const std::size_t rank = psi.rows() / extended.dim();
    LabelSet labels = extended.labels();
    std::vector<std::size_t> dims = extended.layout().dims();
    labels.push_back(purifier_label);
    dims.push_back(rank);
    const LabeledState pure = LabeledState::from_vector(SubsystemLayout(labels, dims), psi);
    c_labels = {purifier_label};
    const LabelSet order = join_labels(join_labels(x, z, c_labels), measured);
    const LabeledState ordered = reorder(pure, order);
    phi = pure_vector(ordered);
    phi_layout = ordered.layout();
  }
  const LabeledState phi_state = LabeledState::from_vector(phi_layout, phi);
  rec.i_xc = mutual_information(phi_state, x, c_labels);

  const ClassicalCorrelation best = classical_cmi(extended, x, measured, z, cfg);
  rec.classical = best.value;
  rec.r = cmi(extended, x, measured, z) - best.value;

  const LabelSet xzc = join_labels(x, z, c_labels);
  const LabeledState rho_xzc = reduce(phi_state, xzc);
  const std::size_t d_front = rho_xzc.dim(), d_meas = phi_layout.dim_of(measured);
  Ensemble matched;
  for (const auto& e : best.effects) {
    const Matrix w = rank_one_vector(e);
    Matrix v(d_front, 1);
    for (std::size_t a = 0; a < d_front; ++a)
      for (std::size_t b = 0; b < d_meas; ++b) v(a, 0) += std::conj(w(b, 0)) * phi(a * d_meas + b, 0);
    const double p = std::pow(frobenius_norm(v), 2);
    if (p > 0.0) v *= Complex(1.0 / std::sqrt(p));
    matched.weights.push_back(p);
    matched.vectors.push_back(std::move(v));
  }
  rec.w_matched = w_at(rho_xzc, matched, x, z);
  rec.w_search = w_quantity(rho_xzc, x, z, c_labels, cfg, d_meas).value;
  rec.residual = std::abs(rec.r + rec.i_xc + rec.w_matched - rec.i_total);
  return rec;
}

}  // namespace qcmi
