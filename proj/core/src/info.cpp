#include "qcmi/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcmi/error.hpp"

namespace qcmi {

namespace {

constexpr double kNegativeClamp = -1e-8;
constexpr double kZeroClamp = 1e-12;
constexpr double kSupportThreshold = 1e-10;

void check_disjoint(const LabelSet& x, const LabelSet& y, const LabelSet& z) {
  (void)join_labels(x, y, z);
}

}  // namespace

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l >= kZeroClamp) s -= l * std::log(l);
  return s;
}

double entropy_of_matrix(const Matrix& rho) {
  if (rho.rows() == 1) return 0.0;
  return entropy_of_spectrum(hermitian_eigenvalues(rho, 1e-6));
}

EntropyReport vn_entropy(const LabeledState& s) {
  const auto eig = hermitian_eigenvalues(s.matrix(), 1e-6);
  double total = 0.0;
  EntropyReport report;
  for (double l : eig) {
    total += l;
    if (l < kNegativeClamp) {
      throw Error(ErrorKind::NotDensityMatrix, "eigenvalue " + std::to_string(l) + " below -1e-8");
    }
    if (l < kZeroClamp) report.clamped_mass += std::abs(l);
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw Error(ErrorKind::NotDensityMatrix, "trace " + std::to_string(total) + " is not 1");
  }
  report.value = entropy_of_spectrum(eig);
  return report;
}

double marginal_entropy(const LabeledState& s, std::span<const Label> labels) {
  if (labels.empty()) return 0.0;
  auto idx = s.layout().indices_of(labels);
  std::sort(idx.begin(), idx.end());
  if (idx.size() == s.layout().size()) return entropy_of_matrix(s.matrix());
  return entropy_of_matrix(partial_trace(s.matrix(), s.layout().dims(), idx));
}

double relative_entropy(const LabeledState& rho, const LabeledState& sigma) {
  if (!(rho.layout() == sigma.layout())) {
    throw Error(ErrorKind::LayoutMismatch, "relative entropy needs identical layouts");
  }
  const double s_rho = entropy_of_matrix(rho.matrix());
  const auto spec = hermitian_eig(sigma.matrix(), 1e-6);
  const Matrix& v = spec.eigenvectors;
  const Matrix& r = rho.matrix();
  const std::size_t n = r.rows();

  double outside = 0.0, cross = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // <v_k| rho |v_k>
    Complex w{};
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) row += r(i, j) * v(j, k);
      w += std::conj(v(i, k)) * row;
    }
    if (spec.eigenvalues[k] <= kSupportThreshold) {
      outside += w.real();
    } else {
      cross += w.real() * std::log(spec.eigenvalues[k]);
    }
  }
  if (outside > kSupportThreshold) return std::numeric_limits<double>::infinity();
  return -s_rho - cross;
}

double mutual_information(const LabeledState& s, const LabelSet& x, const LabelSet& y) {
  return cmi(s, x, y, {});
}

double cmi(const LabeledState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z) {
  if (x.empty() || y.empty()) throw Error(ErrorKind::EmptyKeepSet, "cmi needs nonempty x and y");
  check_disjoint(x, y, z);
  const LabelSet xz = join_labels(x, z);
  const LabelSet yz = join_labels(y, z);
  const LabelSet xyz = join_labels(x, y, z);
  return marginal_entropy(s, xz) + marginal_entropy(s, yz) - marginal_entropy(s, z) - marginal_entropy(s, xyz);
}

LabelSet SettingParties::resolved_environment(const SubsystemLayout& layout) const {
  if (!environment.empty()) return environment;
  return layout.complement(join_labels(ancilla, system));
}

DecompositionResidual decomposition_identity(const LabeledState& s, const SettingParties& parties) {
  const LabelSet env = parties.resolved_environment(s.layout());
  DecompositionResidual r;
  r.i_a_se = mutual_information(s, parties.ancilla, join_labels(parties.system, env));
  r.i_ae_given_s = cmi(s, parties.ancilla, env, parties.system);
  r.i_as = mutual_information(s, parties.ancilla, parties.system);
  r.residual = std::abs(r.i_a_se - r.i_ae_given_s - r.i_as);
  return r;
}

CapacityResidual capacity_identity(const LabeledState& s, const SettingParties& parties) {
  const LabelSet env = parties.resolved_environment(s.layout());
  CapacityResidual r;
  r.i_ae_given_s = cmi(s, parties.ancilla, env, parties.system);
  r.i_as = mutual_information(s, parties.ancilla, parties.system);
  r.s_a = marginal_entropy(s, parties.ancilla);
  r.residual = std::abs(r.i_ae_given_s + r.i_as - 2.0 * r.s_a);
  return r;
}

}  // namespace qcmi
