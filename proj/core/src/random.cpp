#include "qcmi/random.hpp"

#include <cmath>

#include "qcmi/error.hpp"

namespace qcmi {

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t offset) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (offset + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t offset) { return Rng(substream_seed(seed, offset)); }

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (auto& z : m.entries()) {
    const double re = n(rng);
    const double im = n(rng);
    z = Complex(re, im);
  }
  return m;
}

Matrix random_isometry(std::size_t k, std::size_t d, Rng& rng) {
  if (d > k) throw Error(ErrorKind::DimensionMismatch, "isometry needs k >= d");
  Matrix g = ginibre(k, d, rng);
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < j; ++p) {
        Complex overlap{};
        for (std::size_t r = 0; r < k; ++r) overlap += std::conj(g(r, p)) * g(r, j);
        for (std::size_t r = 0; r < k; ++r) g(r, j) -= overlap * g(r, p);
      }
    double norm = 0.0;
    for (std::size_t r = 0; r < k; ++r) norm += std::norm(g(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < k; ++r) g(r, j) /= norm;
  }
  return g;
}

Matrix random_unitary(std::size_t d, Rng& rng) { return random_isometry(d, d, rng); }

Matrix random_pure_vector(std::size_t d, Rng& rng) { return random_isometry(d, 1, rng); }

LabeledState random_pure(const SubsystemLayout& layout, Rng& rng) {
  return LabeledState::from_vector(layout, random_pure_vector(layout.total_dim(), rng));
}

LabeledState random_density(const SubsystemLayout& layout, Rng& rng, std::size_t rank) {
  const std::size_t n = layout.total_dim();
  if (rank == 0) rank = n;
  const Matrix g = ginibre(n, rank, rng);
  Matrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return LabeledState(layout, std::move(rho));
}

KrausChannel random_channel(std::size_t d, std::size_t k, const LabelSet& target, Rng& rng) {
  const Matrix v = random_isometry(d * k, d, rng);
  std::vector<Matrix> ops(k, Matrix(d, d));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ops[i](r, c) = v(r * k + i, c);
  return KrausChannel(std::move(ops), target);
}

Povm random_povm(std::size_t d, std::size_t k, const LabelSet& target, Rng& rng) {
  const Matrix v = random_isometry(k, d, rng);
  std::vector<Matrix> effects;
  for (std::size_t i = 0; i < k; ++i) {
    Matrix w(d, 1);
    for (std::size_t a = 0; a < d; ++a) w(a, 0) = std::conj(v(i, a));
    effects.push_back(Matrix::projector(w));
  }
  return Povm(std::move(effects), target);
}

}  // namespace qcmi
