#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "qcmi/error.hpp"
#include "qcmi/linalg.hpp"
#include "qcmi/parametrization.hpp"
#include "qcmi/random.hpp"

using namespace qcmi;

namespace {

Matrix random_hermitian(std::size_t d, Rng& rng) {
  const Matrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) * Complex(0.5);
}

// Entry-by-entry partial trace of the second factor of a bipartite matrix.
Matrix trace_second(const Matrix& m, std::size_t da, std::size_t db) {
  Matrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

}  // namespace

TEST(Matrix, KronMatchesIndexFormula) {
  auto rng = make_rng(1);
  const Matrix a = ginibre(2, 3, rng), b = ginibre(3, 2, rng);
  const Matrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6u);
  ASSERT_EQ(k.cols(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Matrix, ProductShapeMismatchThrows) {
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), Error);
}

TEST(HermitianEig, TwoByTwoClosedForm) {
  // [[a, b], [b*, c]] has eigenvalues (a + c)/2 -+ sqrt(((a - c)/2)^2 + |b|^2).
  const double a = 0.7, c = -0.4;
  const Complex b(0.3, -0.2);
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = std::conj(b);
  m(1, 1) = c;
  const double mid = 0.5 * (a + c), rad = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(b));
  const auto ev = hermitian_eigenvalues(m);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], mid - rad, 1e-13);
  EXPECT_NEAR(ev[1], mid + rad, 1e-13);
}

TEST(HermitianEig, ReconstructsRandomMatrices) {
  auto rng = make_rng(2);
  for (std::size_t d : {1u, 3u, 8u, 24u}) {
    const Matrix h = random_hermitian(d, rng);
    const auto sp = hermitian_eig(h);
    EXPECT_TRUE(std::is_sorted(sp.eigenvalues.begin(), sp.eigenvalues.end()));
    const Matrix lam = Matrix::diagonal(sp.eigenvalues);
    const Matrix back = sp.eigenvectors * lam * sp.eigenvectors.adjoint();
    EXPECT_LT(frobenius_distance(back, h), 1e-10 * (1.0 + frobenius_norm(h)));
    EXPECT_LT(unitarity_defect(sp.eigenvectors), 1e-10);
    const double tr = std::accumulate(sp.eigenvalues.begin(), sp.eigenvalues.end(), 0.0);
    EXPECT_NEAR(tr, h.trace().real(), 1e-10);
  }
}

TEST(HermitianEig, DegenerateSpectrum) {
  const Matrix id = Matrix::identity(5);
  const auto sp = hermitian_eig(id);
  for (double v : sp.eigenvalues) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(HermitianEig, RejectsNonHermitian) {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_eig(m);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
}

TEST(HermitianFunction, SquareRootSquares) {
  auto rng = make_rng(3);
  const Matrix g = ginibre(4, 4, rng);
  const Matrix p = g * g.adjoint();
  const Matrix r = hermitian_function(p, [](double x) { return std::sqrt(std::max(0.0, x)); });
  EXPECT_LT(frobenius_distance(r * r, p), 1e-10 * frobenius_norm(p));
}

TEST(PartialTrace, MatchesIndexSum) {
  auto rng = make_rng(4);
  const Matrix m = ginibre(6, 6, rng);
  const std::vector<std::size_t> dims{2, 3}, keep{0};
  EXPECT_LT(frobenius_distance(partial_trace(m, dims, keep), trace_second(m, 2, 3)), 1e-13);
}

TEST(PartialTrace, ProductFactorsSeparate) {
  auto rng = make_rng(5);
  const Matrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng), c = ginibre(2, 2, rng);
  const Matrix abc = kron(kron(a, b), c);
  const std::vector<std::size_t> dims{2, 3, 2};
  const std::vector<std::size_t> keep_b{1}, keep_ac{2, 0};
  EXPECT_LT(frobenius_distance(partial_trace(abc, dims, keep_b), b * (a.trace() * c.trace())), 1e-12);
  // kept factors stay in their original order
  EXPECT_LT(frobenius_distance(partial_trace(abc, dims, keep_ac), kron(a, c) * b.trace()), 1e-12);
}

TEST(PermuteFactors, SwapOfKron) {
  auto rng = make_rng(6);
  const Matrix a = ginibre(2, 2, rng), b = ginibre(3, 3, rng);
  const std::vector<std::size_t> dims{2, 3}, perm{1, 0};
  EXPECT_LT(frobenius_distance(permute_factors(kron(a, b), dims, perm), kron(b, a)), 1e-13);
}

TEST(Purify, MarginalIsInput) {
  auto rng = make_rng(7);
  const Matrix g = ginibre(3, 2, rng);  // rank 2
  Matrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  const Matrix v = purify(rho);
  ASSERT_EQ(v.rows(), 6u);
  const Matrix p = Matrix::projector(v);
  const std::vector<std::size_t> dims{3, 2}, keep{0};
  EXPECT_LT(frobenius_distance(partial_trace(p, dims, keep), rho), 1e-10);
}

TEST(CompleteToUnitary, KeepsLeadingColumns) {
  auto rng = make_rng(8);
  const Matrix v = random_isometry(5, 2, rng);
  const Matrix u = complete_to_unitary(v);
  EXPECT_LT(unitarity_defect(u), 1e-10);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 2; ++c) EXPECT_LT(std::abs(u(r, c) - v(r, c)), 1e-12);
}

TEST(Parametrization, EveryPointIsAnIsometry) {
  auto rng = make_rng(9);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (auto [k, d] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {4, 2}, {6, 3}}) {
    std::vector<double> p(isometry_parameter_count(k, d));
    for (auto& x : p) x = ang(rng);
    const Matrix v = isometry_from_params(k, d, p);
    EXPECT_LT(frobenius_distance(v.adjoint() * v, Matrix::identity(d)), 1e-12);
  }
}

TEST(Parametrization, CountMatchesManifoldDimension) {
  // Isometries C^d -> C^k modulo a global phase: 2kd - d^2 - 1 real parameters.
  for (std::size_t k = 2; k <= 5; ++k)
    for (std::size_t d = 1; d <= k; ++d) EXPECT_EQ(isometry_parameter_count(k, d), 2 * k * d - d * d - 1);
}

TEST(Parametrization, RoundTripUpToPhase) {
  auto rng = make_rng(10);
  const Matrix v = random_isometry(4, 2, rng);
  const Matrix w = isometry_from_params(4, 2, params_from_isometry(v));
  // Equal up to a global phase: |tr(V^dagger W)| = d.
  EXPECT_NEAR(std::abs((v.adjoint() * w).trace()), 2.0, 1e-9);
}

TEST(Unitary, HaarSamplesAreUnitary) {
  auto rng = make_rng(11);
  for (std::size_t d : {2u, 5u, 12u}) EXPECT_LT(unitarity_defect(random_unitary(d, rng)), 1e-12);
}

TEST(Commutator, DiagonalMatricesCommute) {
  const std::vector<double> a{1, 2, 3}, b{-1, 0.5, 7};
  EXPECT_EQ(commutator_norm(Matrix::diagonal(a), Matrix::diagonal(b)), 0.0);
}
