#pragma once

// Dense complex matrices sized for desk-scale quantum states (total Hilbert
// dimension up to a few hundred). Storage is row-major std::complex<double>,
// which is layout-compatible with interleaved (re, im) pairs.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qcmi {

using Complex = std::complex<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);
  static Matrix column(std::span<const Complex> values);
  /// |v><v| for a column vector v.
  static Matrix projector(const Matrix& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Complex> entries() noexcept { return entries_; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  Matrix adjoint() const;
  Matrix conj() const;
  Matrix transpose() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scalar);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

Matrix kron(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);
/// ||a - b||_F; throws DimensionMismatch on shape mismatch.
double frobenius_distance(const Matrix& a, const Matrix& b);
/// ||m - m^dagger||_F.
double hermiticity_defect(const Matrix& m);
bool all_finite(const Matrix& m);

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // columns
};

/// Cyclic complex Jacobi. Sweeps until the off-diagonal Frobenius norm drops
/// below 1e-12 * ||m||_F, at most 100 sweeps.
/// Throws NotHermitian when ||m - m^dagger||_F > tol * ||m||_F and
/// NoConvergence when the sweep cap is hit.
HermitianSpectrum hermitian_eig(const Matrix& m, double tol = 1e-10);

/// Same iteration without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol = 1e-10);

/// f applied to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f);

/// Reorders tensor factors: output factor k is input factor perm[k].
/// Equivalent to conjugation by the factor-permutation unitary.
Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm);

/// Traces out every factor not listed in keep. The kept factors retain
/// their original relative order regardless of the order of keep.
Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

/// Column vector on H (x) H_P with dim(P) = rank(rho), eigenvalues at or
/// below 1e-10 treated as zero. Throws NotDensityMatrix when rho is not
/// Hermitian, not unit trace, or has an eigenvalue below -tol.
Matrix purify(const Matrix& rho, double tol = 1e-8);

/// Completes the orthonormal columns of an isometry (rows >= cols) to a
/// square unitary whose leading columns are the input columns.
Matrix complete_to_unitary(const Matrix& isometry);

/// ||U^dagger U - I||_F.
double unitarity_defect(const Matrix& u);

/// Commutator norm ||ab - ba||_F.
double commutator_norm(const Matrix& a, const Matrix& b);

}  // namespace qcmi
