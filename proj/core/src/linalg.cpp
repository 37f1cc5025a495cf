#include "qcmi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcmi/error.hpp"

namespace qcmi {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "entry count " + std::to_string(entries_.size()) + " != " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::column(std::span<const Complex> values) {
  return Matrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

Matrix Matrix::projector(const Matrix& v) {
  if (v.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "projector expects a column vector");
  const std::size_t n = v.rows();
  Matrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = v(i, 0) * std::conj(v(j, 0));
  return p;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex Matrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorKind::DimensionMismatch,
                "product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " * " +
                    std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Complex* row = &out.entries_[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a.entries_[i * a.cols_ + k];
      if (aik == Complex{}) continue;
      const Complex* brow = &b.entries_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  Matrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return out;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "frobenius_distance shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

double hermiticity_defect(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermiticity of non-square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

bool all_finite(const Matrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalThreshold = 1e-12;

HermitianSpectrum jacobi(const Matrix& m, double tol, bool want_vectors) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "eigendecomposition of non-square matrix");
  const std::size_t n = m.rows();
  const double norm = frobenius_norm(m);
  const double defect = hermiticity_defect(m);
  if (defect > tol * norm) {
    throw Error(ErrorKind::NotHermitian, "hermiticity defect " + std::to_string(defect) +
                                             " exceeds " + std::to_string(tol) + " * ||m||");
  }

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix{};

  const double threshold = kOffDiagonalThreshold * norm;
  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase = apq / mag;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex conj_phase = std::conj(phase);

        // A <- A U with U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * conj_phase * akq;
          a(k, q) = s * akp + c * conj_phase * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * conj_phase * vkq;
            v(k, q) = s * vkp + c * conj_phase * vkq;
          }
        }
      }
    }
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap exceeded");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.eigenvalues[k] = a(order[k], order[k]).real();
  if (want_vectors) {
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

void check_dims(const Matrix& m, std::span<const std::size_t> dims) {
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (!m.is_square() || m.rows() != total) {
    throw Error(ErrorKind::DimensionMismatch, "factor dimensions multiply to " + std::to_string(total) +
                                                  " but matrix is " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()));
  }
}

// index_map[new_index] = old_index for the factor reordering perm.
std::vector<std::size_t> permutation_index_map(std::span<const std::size_t> dims,
                                               std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> old_stride(n, 1);
  for (std::size_t i = n; i-- > 1;) old_stride[i - 1] = old_stride[i] * dims[i];
  std::vector<std::size_t> new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = dims[perm[k]];

  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(n, 0);
  std::size_t old_index = 0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    map[idx] = old_index;
    // Increment the mixed-radix counter over new_dims, tracking old_index.
    for (std::size_t k = n; k-- > 0;) {
      ++digit[k];
      old_index += old_stride[perm[k]];
      if (digit[k] < new_dims[k]) break;
      old_index -= digit[k] * old_stride[perm[k]];
      digit[k] = 0;
    }
  }
  return map;
}

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw Error(ErrorKind::DimensionMismatch, "permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw Error(ErrorKind::DimensionMismatch, "invalid factor permutation");
    seen[p] = true;
  }
}

}  // namespace

HermitianSpectrum hermitian_eig(const Matrix& m, double tol) { return jacobi(m, tol, true); }

std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol) {
  return jacobi(m, tol, false).eigenvalues;
}

Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f) {
  const auto spec = hermitian_eig(m);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(spec.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = spec.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(spec.eigenvectors(j, k));
    }
  }
  return out;
}

Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm) {
  check_dims(m, dims);
  check_permutation(perm, dims.size());
  const auto map = permutation_index_map(dims, perm);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  check_dims(m, dims);
  if (keep.empty()) throw Error(ErrorKind::EmptyKeepSet, "partial_trace needs at least one kept factor");
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n || kept[k]) throw Error(ErrorKind::DimensionMismatch, "invalid keep index");
    kept[k] = true;
  }
  std::vector<std::size_t> perm;
  std::size_t dk = 1, dt = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (kept[i]) {
      perm.push_back(i);
      dk *= dims[i];
    }
  for (std::size_t i = 0; i < n; ++i)
    if (!kept[i]) {
      perm.push_back(i);
      dt *= dims[i];
    }
  const auto map = permutation_index_map(dims, perm);
  Matrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) s += m(map[i * dt + t], map[j * dt + t]);
      out(i, j) = s;
    }
  return out;
}

Matrix purify(const Matrix& rho, double tol) {
  if (!rho.is_square()) throw Error(ErrorKind::NotDensityMatrix, "purify needs a square matrix");
  if (hermiticity_defect(rho) > tol) throw Error(ErrorKind::NotDensityMatrix, "purify input not Hermitian");
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) {
    throw Error(ErrorKind::NotDensityMatrix, "purify input has trace " + std::to_string(tr.real()));
  }
  const auto spec = hermitian_eig(rho, 1.0);
  if (spec.eigenvalues.front() < -tol) {
    throw Error(ErrorKind::NotDensityMatrix,
                "purify input has eigenvalue " + std::to_string(spec.eigenvalues.front()));
  }
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
    if (spec.eigenvalues[k] > 1e-10) support.push_back(k);
  if (support.empty()) throw Error(ErrorKind::NotDensityMatrix, "purify input has empty support");
  // Largest weights first so the purifier basis is ordered by Schmidt weight.
  std::reverse(support.begin(), support.end());

  const std::size_t n = rho.rows(), r = support.size();
  double weight = 0.0;
  for (auto k : support) weight += spec.eigenvalues[k];
  Matrix psi(n * r, 1);
  for (std::size_t j = 0; j < r; ++j) {
    const double amp = std::sqrt(spec.eigenvalues[support[j]] / weight);
    for (std::size_t h = 0; h < n; ++h) psi(h * r + j, 0) = amp * spec.eigenvectors(h, support[j]);
  }
  return psi;
}

Matrix complete_to_unitary(const Matrix& isometry) {
  const std::size_t n = isometry.rows(), k = isometry.cols();
  if (k > n) throw Error(ErrorKind::DimensionMismatch, "isometry has more columns than rows");
  if (unitarity_defect(isometry) > 1e-8) throw Error(ErrorKind::NonUnitary, "columns are not orthonormal");

  std::vector<std::vector<Complex>> cols;
  cols.reserve(n);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<Complex> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = isometry(r, c);
    cols.push_back(std::move(col));
  }
  for (std::size_t e = 0; e < n && cols.size() < n; ++e) {
    std::vector<Complex> cand(n, Complex{});
    cand[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : cols) {
        Complex overlap{};
        for (std::size_t r = 0; r < n; ++r) overlap += std::conj(q[r]) * cand[r];
        for (std::size_t r = 0; r < n; ++r) cand[r] -= overlap * q[r];
      }
    }
    double norm = 0.0;
    for (const auto& z : cand) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;
    for (auto& z : cand) z /= norm;
    cols.push_back(std::move(cand));
  }
  Matrix u(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
  return u;
}

double unitarity_defect(const Matrix& u) {
  return frobenius_distance(u.adjoint() * u, Matrix::identity(u.cols()));
}

double commutator_norm(const Matrix& a, const Matrix& b) { return frobenius_distance(a * b, b * a); }

}  // namespace qcmi
