#include "qcmi/parametrization.hpp"

#include <cmath>
#include <string>

#include "qcmi/error.hpp"

namespace qcmi {

namespace {

struct RotationSlot {
  std::size_t column;
  std::size_t upper;  // rotation acts on rows (upper, upper + 1)
};

std::vector<RotationSlot> elimination_order(std::size_t k, std::size_t d) {
  std::vector<RotationSlot> order;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = k - 1; i > j; --i) order.push_back({j, i - 1});
  return order;
}

void check_shape(std::size_t k, std::size_t d) {
  if (d == 0 || k < d) {
    throw Error(ErrorKind::DimensionMismatch,
                "isometry " + std::to_string(d) + " -> " + std::to_string(k) + " is not representable");
  }
}

}  // namespace

std::size_t givens_rotation_count(std::size_t k, std::size_t d) {
  check_shape(k, d);
  std::size_t m = 0;
  for (std::size_t j = 0; j < d; ++j) m += k - 1 - j;
  return m;
}

std::size_t isometry_parameter_count(std::size_t k, std::size_t d) {
  return 2 * givens_rotation_count(k, d) + (d - 1);
}

Matrix isometry_from_params(std::size_t k, std::size_t d, std::span<const double> params) {
  const auto order = elimination_order(k, d);
  if (params.size() != 2 * order.size() + (d - 1)) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(2 * order.size() + d - 1) +
                                                  " isometry parameters, got " +
                                                  std::to_string(params.size()));
  }
  Matrix v(k, d);
  v(0, 0) = 1.0;
  for (std::size_t a = 1; a < d; ++a) v(a, a) = std::polar(1.0, params[2 * order.size() + a - 1]);

  for (std::size_t t = order.size(); t-- > 0;) {
    const double c = std::cos(params[2 * t]);
    const double s = std::sin(params[2 * t]);
    const Complex e = std::polar(1.0, params[2 * t + 1]);
    const std::size_t a = order[t].upper, b = a + 1;
    for (std::size_t col = 0; col < d; ++col) {
      const Complex xa = v(a, col), xb = v(b, col);
      v(a, col) = c * xa - std::conj(e) * s * xb;
      v(b, col) = e * s * xa + c * xb;
    }
  }
  return v;
}

std::vector<double> params_from_isometry(const Matrix& isometry) {
  const std::size_t k = isometry.rows(), d = isometry.cols();
  check_shape(k, d);
  if (unitarity_defect(isometry) > 1e-8) throw Error(ErrorKind::NonUnitary, "input is not an isometry");

  const auto order = elimination_order(k, d);
  std::vector<double> params(2 * order.size() + (d - 1), 0.0);
  Matrix m = isometry;
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::size_t a = order[t].upper, b = a + 1, j = order[t].column;
    const Complex x = m(a, j), y = m(b, j);
    const double theta = std::atan2(std::abs(y), std::abs(x));
    double phi = 0.0;
    if (std::abs(y) > 0.0) phi = std::arg(y) - (std::abs(x) > 0.0 ? std::arg(x) : 0.0);
    params[2 * t] = theta;
    params[2 * t + 1] = phi;
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex e = std::polar(1.0, phi);
    for (std::size_t col = 0; col < d; ++col) {
      const Complex xa = m(a, col), xb = m(b, col);
      m(a, col) = c * xa + std::conj(e) * s * xb;
      m(b, col) = -e * s * xa + c * xb;
    }
  }
  const double ref = std::arg(m(0, 0));
  for (std::size_t a = 1; a < d; ++a) params[2 * order.size() + a - 1] = std::arg(m(a, a)) - ref;
  return params;
}

}  // namespace qcmi
