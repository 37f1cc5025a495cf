#pragma once

// Unconstrained real parametrization of isometries C^d -> C^k (k >= d).
//
// An isometry V is written as R_1 R_2 ... R_m D restricted to its first d
// columns, where each R_t is a complex Givens rotation acting on adjacent
// rows (i-1, i),
//
//   R(theta, phi) = [[cos theta, -e^{-i phi} sin theta],
//                    [e^{i phi} sin theta,  cos theta ]],
//
// and D = diag(1, e^{i psi_1}, ..., e^{i psi_{d-1}}). The rotations are
// ordered as in column-wise elimination: column j = 0..d-1, row pair
// (i-1, i) for i = k-1 down to j+1. The parameter vector is
// [theta_1, phi_1, ..., theta_m, phi_m, psi_1, ..., psi_{d-1}].
//
// Every finite parameter vector decodes to an exact isometry, so searches
// over these parameters never leave the feasible set.

#include <cstddef>
#include <span>
#include <vector>

#include "qcmi/linalg.hpp"

namespace qcmi {

std::size_t givens_rotation_count(std::size_t k, std::size_t d);
std::size_t isometry_parameter_count(std::size_t k, std::size_t d);

/// k x d matrix with orthonormal columns.
Matrix isometry_from_params(std::size_t k, std::size_t d, std::span<const double> params);

/// Inverse of isometry_from_params up to a global phase.
std::vector<double> params_from_isometry(const Matrix& isometry);

}  // namespace qcmi
