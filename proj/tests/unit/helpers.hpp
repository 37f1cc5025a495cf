#pragma once

#include <cmath>
#include <vector>

#include "qcmi/linalg.hpp"
#include "qcmi/state.hpp"

namespace qcmi::test {

inline Matrix ket(std::vector<Complex> amps) {
  return Matrix::column(amps);
}

/// Shannon entropy in nats, written out directly.
inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

inline const double kLn2 = std::log(2.0);

inline LabeledState bell(const Label& a = "A", const Label& b = "B") {
  const double r = 1.0 / std::sqrt(2.0);
  return LabeledState::from_vector(SubsystemLayout({a, b}, {2, 2}), ket({r, 0, 0, r}));
}

}  // namespace qcmi::test
