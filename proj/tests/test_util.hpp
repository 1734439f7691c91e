#pragma once

#include <cmath>

#include "qv/qmath.hpp"
#include "qv/types.hpp"

namespace tu {

inline qv::Matrix pauli_x() {
  qv::Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline qv::Matrix pauli_y() {
  qv::Matrix m(2, 2);
  m << 0, qv::Complex(0, -1), qv::Complex(0, 1), 0;
  return m;
}

inline qv::Matrix pauli_z() {
  qv::Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline qv::PureState bell_ket() {
  qv::Vector v(4);
  v << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  return qv::PureState({2, 2}, v);
}

inline double max_abs_diff(const qv::Matrix& a, const qv::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace tu
