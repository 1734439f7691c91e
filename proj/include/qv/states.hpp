#pragma once

#include "qv/types.hpp"

namespace qv::states {

/// Descending positive Schmidt coefficients with unit sum of squares.
///
/// Construction sorts the entries and renormalizes when the squared sum is
/// within 1e-9 of 1; anything further off, or any non-positive entry, is
/// rejected.
struct SchmidtVector {
  std::vector<double> coeffs;

  explicit SchmidtVector(std::vector<double> raw);
  int d() const { return static_cast<int>(coeffs.size()); }
};

/// (|00> + |11>)/sqrt(2) on two qubits.
PureState bell_state();

/// Maximally entangled state sum_a |aa>/sqrt(d) on two qudits. d >= 2.
PureState mes_qudit(int d);

/// (|0...0> + |1...1>)/sqrt(2) on n >= 2 qubits.
PureState ghz_state(int n);

/// Uniform superposition of the n weight-1 basis strings. n >= 2.
PureState w_state(int n);

/// Uniform superposition of the weight-k basis strings on n qubits,
/// 1 <= k <= n-1.
PureState dicke_state(int n, int k);

/// sum_a lambda_a |aa> on two qudits of dimension lambda.d().
PureState schmidt_state(const SchmidtVector& lambda);

/// cos(theta)|00> + sin(theta)|11|, 0 < theta <= pi/4.
PureState two_qubit_state(double theta);

}  // namespace qv::states
