#pragma once

#include "qv/types.hpp"

namespace qv {

/// Eigendecomposition of a Hermitian operator.
///
/// values are sorted in descending order. Each column of vectors is the
/// eigenvector for the matching value, normalized, with its first component
/// of magnitude above 1e-9 rotated to be real and positive. For a fixed
/// input matrix the output is deterministic.
struct Spectrum {
  RealVector values;
  Matrix vectors;
};

/// Kronecker product; factor lists concatenate.
Operator kron(const Operator& a, const Operator& b);
PureState kron(const PureState& a, const PureState& b);

/// Full eigensystem of a Hermitian operator. Throws std::invalid_argument
/// when the hermiticity defect exceeds kInputTol.
Spectrum hermitian_spectrum(const Operator& a);

/// Eigenvalues only, descending. Same precondition as hermitian_spectrum.
RealVector hermitian_eigenvalues(const Operator& a);

/// Spectral gap 1 - lambda_2 of a verification operator.
///
/// Preconditions (each violation throws std::invalid_argument):
///   - omega Hermitian within kInputTol,
///   - <target|omega|target> = 1 within kDerivedTol,
///   - largest eigenvalue = 1 within kDerivedTol.
/// A one-dimensional space has no second eigenvalue; the gap is 1.
double spectral_gap(const Operator& omega, const PureState& target);

/// Trace out every factor not listed in keep. keep must be nonempty,
/// strictly increasing, and within range. The result keeps the listed
/// factors in order; the full trace is preserved.
Operator partial_trace(const Operator& a, const std::vector<int>& keep);

/// Transpose a single tensor factor in place of the full transpose.
/// Entrywise permutation, so applying it twice restores the input exactly.
Operator partial_transpose(const Operator& a, int factor);

/// Swap operator V on C^d (x) C^d with V |a,b> = |b,a>.
Operator swap_operator(int d);

}  // namespace qv
