#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance for validating externally supplied data (hermiticity, norms,
/// probability sums).
inline constexpr double kInputTol = 1e-12;

/// Tolerance for quantities produced by floating-point pipelines
/// (eigenvalues, fixed-point checks, reconstructed aggregates).
inline constexpr double kDerivedTol = 1e-9;

/// Largest total dimension handled by dense operators (12 qubits).
inline constexpr int kDimCap = 4096;

/// Raised when a requested object would exceed kDimCap.
struct SizeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when external input (JSON, graph files, CLI grammars) fails
/// structural validation. Maps to CLI exit code 3.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails at run time (pass
/// probabilities outside [0,1], mismatched cross-checks). Maps to CLI
/// exit code 4.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Product of factor dimensions. Throws SizeError past kDimCap and
/// std::invalid_argument for empty or non-positive factors.
int total_dim(const std::vector<int>& dims);

/// Dense operator on a tensor product of finite-dimensional factors.
///
/// Basis convention: computational basis ordered lexicographically with the
/// first factor most significant, so index i = sum_k i_k * prod_{j>k} d_j.
struct Operator {
  std::vector<int> dims;
  Matrix mat;

  Operator() = default;
  Operator(std::vector<int> dims_, Matrix mat_);

  int dim() const { return static_cast<int>(mat.rows()); }

  /// Max entrywise deviation from the adjoint.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kInputTol) const {
    return hermiticity_defect() <= tol;
  }
};

/// Unit vector on a tensor product of finite-dimensional factors, same basis
/// convention as Operator. Norm is validated to kInputTol at construction.
struct PureState {
  std::vector<int> dims;
  Vector amps;

  PureState() = default;
  PureState(std::vector<int> dims_, Vector amps_);

  int dim() const { return static_cast<int>(amps.size()); }
};

/// Identity operator with the given factor structure.
Operator identity(std::vector<int> dims);

/// Rank-one projector |psi><psi|.
Operator projector(const PureState& psi);

/// <psi|A|psi>. Dimensions must agree.
Complex expectation(const Operator& a, const PureState& psi);

}  // namespace qv
