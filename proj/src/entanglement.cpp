#include "qv/entanglement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qv/qmath.hpp"
#include "qv/rng.hpp"
#include "qv/stats.hpp"

namespace qv::entanglement {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Standard-normal pair from two uniform draws.
void gauss_pair(double u1, double u2, double* z0, double* z1) {
  double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  *z0 = r * std::cos(2.0 * kPi * u2);
  *z1 = r * std::sin(2.0 * kPi * u2);
}

// Haar-random ket of dimension d from counter draws starting at *index.
Vector random_ket(int d, uint64_t seed, uint64_t* index) {
  Vector v(d);
  for (int i = 0; i < d; ++i) {
    double u1 = rng::uniform(seed, (*index)++);
    double u2 = rng::uniform(seed, (*index)++);
    double re = 0.0;
    double im = 0.0;
    gauss_pair(u1, u2, &re, &im);
    v[i] = Complex(re, im);
  }
  v.normalize();
  return v;
}

// Effective operator on the first factor when the second is fixed to |b>:
// A_{ij} = <i (x) b| op |j (x) b>.
Matrix contract_second(const Matrix& op, const Vector& b, int da, int db) {
  Matrix a = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      Complex acc = 0.0;
      for (int k = 0; k < db; ++k) {
        for (int l = 0; l < db; ++l) {
          acc += std::conj(b[k]) * b[l] * op(i * db + k, j * db + l);
        }
      }
      a(i, j) = acc;
    }
  }
  return a;
}

// Effective operator on the second factor when the first is fixed to |a>.
Matrix contract_first(const Matrix& op, const Vector& a, int da, int db) {
  Matrix b = Matrix::Zero(db, db);
  for (int k = 0; k < db; ++k) {
    for (int l = 0; l < db; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
          acc += std::conj(a[i]) * a[j] * op(i * db + k, j * db + l);
        }
      }
      b(k, l) = acc;
    }
  }
  return b;
}

// Alternating eigenvector ascent from the seed (a, b). Each half-step can
// only raise the expectation, so the loop is monotone; it stops once the
// gain per sweep drops below 1e-13.
double refine(const Matrix& op, Vector a, Vector b, int da, int db,
              int iterations) {
  double value = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < iterations; ++it) {
    Eigen::SelfAdjointEigenSolver<Matrix> ea(contract_second(op, b, da, db));
    a = ea.eigenvectors().col(da - 1);
    Eigen::SelfAdjointEigenSolver<Matrix> eb(contract_first(op, a, da, db));
    b = eb.eigenvectors().col(db - 1);
    double next = eb.eigenvalues()(db - 1);
    if (next - value < 1e-13) {
      return std::max(value, next);
    }
    value = next;
  }
  return value;
}

}  // namespace

Operator witness_operator(const PureState& target) {
  if (target.dims.size() != 2 || target.dims[0] != target.dims[1]) {
    throw std::invalid_argument(
        "witness_operator: target must live on two factors of equal "
        "dimension");
  }
  int d = target.dims[0];
  Operator proj = projector(target);
  Matrix flat = Matrix::Identity(d, d) / double(d);
  for (int factor : {0, 1}) {
    Operator reduced = partial_trace(proj, {factor});
    if ((reduced.mat - flat).cwiseAbs().maxCoeff() > kDerivedTol) {
      throw std::invalid_argument(
          "witness_operator: target is not maximally entangled");
    }
  }
  Matrix w = Matrix::Identity(d * d, d * d) / double(d) - proj.mat;
  return Operator(target.dims, w);
}

double separable_pass_bound(int d) {
  if (d < 2) {
    throw std::invalid_argument(
        "separable_pass_bound: dimension must be at least two");
  }
  return 2.0 / (d + 1.0);
}

double entanglement_confidence(double frequency, double separable_bound,
                               long long rounds) {
  if (!(frequency > separable_bound)) {
    throw std::invalid_argument(
        "entanglement_confidence: cannot conclude entanglement; the pass "
        "frequency does not exceed the separable bound");
  }
  return stats::chernoff_hoeffding_confidence(frequency, separable_bound,
                                              rounds);
}

double max_product_expectation(const Operator& op, int samples, uint64_t seed,
                               int iterations) {
  if (op.dims.size() != 2) {
    throw std::invalid_argument(
        "max_product_expectation: operator must live on two factors");
  }
  if (!op.is_hermitian(kDerivedTol)) {
    throw std::invalid_argument(
        "max_product_expectation: operator is not Hermitian");
  }
  if (samples < 0 || iterations < 1) {
    throw std::invalid_argument(
        "max_product_expectation: sample and iteration counts must be "
        "positive");
  }
  int da = op.dims[0];
  int db = op.dims[1];

  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < db; ++k) {
      Vector a = Vector::Zero(da);
      a[i] = 1.0;
      Vector b = Vector::Zero(db);
      b[k] = 1.0;
      best = std::max(best, refine(op.mat, a, b, da, db, iterations));
    }
  }

  uint64_t index = 0;
  for (int s = 0; s < samples; ++s) {
    Vector a = random_ket(da, seed, &index);
    Vector b = random_ket(db, seed, &index);
    best = std::max(best, refine(op.mat, a, b, da, db, iterations));
  }
  return best;
}

}  // namespace qv::entanglement
