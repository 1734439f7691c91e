#include "qv/adversarial.hpp"

#include <cmath>
#include <stdexcept>

#include "qv/qmath.hpp"

namespace qv::adversarial {

namespace {

void require_unit_interval(double v, const char* who, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": " + name +
                                " must lie strictly between 0 and 1");
  }
}

// Eigenvalues at which the overhead diverges are rejected with a shared
// message so callers can route projective strategies to the trivial mix.
void require_finite_overhead(double x, const char* who) {
  if (x < kInputTol || x > 1.0 - kInputTol) {
    throw std::invalid_argument(
        std::string(who) +
        ": overhead diverges for eigenvalues at 0 or 1; the scheme is not "
        "efficient without a trivial-test admixture");
  }
}

}  // namespace

double prefactor(double x) {
  require_finite_overhead(x, "prefactor");
  return 1.0 / (x * std::log(1.0 / x));
}

double adversarial_overhead(double lambda, double tau) {
  return std::max(prefactor(lambda), prefactor(tau));
}

long long asymptotic_samples(double h, double epsilon, double delta) {
  require_unit_interval(epsilon, "asymptotic_samples", "epsilon");
  require_unit_interval(delta, "asymptotic_samples", "delta");
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument(
        "asymptotic_samples: overhead must be positive and finite");
  }
  double raw = h / epsilon * std::log(1.0 / delta);
  if (raw > 9.0e18) {
    throw std::invalid_argument(
        "asymptotic_samples: sample count overflows a 64-bit integer");
  }
  long long n = (long long)std::ceil(raw);
  return n < 1 ? 1 : n;
}

strategies::Strategy homogeneous_strategy(const PureState& target,
                                          double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument(
        "homogeneous_strategy: lambda must lie in [0, 1)");
  }
  int d = target.dim();
  Matrix psi = projector(target).mat;
  Matrix omega = psi + lambda * (Matrix::Identity(d, d) - psi);
  strategies::Strategy s;
  s.target = target;
  s.tests.push_back({1.0, Operator(target.dims, omega)});
  s.label = "homogeneous";
  s.predicted_gap = 1.0 - lambda;
  return s;
}

long long adversarial_samples_homogeneous(double epsilon, double delta,
                                          double lambda) {
  require_unit_interval(epsilon, "adversarial_samples_homogeneous", "epsilon");
  require_unit_interval(delta, "adversarial_samples_homogeneous", "delta");
  return asymptotic_samples(prefactor(lambda), epsilon, delta);
}

AdversarialPlan adversarial_samples_general(double epsilon, double delta,
                                            const Operator& omega,
                                            const PureState& target,
                                            bool trivial_mix) {
  require_unit_interval(epsilon, "adversarial_samples_general", "epsilon");
  require_unit_interval(delta, "adversarial_samples_general", "delta");
  if (omega.dims != target.dims) {
    throw std::invalid_argument(
        "adversarial_samples_general: operator and target dimensions differ");
  }
  if (!omega.is_hermitian(kInputTol)) {
    throw std::invalid_argument(
        "adversarial_samples_general: operator is not Hermitian");
  }
  RealVector eigs = hermitian_eigenvalues(omega);
  if (eigs.size() < 2) {
    throw std::invalid_argument(
        "adversarial_samples_general: operator acts on a one-dimensional "
        "space");
  }
  if (std::abs(eigs[0] - 1.0) > kDerivedTol) {
    throw std::invalid_argument(
        "adversarial_samples_general: largest eigenvalue is not one");
  }
  if (std::abs(expectation(omega, target).real() - 1.0) > kDerivedTol) {
    throw std::invalid_argument(
        "adversarial_samples_general: target is not fixed by the operator");
  }
  double lambda = eigs[1];
  double tau = eigs[eigs.size() - 1];

  AdversarialPlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;

  if (!trivial_mix) {
    require_finite_overhead(tau, "adversarial_samples_general");
    plan.lambda = lambda;
    plan.tau = tau;
    plan.overhead = adversarial_overhead(lambda, tau);
    plan.mix = 0.0;
  } else {
    // Mixing weight grid: Omega_q = (1-q) Omega + q I shifts every
    // eigenvalue x to (1-q) x + q, so only lambda and tau need tracking.
    const int steps = 1000;
    bool found = false;
    double best_h = 0.0;
    double best_q = 0.0;
    for (int i = 0; i < steps; ++i) {
      double q = double(i) / steps;
      double lq = (1.0 - q) * lambda + q;
      double tq = (1.0 - q) * tau + q;
      if (tq < kInputTol || lq > 1.0 - kInputTol) {
        continue;
      }
      double h = adversarial_overhead(lq, tq);
      if (!found || h < best_h) {
        found = true;
        best_h = h;
        best_q = q;
      }
    }
    if (!found) {
      throw std::invalid_argument(
          "adversarial_samples_general: no admissible trivial-mix weight");
    }
    plan.lambda = (1.0 - best_q) * lambda + best_q;
    plan.tau = (1.0 - best_q) * tau + best_q;
    plan.overhead = best_h;
    plan.mix = best_q;
  }

  plan.rounds = asymptotic_samples(plan.overhead, epsilon, delta);
  if (!(plan.tau >= 0.0 && plan.tau <= plan.lambda && plan.lambda < 1.0) ||
      plan.overhead < std::exp(1.0) - kDerivedTol || plan.rounds < 1) {
    throw NumericalError(
        "adversarial_samples_general: plan violates its invariants");
  }
  return plan;
}

}  // namespace qv::adversarial
