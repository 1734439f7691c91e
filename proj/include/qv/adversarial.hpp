#pragma once

#include "qv/strategies.hpp"
#include "qv/types.hpp"

namespace qv::adversarial {

/// Sampling plan for verification against an adversarial source that may
/// prepare correlated states across rounds. Counts come from the
/// leading-order asymptotic expressions, valid as epsilon and delta tend to
/// zero; the `asymptotic` flag travels with the plan so downstream output
/// carries the qualifier.
struct AdversarialPlan {
  double epsilon = 0.0;
  double delta = 0.0;
  /// Second-largest eigenvalue of the (possibly mixed) aggregate operator.
  double lambda = 0.0;
  /// Smallest eigenvalue of the (possibly mixed) aggregate operator.
  double tau = 0.0;
  /// Overhead h = max{1/(lambda ln(1/lambda)), 1/(tau ln(1/tau))}; at least e.
  double overhead = 0.0;
  /// Planned number of tests, ceil(h / epsilon * ln(1/delta)); at least one.
  long long rounds = 0;
  /// Weight q of the identity admixture (1-q)*Omega + q*I chosen by the
  /// trivial-mix search; zero when no mixing was requested or none helps.
  double mix = 0.0;
  /// Always true: the counts are asymptotic, not finite-round guarantees.
  bool asymptotic = true;
};

/// 1 / (x ln(1/x)) for x in (0, 1). Diverges at both endpoints; minimum e at
/// x = 1/e.
double prefactor(double x);

/// max{prefactor(lambda), prefactor(tau)} for lambda, tau in (0, 1).
double adversarial_overhead(double lambda, double tau);

/// ceil(h / epsilon * ln(1/delta)) for h >= e and epsilon, delta in (0, 1).
long long asymptotic_samples(double h, double epsilon, double delta);

/// Strategy with the single test |psi><psi| + lambda(I - |psi><psi|) for
/// lambda in [0, 1): flat spectrum lambda away from the target, gap
/// 1 - lambda.
strategies::Strategy homogeneous_strategy(const PureState& target,
                                          double lambda);

/// Adversarial sample count for a homogeneous strategy with parameter
/// lambda in (0, 1): ceil(prefactor(lambda) / epsilon * ln(1/delta)).
long long adversarial_samples_homogeneous(double epsilon, double delta,
                                          double lambda);

/// Full adversarial plan for an arbitrary aggregate operator: extracts the
/// second-largest and smallest eigenvalues, computes the overhead and the
/// sample count. With `trivial_mix` set, searches a q grid for the identity
/// admixture (1-q)*Omega + q*I that minimises the overhead and reports the
/// mixed plan. Throws when the overhead diverges (smallest eigenvalue at or
/// below zero without mixing, or no spectral gap).
AdversarialPlan adversarial_samples_general(double epsilon, double delta,
                                            const Operator& omega,
                                            const PureState& target,
                                            bool trivial_mix = false);

}  // namespace qv::adversarial
