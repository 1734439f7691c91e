#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace qv::stats {

/// Sampling plan for a verification run at infidelity threshold epsilon,
/// significance delta, and strategy gap nu.
struct TestPlan {
  double epsilon;
  double delta;
  double nu;
  long long rounds;
};

/// Outcome of the frequency decision rule. `confidence` is 1 minus the
/// Chernoff-Hoeffding bound and is only set on rejection.
struct TestResult {
  long long rounds = 0;
  long long passes = 0;
  double frequency = 0;
  bool reject = false;
  std::optional<double> confidence;
};

/// P(T >= t) for T ~ Binomial(n, p). Exact tail sum with log-space
/// binomial coefficients, accumulated in the smaller tail.
double binomial_tail(long long n, double p, long long t);

/// Probability that all n rounds pass when each passes with probability p0.
double all_pass_pvalue(long long n, double p0);

/// Largest pass probability an epsilon-infidelity state can reach against
/// a strategy with gap nu: 1 - epsilon * nu.
double worst_case_pass_prob(double epsilon, double nu);

/// Smallest N with (1 - epsilon * nu)^N <= delta.
long long required_samples(double epsilon, double delta, double nu);

TestPlan make_test_plan(double epsilon, double delta, double nu);

/// Binary Kullback-Leibler divergence D(x||y) with the 0 ln 0 = 0
/// convention; +infinity when y is 0 or 1 and x disagrees.
double kl_divergence(double x, double y);

/// One-sided Chernoff-Hoeffding bound on the significance of observing
/// pass fraction f over `rounds` rounds when the true pass probability is
/// at most `threshold`: exp(-D(f||threshold) * rounds). Requires
/// f > threshold; f = 1 reduces to threshold^rounds exactly.
double chernoff_hoeffding_confidence(double f, double threshold,
                                     long long rounds);

/// Hoeffding tail bound exp(-2 eps^2 N^2 / sum (b_i - a_i)^2), clamped to
/// [0,1]. A single range is broadcast across all N rounds.
double hoeffding_bound(double epsilon, long long rounds,
                       const std::vector<std::pair<double, double>>& ranges);

/// Frequency decision rule: reject the low-fidelity hypothesis iff
/// f > 1 - epsilon * nu, attaching the Chernoff-Hoeffding confidence.
TestResult fidelity_decision(double f, double epsilon, double nu,
                             long long rounds);

}  // namespace qv::stats
