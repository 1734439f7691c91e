#include "qv/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qv::stats {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

double log_binom_term(long long n, long long k, double log_p,
                      double log_q) {
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0) + double(k) * log_p +
         double(n - k) * log_q;
}

}  // namespace

double binomial_tail(long long n, double p, long long t) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  require_unit(p, "p");
  if (t < 0 || t > n) throw std::invalid_argument("t must lie in [0, n]");
  if (t == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double log_p = std::log(p);
  double log_q = std::log1p(-p);
  long double acc = 0.0L;
  if (n - t + 1 <= t) {
    for (long long k = t; k <= n; ++k) {
      acc += std::exp(log_binom_term(n, k, log_p, log_q));
    }
    return double(acc);
  }
  for (long long k = 0; k < t; ++k) {
    acc += std::exp(log_binom_term(n, k, log_p, log_q));
  }
  double out = double(1.0L - acc);
  return out < 0.0 ? 0.0 : out;
}

double all_pass_pvalue(long long n, double p0) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  require_unit(p0, "p0");
  return std::pow(p0, double(n));
}

double worst_case_pass_prob(double epsilon, double nu) {
  require_unit(epsilon, "epsilon");
  require_unit(nu, "nu");
  return 1.0 - epsilon * nu;
}

long long required_samples(double epsilon, double delta, double nu) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(nu > 0.0 && nu <= 1.0)) {
    throw std::invalid_argument(
        "unverifiable: the spectral gap must be positive");
  }
  double fail = 1.0 - epsilon * nu;
  long long n =
      static_cast<long long>(std::ceil(std::log(delta) / std::log(fail)));
  if (n < 1) n = 1;
  // Guard the ceiling against floating-point edges so the defining
  // inequality (1-eps*nu)^N <= delta < (1-eps*nu)^(N-1) holds exactly
  // under std::pow arithmetic.
  while (std::pow(fail, double(n)) > delta) ++n;
  while (n > 1 && std::pow(fail, double(n - 1)) <= delta) --n;
  return n;
}

TestPlan make_test_plan(double epsilon, double delta, double nu) {
  return {epsilon, delta, nu, required_samples(epsilon, delta, nu)};
}

double kl_divergence(double x, double y) {
  require_unit(x, "x");
  require_unit(y, "y");
  if (x == y) return 0.0;
  if (y == 0.0 || y == 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  if (x > 0.0) acc += x * std::log(x / y);
  if (x < 1.0) acc += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return acc;
}

double chernoff_hoeffding_confidence(double f, double threshold,
                                     long long rounds) {
  require_unit(f, "f");
  require_unit(threshold, "threshold");
  if (rounds < 0) throw std::invalid_argument("rounds must be nonnegative");
  if (!(f > threshold)) {
    throw std::invalid_argument(
        "cannot reject: frequency does not exceed the threshold");
  }
  if (f == 1.0) return std::pow(threshold, double(rounds));
  // The divergence can round to a tiny negative number when f grazes the
  // threshold; the result is a probability bound, so cap it at one.
  return std::min(1.0, std::exp(-kl_divergence(f, threshold) * double(rounds)));
}

double hoeffding_bound(double epsilon, long long rounds,
                       const std::vector<std::pair<double, double>>& ranges) {
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("epsilon must be nonnegative");
  }
  if (rounds < 1) throw std::invalid_argument("rounds must be positive");
  if (ranges.empty()) throw std::invalid_argument("ranges must be nonempty");
  if (ranges.size() != 1 && ranges.size() != std::size_t(rounds)) {
    throw std::invalid_argument(
        "provide one range per round or a single broadcast range");
  }
  double ssq = 0.0;
  for (const auto& [a, b] : ranges) {
    if (!(b >= a)) throw std::invalid_argument("range upper bound below lower");
    ssq += (b - a) * (b - a);
  }
  if (ranges.size() == 1) ssq *= double(rounds);
  if (ssq == 0.0) {
    throw std::invalid_argument("all ranges are degenerate");
  }
  double bound =
      std::exp(-2.0 * epsilon * epsilon * double(rounds) * double(rounds) /
               ssq);
  return bound > 1.0 ? 1.0 : bound;
}

TestResult fidelity_decision(double f, double epsilon, double nu,
                             long long rounds) {
  require_unit(f, "f");
  if (rounds < 1) throw std::invalid_argument("rounds must be positive");
  double threshold = worst_case_pass_prob(epsilon, nu);
  TestResult r;
  r.rounds = rounds;
  r.passes = std::llround(f * double(rounds));
  r.frequency = f;
  r.reject = f > threshold;
  if (r.reject) {
    r.confidence = 1.0 - chernoff_hoeffding_confidence(f, threshold, rounds);
  }
  return r;
}

}  // namespace qv::stats
