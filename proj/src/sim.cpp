#include "qv/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qv/qmath.hpp"
#include "qv/rng.hpp"

namespace qv::sim {

namespace {

std::string format_param(const char* prefix, double value) {
  std::ostringstream os;
  os << prefix << value;
  return os.str();
}

void require_density(const Operator& rho, const char* who) {
  if (!rho.is_hermitian(kDerivedTol)) {
    throw NumericalError(std::string(who) + ": state is not Hermitian");
  }
  double tr = rho.mat.trace().real();
  if (std::abs(tr - 1.0) > kDerivedTol) {
    throw NumericalError(std::string(who) + ": state trace is not one");
  }
  RealVector eigs = hermitian_eigenvalues(rho);
  if (eigs[eigs.size() - 1] < -kDerivedTol) {
    throw NumericalError(std::string(who) +
                         ": state has a negative eigenvalue");
  }
}

}  // namespace

Source exact_source(const PureState& target) {
  Source src{projector(target), "exact", false};
  require_density(src.state, "exact_source");
  return src;
}

Operator worst_case_state(const strategies::Strategy& s, double eps,
                          bool* degenerate) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("worst_case_state: eps must lie in [0, 1]");
  }
  Operator omega = s.aggregate();
  Spectrum sp = hermitian_spectrum(omega);
  if (sp.values.size() < 2) {
    throw std::invalid_argument(
        "worst_case_state: strategy acts on a one-dimensional space");
  }
  if (degenerate != nullptr) {
    *degenerate = sp.values.size() > 2 &&
                  std::abs(sp.values[1] - sp.values[2]) < kDerivedTol;
  }
  Vector phi = sp.vectors.col(1);
  Matrix psi_proj = projector(s.target).mat;
  Matrix m = (1.0 - eps) * psi_proj + eps * (phi * phi.adjoint());
  Operator rho(s.target.dims, m);

  double expected = 1.0 - eps * s.gap();
  double achieved = (omega.mat * rho.mat).trace().real();
  if (std::abs(achieved - expected) > kDerivedTol) {
    throw NumericalError(
        "worst_case_state: pass probability does not match 1 - eps*gap");
  }
  return rho;
}

Source worst_case_source(const strategies::Strategy& s, double eps) {
  bool degen = false;
  Source src{worst_case_state(s, eps, &degen), format_param("worst:", eps),
             degen};
  require_density(src.state, "worst_case_source");
  return src;
}

Source depolarized_source(const PureState& target, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarized_source: p must lie in [0, 1]");
  }
  int d = target.dim();
  Matrix m = (1.0 - p) * projector(target).mat +
             (p / d) * Matrix::Identity(d, d);
  Source src{Operator(target.dims, m), format_param("depol:", p), false};
  require_density(src.state, "depolarized_source");
  return src;
}

Source custom_source(const Operator& rho) {
  require_density(rho, "custom_source");
  return Source{rho, "custom", false};
}

long long Transcript::passes() const {
  long long t = 0;
  for (const RoundRecord& r : records) {
    t += r.pass ? 1 : 0;
  }
  return t;
}

double Transcript::frequency() const {
  if (records.empty()) {
    return 0.0;
  }
  return double(passes()) / double(records.size());
}

Transcript run_protocol(const strategies::Strategy& s, const Source& src,
                        long long rounds, uint64_t seed, int threads) {
  if (rounds < 1) {
    throw std::invalid_argument("run_protocol: rounds must be at least one");
  }
  if (s.tests.empty()) {
    throw std::invalid_argument("run_protocol: strategy has no tests");
  }
  if (src.state.dims != s.target.dims) {
    throw std::invalid_argument(
        "run_protocol: source and strategy dimensions differ");
  }

  size_t n_tests = s.tests.size();
  std::vector<double> cum(n_tests);
  std::vector<double> q(n_tests);
  double acc = 0.0;
  for (size_t l = 0; l < n_tests; ++l) {
    acc += s.tests[l].p;
    cum[l] = acc;
    double ql = (s.tests[l].effect.mat * src.state.mat).trace().real();
    if (ql < -kDerivedTol || ql > 1.0 + kDerivedTol) {
      throw NumericalError(
          "run_protocol: test pass probability leaves [0, 1]");
    }
    // Snap away rounding noise at the endpoints so a mathematically certain
    // pass or failure is certain in the sampled transcript too.
    if (ql > 1.0 - kInputTol) {
      ql = 1.0;
    } else if (ql < kInputTol) {
      ql = 0.0;
    }
    q[l] = ql;
  }
  // Guard against the cumulative sum landing a hair below one.
  cum[n_tests - 1] = 1.0;

  Transcript tr;
  tr.seed = seed;
  tr.strategy_label = s.label;
  tr.source_label = src.label;
  tr.records.resize(size_t(rounds));

  auto fill = [&](long long lo, long long hi) {
    for (long long k = lo; k < hi; ++k) {
      double u_test = rng::uniform(seed, uint64_t(2 * k));
      size_t idx = size_t(
          std::upper_bound(cum.begin(), cum.end(), u_test) - cum.begin());
      if (idx >= n_tests) {
        idx = n_tests - 1;
      }
      double u_pass = rng::uniform(seed, uint64_t(2 * k + 1));
      tr.records[size_t(k)] = RoundRecord{int(idx), u_pass < q[idx]};
    }
  };

  int workers = std::max(1, threads);
  long long min_chunk = 1024;
  workers = int(std::min<long long>(workers,
                                    std::max<long long>(1, rounds / min_chunk)));
  if (workers <= 1) {
    fill(0, rounds);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    long long chunk = (rounds + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      long long lo = w * chunk;
      long long hi = std::min(rounds, lo + chunk);
      if (lo >= hi) {
        break;
      }
      pool.emplace_back(fill, lo, hi);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  return tr;
}

stats::TestResult evaluate_transcript(const Transcript& tr, double epsilon,
                                      double nu) {
  if (tr.records.empty()) {
    throw std::invalid_argument("evaluate_transcript: transcript is empty");
  }
  return stats::fidelity_decision(tr.frequency(), epsilon, nu,
                                  (long long)tr.records.size());
}

}  // namespace qv::sim
