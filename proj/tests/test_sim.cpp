#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include <doctest.h>
#include "qv/qmath.hpp"
#include "qv/rng.hpp"
#include "qv/sim.hpp"
#include "qv/states.hpp"
#include "qv/stats.hpp"
#include "qv/strategies.hpp"

using namespace qv;

namespace {

// Single-test strategy on a qutrit with a non-degenerate second eigenvalue,
// used to pin the worst-case deviation direction exactly.
strategies::Strategy qutrit_diag_strategy() {
  Vector v(3);
  v << 1.0, 0.0, 0.0;
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 0.6;
  m(2, 2) = 0.2;
  strategies::Strategy s;
  s.target = PureState({3}, v);
  s.tests.push_back({1.0, Operator({3}, m)});
  s.label = "qutrit-diag";
  return s;
}

double expected_pass_prob(const strategies::Strategy& s,
                          const sim::Source& src) {
  double total = 0.0;
  for (const auto& t : s.tests) {
    total += t.p * (t.effect.mat * src.state.mat).trace().real();
  }
  return total;
}

}  // namespace

TEST_CASE("counter generator is deterministic and uniform") {
  CHECK(rng::uniform(12345, 7) == rng::uniform(12345, 7));
  CHECK(rng::uniform(12345, 7) != rng::uniform(12345, 8));
  CHECK(rng::uniform(12345, 7) != rng::uniform(54321, 7));

  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng::uniform(99, uint64_t(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  double mean = sum / n;
  double four_sigma = 4.0 / std::sqrt(12.0 * n);
  CHECK(std::abs(mean - 0.5) < four_sigma);
}

TEST_CASE("exact source passes every round") {
  strategies::Strategy s = strategies::bell_strategy();
  sim::Source src = sim::exact_source(s.target);
  CHECK(src.label == "exact");
  for (uint64_t seed : {uint64_t(1), uint64_t(99)}) {
    sim::Transcript tr = sim::run_protocol(s, src, 2000, seed);
    CHECK(tr.records.size() == 2000);
    CHECK(tr.passes() == 2000);
    CHECK(tr.frequency() == 1.0);
  }
}

TEST_CASE("worst-case source achieves the worst-case pass probability") {
  strategies::Strategy s = strategies::bell_strategy();
  double eps = 0.3;
  bool degen = false;
  Operator rho = sim::worst_case_state(s, eps, &degen);
  // The aggregate spectrum is (1, 1/3, 1/3, 1/3): the deviation direction is
  // a convention pick inside the degenerate eigenspace.
  CHECK(degen);

  Operator omega = s.aggregate();
  double pass = (omega.mat * rho.mat).trace().real();
  CHECK(pass == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(rho.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));

  Operator at_zero = sim::worst_case_state(s, 0.0);
  Matrix psi = projector(s.target).mat;
  CHECK((at_zero.mat - psi).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(sim::worst_case_state(s, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(sim::worst_case_state(s, 1.5), std::invalid_argument);
}

TEST_CASE("worst-case direction with a unique second eigenvalue") {
  strategies::Strategy s = qutrit_diag_strategy();
  CHECK(s.gap() == doctest::Approx(0.4).epsilon(1e-12));

  bool degen = true;
  Operator rho = sim::worst_case_state(s, 0.5, &degen);
  CHECK_FALSE(degen);

  // Second eigenvector of diag(1, 0.6, 0.2) is the middle basis vector, so
  // the state must be exactly (P0 + P1) / 2.
  Matrix want = Matrix::Zero(3, 3);
  want(0, 0) = 0.5;
  want(1, 1) = 0.5;
  CHECK((rho.mat - want).cwiseAbs().maxCoeff() < 1e-12);

  sim::Source src = sim::worst_case_source(s, 0.5);
  CHECK_FALSE(src.degenerate_direction);
  CHECK(expected_pass_prob(s, src) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("depolarized source fidelity") {
  PureState bell = states::bell_state();
  sim::Source src = sim::depolarized_source(bell, 0.1);
  double fid = expectation(src.state, bell).real();
  CHECK(fid == doctest::Approx(0.925).epsilon(1e-12));

  sim::Source pure = sim::depolarized_source(bell, 0.0);
  CHECK((pure.state.mat - projector(bell).mat).cwiseAbs().maxCoeff() < 1e-12);

  sim::Source flat = sim::depolarized_source(bell, 1.0);
  Matrix want = Matrix::Identity(4, 4) / 4.0;
  CHECK((flat.state.mat - want).cwiseAbs().maxCoeff() < 1e-12);

  PureState m3 = states::mes_qudit(3);
  sim::Source d3 = sim::depolarized_source(m3, 0.3);
  CHECK(expectation(d3.state, m3).real() ==
        doctest::Approx(1.0 - 0.3 + 0.3 / 9.0).epsilon(1e-12));

  CHECK_THROWS_AS(sim::depolarized_source(bell, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(sim::depolarized_source(bell, 1.1), std::invalid_argument);
}

TEST_CASE("custom source validates the density operator") {
  Operator ok({2, 2}, Matrix::Identity(4, 4) / 4.0);
  sim::Source src = sim::custom_source(ok);
  CHECK(src.label == "custom");

  Operator bad_trace({2}, Matrix::Identity(2, 2));
  CHECK_THROWS_AS(sim::custom_source(bad_trace), NumericalError);

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(sim::custom_source(Operator({2}, neg)), NumericalError);

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 0) = 1.0;
  skew(0, 1) = Complex(0.0, 0.5);
  CHECK_THROWS_AS(sim::custom_source(Operator({2}, skew)), NumericalError);
}

TEST_CASE("sampled frequency converges to the expected pass probability") {
  const long long n = 20000;

  strategies::Strategy bell = strategies::bell_strategy();
  sim::Source worst = sim::worst_case_source(bell, 0.3);
  sim::Transcript tr = sim::run_protocol(bell, worst, n, 42);
  double margin = 4.0 * std::sqrt(0.8 * 0.2 / double(n));
  CHECK(std::abs(tr.frequency() - 0.8) < margin);

  sim::Source depol = sim::depolarized_source(bell.target, 0.2);
  double expect_d = expected_pass_prob(bell, depol);
  sim::Transcript td = sim::run_protocol(bell, depol, n, 43);
  double margin_d = 4.0 * std::sqrt(expect_d * (1.0 - expect_d) / double(n));
  CHECK(std::abs(td.frequency() - expect_d) < margin_d);

  strategies::Strategy mes = strategies::mes_strategy(3);
  sim::Source worst3 = sim::worst_case_source(mes, 0.2);
  double expect_3 = 1.0 - 0.2 * 0.75;
  CHECK(expected_pass_prob(mes, worst3) ==
        doctest::Approx(expect_3).epsilon(1e-9));
  sim::Transcript t3 = sim::run_protocol(mes, worst3, n, 44);
  double margin_3 = 4.0 * std::sqrt(expect_3 * (1.0 - expect_3) / double(n));
  CHECK(std::abs(t3.frequency() - expect_3) < margin_3);
}

TEST_CASE("transcripts are bit-identical across thread counts") {
  strategies::Strategy s = strategies::bell_strategy();
  sim::Source src = sim::worst_case_source(s, 0.3);
  const long long n = 10007;

  sim::Transcript base = sim::run_protocol(s, src, n, 7, 1);
  for (int threads : {2, 3, 8}) {
    sim::Transcript other = sim::run_protocol(s, src, n, 7, threads);
    REQUIRE(other.records.size() == base.records.size());
    bool same = true;
    for (size_t k = 0; k < base.records.size(); ++k) {
      if (base.records[k].test_index != other.records[k].test_index ||
          base.records[k].pass != other.records[k].pass) {
        same = false;
        break;
      }
    }
    CHECK(same);
  }
}

TEST_CASE("seed determines the transcript") {
  strategies::Strategy s = strategies::bell_strategy();
  sim::Source src = sim::depolarized_source(s.target, 0.15);

  sim::Transcript a = sim::run_protocol(s, src, 512, 2026);
  sim::Transcript b = sim::run_protocol(s, src, 512, 2026);
  CHECK(a.passes() == b.passes());
  bool same = true;
  for (size_t k = 0; k < a.records.size(); ++k) {
    same = same && a.records[k].test_index == b.records[k].test_index &&
           a.records[k].pass == b.records[k].pass;
  }
  CHECK(same);

  sim::Transcript c = sim::run_protocol(s, src, 512, 2027);
  int diffs = 0;
  for (size_t k = 0; k < a.records.size(); ++k) {
    if (a.records[k].test_index != c.records[k].test_index ||
        a.records[k].pass != c.records[k].pass) {
      ++diffs;
    }
  }
  CHECK(diffs > 0);

  CHECK(a.seed == 2026);
  CHECK(a.strategy_label == "bell");
  CHECK(a.source_label == "depol:0.15");
}

TEST_CASE("test draws follow the strategy distribution") {
  strategies::Strategy s = strategies::bell_strategy();
  sim::Source src = sim::exact_source(s.target);
  const long long n = 30000;
  sim::Transcript tr = sim::run_protocol(s, src, n, 5);

  std::vector<long long> counts(s.tests.size(), 0);
  for (const auto& r : tr.records) {
    REQUIRE(r.test_index >= 0);
    REQUIRE(size_t(r.test_index) < s.tests.size());
    ++counts[size_t(r.test_index)];
  }
  double margin = 4.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / double(n));
  for (size_t l = 0; l < counts.size(); ++l) {
    CHECK(std::abs(double(counts[l]) / double(n) - s.tests[l].p) < margin);
  }
}

TEST_CASE("all-pass frequency matches the binomial prediction") {
  strategies::Strategy s = strategies::bell_strategy();
  sim::Source src = sim::worst_case_source(s, 0.3);
  const int runs = 10000;
  const long long rounds = 20;

  int all_pass = 0;
  for (int r = 0; r < runs; ++r) {
    sim::Transcript tr = sim::run_protocol(s, src, rounds, uint64_t(r));
    if (tr.passes() == rounds) {
      ++all_pass;
    }
  }
  double p = std::pow(0.8, 20);
  double sigma = std::sqrt(p * (1.0 - p) / double(runs));
  CHECK(std::abs(double(all_pass) / double(runs) - p) < 3.0 * sigma);
}

TEST_CASE("pass probability integrity guard") {
  Vector v(2);
  v << 1.0, 0.0;
  strategies::Strategy s;
  s.target = PureState({2}, v);
  s.tests.push_back({1.0, Operator({2}, 1.2 * Matrix::Identity(2, 2))});
  s.label = "inflated";

  sim::Source src{Operator({2}, Matrix::Identity(2, 2) / 2.0), "custom",
                  false};
  CHECK_THROWS_AS(sim::run_protocol(s, src, 10, 1), NumericalError);

  s.tests[0].effect = Operator({2}, -0.2 * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(sim::run_protocol(s, src, 10, 1), NumericalError);

  strategies::Strategy bell = strategies::bell_strategy();
  CHECK_THROWS_AS(sim::run_protocol(bell, src, 10, 1), std::invalid_argument);
  sim::Source good = sim::exact_source(bell.target);
  CHECK_THROWS_AS(sim::run_protocol(bell, good, 0, 1), std::invalid_argument);
}

TEST_CASE("transcript evaluation applies the decision rule") {
  strategies::Strategy s = strategies::bell_strategy();

  // All passes at the sample count planned for eps=0.1, delta=0.05.
  long long n = stats::required_samples(0.1, 0.05, 2.0 / 3.0);
  REQUIRE(n == 44);
  sim::Transcript tr = sim::run_protocol(s, sim::exact_source(s.target), n, 3);
  stats::TestResult res = sim::evaluate_transcript(tr, 0.1, 2.0 / 3.0);
  CHECK(res.reject);
  REQUIRE(res.confidence.has_value());
  CHECK(*res.confidence >= 0.95);

  // A strongly deviating source stays below the acceptance threshold.
  sim::Transcript bad =
      sim::run_protocol(s, sim::worst_case_source(s, 0.3), 2000, 11);
  stats::TestResult res_bad = sim::evaluate_transcript(bad, 0.1, 2.0 / 3.0);
  CHECK_FALSE(res_bad.reject);
  CHECK_FALSE(res_bad.confidence.has_value());
}
