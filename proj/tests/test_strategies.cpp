#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qv/qmath.hpp"
#include "qv/strategies.hpp"
#include "test_util.hpp"

using namespace qv;
using namespace qv::strategies;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference form of the one-way qudit verification operator, assembled
// directly from the Schmidt data instead of by group averaging:
// omega * sum |aa><aa| + (1 - omega) * (|psi><psi| + sum_{b!=g} lambda_g^2
// |bg><bg|) with omega = lambda_1^2 / (1 + lambda_1^2).
Matrix one_way_reference(const states::SchmidtVector& lambda) {
  int d = lambda.d();
  PureState psi = states::schmidt_state(lambda);
  double l1sq = lambda.coeffs[0] * lambda.coeffs[0];
  double omega = l1sq / (1.0 + l1sq);
  Matrix out = (1.0 - omega) * projector(psi).mat;
  for (int b = 0; b < d; ++b) {
    for (int g = 0; g < d; ++g) {
      int idx = b * d + g;
      if (b == g) {
        out(idx, idx) += omega;
      } else {
        out(idx, idx) += (1.0 - omega) * lambda.coeffs[g] * lambda.coeffs[g];
      }
    }
  }
  return out;
}

double prob_sum(const Strategy& s) {
  double acc = 0;
  for (const Test& t : s.tests) acc += t.p;
  return acc;
}

// One-way pairs must reproduce the aggregate and the Alice parts must form
// a POVM.
void check_pairs(const Strategy& s) {
  REQUIRE(!s.one_way.empty());
  int da = s.one_way[0].alice.dim();
  Matrix alice_sum = Matrix::Zero(da, da);
  Matrix joint = Matrix::Zero(s.tests[0].effect.dim(), s.tests[0].effect.dim());
  for (const OneWayPair& p : s.one_way) {
    alice_sum += p.alice.mat;
    joint += kron(p.alice, p.bob).mat;
  }
  CHECK(tu::max_abs_diff(alice_sum, Matrix::Identity(da, da)) < 1e-12);
  CHECK(tu::max_abs_diff(joint, s.aggregate().mat) < 1e-12);
}

graphs::Graph triangle() { return graphs::Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
graphs::Graph c4() { return graphs::Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }
graphs::Graph star5() {
  return graphs::Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

}  // namespace

TEST_CASE("bell strategy: parity tests, gap 2/3, flat lower spectrum") {
  Strategy s = bell_strategy();
  CHECK(s.tests.size() == 3);
  CHECK(std::abs(prob_sum(s) - 1.0) < 1e-15);
  CHECK(std::abs(s.gap() - 2.0 / 3.0) < 1e-12);
  RealVector eigs = hermitian_eigenvalues(s.aggregate());
  CHECK(std::abs(eigs(0) - 1.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(eigs(i) - 1.0 / 3.0) < 1e-12);
  CHECK(validate(s).ok());
  check_pairs(s);
  OneWayReport r = check_one_way_constraints(s);
  CHECK(r.trace_b_identity);
  CHECK(r.ppt);
  CHECK(r.target_fixed);
  CHECK(r.ppt_conclusive);
}

TEST_CASE("mes strategy: gap d/(d+1) and exact aggregate form") {
  for (int d : {2, 3, 4, 5}) {
    Strategy s = mes_strategy(d);
    CHECK(std::abs(s.gap() - double(d) / (d + 1)) < 1e-9);
    int dim = d * d;
    PureState psi = states::mes_qudit(d);
    Matrix want =
        (Matrix::Identity(dim, dim) + double(d) * projector(psi).mat) /
        (d + 1.0);
    CHECK(tu::max_abs_diff(s.aggregate().mat, want) < 1e-9);
    long fourier = 1;
    for (int i = 1; i < d; ++i) fourier *= 4;
    CHECK(s.tests.size() == std::size_t(fourier + 1));
  }
  CHECK(tu::max_abs_diff(mes_strategy(2).aggregate().mat,
                         bell_strategy().aggregate().mat) < 1e-12);
  Strategy s3 = mes_strategy(3);
  CHECK(validate(s3).ok());
  check_pairs(s3);
  OneWayReport r = check_one_way_constraints(s3);
  CHECK(r.trace_b_identity);
  CHECK(r.ppt);
  CHECK_FALSE(r.ppt_conclusive);
}

TEST_CASE("one-way qudit strategy matches the direct reference operator") {
  states::SchmidtVector lambda({0.8, 0.6});
  Strategy s = one_way_qudit(lambda);
  CHECK(tu::max_abs_diff(s.aggregate().mat, one_way_reference(lambda)) < 1e-9);
  CHECK(std::abs(s.gap() - 1.0 / 1.64) < 1e-12);
  CHECK(s.tests.size() == 5);
  CHECK(validate(s).ok());
  check_pairs(s);

  states::SchmidtVector skew({0.7, 0.6, std::sqrt(0.15)});
  Strategy q = one_way_qudit(skew);
  CHECK(tu::max_abs_diff(q.aggregate().mat, one_way_reference(skew)) < 1e-9);
  CHECK(std::abs(q.gap() - 1.0 / 1.49) < 1e-9);
  CHECK(q.tests.size() == 17);
  CHECK(validate(q).ok());
  check_pairs(q);
  OneWayReport r = check_one_way_constraints(q);
  CHECK(r.trace_b_identity);
  CHECK(r.ppt);
}

TEST_CASE("one-way qubit strategy: gap, qudit equivalence, constraints") {
  double theta = kPi / 6;
  Strategy s = one_way_qubit(theta);
  CHECK(s.tests.size() == 3);
  CHECK(std::abs(s.gap() - 4.0 / 7.0) < 1e-12);
  CHECK(validate(s).ok());
  check_pairs(s);
  OneWayReport r = check_one_way_constraints(s);
  CHECK(r.trace_b_identity);
  CHECK(r.ppt);
  CHECK(r.target_fixed);
  CHECK(r.ppt_conclusive);

  states::SchmidtVector lambda({std::cos(theta), std::sin(theta)});
  CHECK(tu::max_abs_diff(s.aggregate().mat,
                         one_way_qudit(lambda).aggregate().mat) < 1e-9);

  CHECK(one_way_qubit(kPi / 4).label == "bell");
}

TEST_CASE("two-way qubit strategy: gap 2/3 and swap symmetry") {
  for (double theta : {kPi / 8, kPi / 6, 0.3}) {
    Strategy s = two_way_qubit(theta);
    CHECK(s.tests.size() == 5);
    CHECK(std::abs(s.gap() - 2.0 / 3.0) < 1e-9);
    CHECK(validate(s).ok());
    Matrix omega = s.aggregate().mat;
    Matrix v = swap_operator(2).mat;
    CHECK(tu::max_abs_diff(omega, v * omega * v) < 1e-12);
  }
  CHECK(two_way_qubit(kPi / 4).label == "bell");
}

TEST_CASE("many-round qubit strategy reaches gap 1/(1 + sin cos)") {
  for (double theta : {kPi / 8, kPi / 6, 0.3}) {
    Strategy s = many_round_qubit(theta);
    CHECK(s.tests.size() == 5);
    double want = 1.0 / (1.0 + std::sin(theta) * std::cos(theta));
    CHECK(std::abs(s.gap() - want) < 1e-9);
    CHECK(validate(s).ok());
  }
  CHECK(std::abs(many_round_qubit(kPi / 6).gap() - 0.6978305209652723) < 1e-9);
  CHECK(many_round_qubit(kPi / 4).label == "bell");
}

TEST_CASE("locally optimal two-qubit strategy") {
  for (double theta : {kPi / 8, kPi / 6, 0.3, 0.7}) {
    Strategy s = two_qubit_local_optimal(theta);
    CHECK(s.tests.size() == 4);
    double sc = std::sin(theta) * std::cos(theta);
    CHECK(std::abs(s.gap() - 1.0 / (2.0 + sc)) < 1e-9);
    CHECK(validate(s).ok());
    check_pairs(s);
    // The trine is tuned so every non-top eigenvalue coincides.
    RealVector eigs = hermitian_eigenvalues(s.aggregate());
    for (int i = 2; i < 4; ++i) CHECK(std::abs(eigs(i) - eigs(1)) < 1e-9);
    double alpha =
        (2.0 - std::sin(2 * theta)) / (4.0 + std::sin(2 * theta));
    CHECK(std::abs(s.tests[0].p - alpha) < 1e-15);
  }
  CHECK(std::abs(two_qubit_local_optimal(kPi / 6).gap() - 0.4110130621651727) <
        1e-9);
  // At the maximally entangled point the optimum jumps to the Bell tests.
  Strategy mes_case = two_qubit_local_optimal(kPi / 4);
  CHECK(mes_case.label == "bell");
  CHECK(std::abs(mes_case.gap() - 2.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(two_qubit_local_optimal(0.0), std::invalid_argument);
  CHECK_THROWS_AS(two_qubit_local_optimal(1.0), std::invalid_argument);
}

TEST_CASE("two-way qudit strategy: gap from the top two coefficients") {
  states::SchmidtVector lambda({0.7, 0.6, std::sqrt(0.15)});
  Strategy s = two_way_qudit(lambda);
  CHECK(std::abs(s.gap() - 1.0 / 1.425) < 1e-9);
  CHECK(validate(s).ok());
  Matrix omega = s.aggregate().mat;
  Matrix v = swap_operator(3).mat;
  CHECK(tu::max_abs_diff(omega, v * omega * v) < 1e-12);
  // Any two-qubit Schmidt pair averages to 1/2, so the gap is always 2/3.
  Strategy q = two_way_qudit(states::SchmidtVector({0.9, std::sqrt(0.19)}));
  CHECK(std::abs(q.gap() - 2.0 / 3.0) < 1e-9);
}

TEST_CASE("ghz two-setting strategy: gap 1/2, rank-2 basis test") {
  for (int n : {2, 3, 4, 5}) {
    Strategy s = ghz_two_setting(n);
    CHECK(s.tests.size() == 2);
    CHECK(std::abs(s.gap() - 0.5) < 1e-12);
    CHECK(validate(s).ok());
    // The basis test accepts only the two all-equal strings.
    CHECK(std::abs(s.tests[0].effect.mat.trace().real() - 2.0) < 1e-12);
  }
}

TEST_CASE("ghz optimal strategy: gap 2/3 across sizes") {
  for (int n : {2, 3, 4, 5, 6}) {
    Strategy s = ghz_optimal(n);
    CHECK(s.tests.size() == std::size_t(1 + (1 << (n - 1))));
    CHECK(std::abs(prob_sum(s) - 1.0) < 1e-12);
    CHECK(std::abs(s.gap() - 2.0 / 3.0) < 1e-9);
    CHECK(validate(s).ok());
  }
  CHECK(tu::max_abs_diff(ghz_optimal(2).aggregate().mat,
                         bell_strategy().aggregate().mat) < 1e-12);
}

TEST_CASE("stabilizer strategy gap is 2^(n-1)/(2^n - 1)") {
  auto check_graph = [](const graphs::Graph& g) {
    Strategy s = stabilizer_strategy(g);
    int n = g.n;
    CHECK(s.tests.size() == std::size_t((1 << n) - 1));
    double want = std::pow(2.0, n - 1) / (std::pow(2.0, n) - 1.0);
    CHECK(std::abs(s.gap() - want) < 1e-9);
    CHECK(validate(s).ok());
  };
  check_graph(graphs::Graph(2, {{0, 1}}));
  check_graph(triangle());
  check_graph(c4());
  check_graph(star5());
}

TEST_CASE("coloring strategy gap is one over the number of colors") {
  struct Case {
    graphs::Graph g;
    int colors;
  };
  for (const Case& c : {Case{triangle(), 3}, Case{c4(), 2}, Case{star5(), 2}}) {
    Strategy s = coloring_strategy(c.g);
    CHECK(s.tests.size() == std::size_t(c.colors));
    CHECK(std::abs(s.gap() - 1.0 / c.colors) < 1e-12);
    CHECK(validate(s).ok());
    for (const Test& t : s.tests) {
      CHECK(tu::max_abs_diff(t.effect.mat * t.effect.mat, t.effect.mat) <
            1e-12);
    }
  }
}

TEST_CASE("w state strategies") {
  for (int n : {3, 4, 5}) {
    Strategy locc = w_locc(n);
    CHECK(locc.tests.size() == std::size_t(n * (n - 1) / 2));
    double want_locc = n == 3 ? 1.0 / 3.0 : 1.0 / (n - 1);
    CHECK(std::abs(locc.gap() - want_locc) < 1e-9);
    CHECK(validate(locc).ok());

    Strategy local = w_local(n);
    CHECK(local.tests.size() == std::size_t(1 + n * (n - 1) / 2));
    CHECK(std::abs(local.gap() - 1.0 / (2.0 * (n - 1))) < 1e-9);
    CHECK(validate(local).ok());
  }
  CHECK(std::abs(w_locc(6).gap() - 0.2) < 1e-9);
  CHECK(std::abs(w_local(6).gap() - 0.1) < 1e-9);
}

TEST_CASE("dicke strategy generalizes the w pair tests") {
  CHECK(tu::max_abs_diff(dicke_locc(4, 1).aggregate().mat,
                         w_locc(4).aggregate().mat) < 1e-12);
  struct Case {
    int n, k;
    double gap;
  };
  for (const Case& c : {Case{3, 2, 1.0 / 3}, Case{4, 2, 1.0 / 3},
                        Case{5, 2, 0.25}, Case{6, 3, 0.2}}) {
    Strategy s = dicke_locc(c.n, c.k);
    CHECK(std::abs(s.gap() - c.gap) < 1e-9);
    CHECK(validate(s).ok());
  }
  CHECK_THROWS_AS(dicke_locc(4, 4), std::invalid_argument);
}

TEST_CASE("global strategy projects onto the target") {
  Strategy s = global_strategy(states::ghz_state(3));
  CHECK(s.tests.size() == 1);
  CHECK(std::abs(s.gap() - 1.0) < 1e-12);
  CHECK(validate(s).ok());
}

TEST_CASE("build_local_test keeps only outcome pairs consistent with target") {
  const double r = 1.0 / std::sqrt(2.0);
  Vector xp(2), xm(2);
  xp << r, r;
  xm << r, -r;
  std::vector<Operator> povm = {Operator({2}, xp * xp.adjoint()),
                                Operator({2}, xm * xm.adjoint())};
  Operator t = build_local_test(povm, povm, states::bell_state());
  Matrix xx = graphs::PauliString::parse("XX").dense();
  CHECK(tu::max_abs_diff(t.mat, (Matrix::Identity(4, 4) + xx) / 2.0) < 1e-12);

  std::vector<Operator> broken = {Operator({2}, 0.5 * xp * xp.adjoint())};
  CHECK_THROWS_AS(build_local_test(broken, povm, states::bell_state()),
                  std::invalid_argument);
}

TEST_CASE("bob_semi_optimal returns the collapsed rank-one test") {
  PureState bell = states::bell_state();
  const double r = 1.0 / std::sqrt(2.0);
  Vector xp(2), yp(2), ym(2);
  xp << r, r;
  yp << r, Complex(0, r);
  ym << r, Complex(0, -r);
  Operator nx = bob_semi_optimal(Operator({2}, xp * xp.adjoint()), bell);
  CHECK(tu::max_abs_diff(nx.mat, xp * xp.adjoint()) < 1e-12);
  // The collapse conjugates the phase: +i on Alice pairs with -i on Bob.
  Operator ny = bob_semi_optimal(Operator({2}, yp * yp.adjoint()), bell);
  CHECK(tu::max_abs_diff(ny.mat, ym * ym.adjoint()) < 1e-12);

  CHECK_THROWS_AS(bob_semi_optimal(identity({2}), bell),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      bob_semi_optimal(Operator({2}, Matrix::Zero(2, 2)), bell),
      std::invalid_argument);
}

TEST_CASE("conjugate_local preserves the gap and moves the target") {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << r, r, r, -r;
  Strategy s = conjugate_local(bell_strategy(), h, h);
  CHECK(std::abs(s.gap() - 2.0 / 3.0) < 1e-12);
  CHECK(validate(s).ok());
  check_pairs(s);

  Matrix bad = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(conjugate_local(bell_strategy(), bad, bad),
                  std::invalid_argument);
}

TEST_CASE("one-way constraint report distinguishes directions") {
  OneWayReport fwd = check_one_way_constraints(one_way_qubit(0.5));
  CHECK(fwd.trace_b_identity);
  OneWayReport both = check_one_way_constraints(two_way_qubit(0.5));
  CHECK_FALSE(both.trace_b_identity);
  CHECK(both.target_fixed);
}

TEST_CASE("validate flags broken strategies") {
  Strategy s = bell_strategy();
  s.tests[0].p = 0.5;
  CHECK_FALSE(validate(s).prob_sum_ok);

  Strategy t = bell_strategy();
  t.tests[0].effect.mat *= 1.5;
  ValidityReport r = validate(t);
  CHECK_FALSE(r.effects_ok);
  CHECK_FALSE(r.target_fixed_ok);

  Strategy u = bell_strategy();
  u.predicted_gap = 0.5;
  CHECK_FALSE(validate(u).gap_matches);
}

TEST_CASE("builder domain checks") {
  CHECK_THROWS_AS(ghz_two_setting(1), std::invalid_argument);
  CHECK_THROWS_AS(ghz_optimal(13), std::invalid_argument);
  CHECK_THROWS_AS(w_locc(2), std::invalid_argument);
  CHECK_THROWS_AS(one_way_qubit(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(mes_strategy(8), std::invalid_argument);
}
