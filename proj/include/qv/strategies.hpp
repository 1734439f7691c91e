#pragma once

#include <optional>
#include <string>

#include "qv/graphs.hpp"
#include "qv/states.hpp"
#include "qv/types.hpp"

namespace qv::strategies {

/// One verification test: applied with probability p, passes with
/// probability <effect> on the measured state. 0 <= effect <= 1 and the
/// target is a +1 eigenvector of every effect.
struct Test {
  double p;
  Operator effect;
};

/// Product term of a one-way decomposition: the aggregate equals
/// sum over pairs of alice (x) bob, where the alice parts form a POVM.
struct OneWayPair {
  Operator alice;
  Operator bob;
};

struct Strategy {
  PureState target;
  std::vector<Test> tests;
  std::string label;
  std::optional<double> predicted_gap;
  /// Empty unless the strategy is implementable by Alice measuring first.
  std::vector<OneWayPair> one_way;

  /// sum_l p_l Omega_l.
  Operator aggregate() const;
  /// Spectral gap of the aggregate with respect to the target.
  double gap() const;
};

/// Structural checks every strategy must satisfy.
struct ValidityReport {
  double prob_sum = 0;
  double min_effect_eig = 0;
  double max_effect_eig = 0;
  double max_target_residual = 0;
  double achieved_gap = 0;
  bool prob_sum_ok = false;       // |sum p - 1| <= 1e-12, all p >= 0
  bool effects_ok = false;        // spectra within [-1e-9, 1 + 1e-9]
  bool target_fixed_ok = false;   // residual norm of each effect on target <= 1e-9
  bool gap_matches = false;       // |achieved - predicted| <= 1e-6 when predicted
  bool ok() const {
    return prob_sum_ok && effects_ok && target_fixed_ok && gap_matches;
  }
};
ValidityReport validate(const Strategy& s);

/// Constraints a one-way verification operator satisfies when Bob holds the
/// unmeasured side: partial trace over Bob equals the identity, the partial
/// transpose stays positive semidefinite, and the target is fixed. The PPT
/// check certifies separability only on a two-qubit system.
struct OneWayReport {
  double trace_b_defect = 0;
  double min_pt_eigenvalue = 0;
  double target_expectation_error = 0;
  bool trace_b_identity = false;
  bool ppt = false;
  bool target_fixed = false;
  bool ppt_conclusive = false;
};
OneWayReport check_one_way_constraints(const Strategy& s);

/// Local product test: sum of M_a (x) N_b over all outcome pairs whose
/// effect does not annihilate the target. Both POVMs must sum to the
/// identity within 1e-9.
Operator build_local_test(const std::vector<Operator>& alice_povm,
                          const std::vector<Operator>& bob_povm,
                          const PureState& target);

/// Bob's rank-one test after Alice's effect fires on the target.
/// alice_effect must be positive semidefinite and the collapse pure.
Operator bob_semi_optimal(const Operator& alice_effect, const PureState& target);

/// Conjugates target, effects, and one-way pairs by a (x) b. Both matrices
/// must be unitary within 1e-9. The spectral gap is unchanged.
Strategy conjugate_local(const Strategy& s, const Matrix& a, const Matrix& b);

// Builders. Every builder returns a strategy whose achieved gap matches
// predicted_gap within 1e-6.

/// XX, -YY, ZZ parity tests with probability 1/3 each. Gap 2/3.
Strategy bell_strategy();

/// Computational-basis test plus phase-conjugated Fourier tests for the
/// maximally entangled state of two qudits. Gap d/(d+1).
Strategy mes_strategy(int d);

/// All-equal Z outcomes or X parity, probability 1/2 each. Gap 1/2.
Strategy ghz_two_setting(int n);

/// Z test with probability 1/3 plus the 2^(n-1) X/Y-type stabilizer tests.
/// Gap 2/3.
Strategy ghz_optimal(int n);

/// Uniform mixture of the 2^n - 1 nontrivial stabilizer tests of a graph
/// state. Gap 2^(n-1)/(2^n - 1).
Strategy stabilizer_strategy(const graphs::Graph& g);

/// One test per color class, measuring X on the class and Z elsewhere.
/// Gap 1/m for m classes.
Strategy coloring_strategy(const graphs::Graph& g, const graphs::Coloring& c);
Strategy coloring_strategy(const graphs::Graph& g);

/// Optimal locally implementable strategy for cos(theta)|00> + sin(theta)|11>,
/// 0 < theta < pi/4. Standard basis test with weight
/// (2 - sin 2theta)/(4 + sin 2theta) plus three reverse product tests.
/// Gap 1/(2 + sin theta cos theta). theta = pi/4 returns bell_strategy().
Strategy two_qubit_local_optimal(double theta);

/// One-way LOCC strategy: standard basis test plus X and Y conditional
/// tests. Gap 1/(1 + cos^2 theta). theta = pi/4 returns bell_strategy().
Strategy one_way_qubit(double theta);

/// Two-way LOCC strategy symmetrizing the one-way tests across both
/// directions. Gap 2/3 for every theta. theta = pi/4 returns bell_strategy().
Strategy two_way_qubit(double theta);

/// Many-round LOCC strategy built from a weak nondestructive measurement.
/// Gap 1/(1 + sin theta cos theta). theta = pi/4 returns bell_strategy().
Strategy many_round_qubit(double theta);

/// One-way LOCC strategy for a two-qudit state with the given Schmidt
/// coefficients. Gap 1/(1 + lambda_1^2).
Strategy one_way_qudit(const states::SchmidtVector& lambda);

/// Swap-symmetrized variant. Gap 1/(1 + (lambda_1^2 + lambda_2^2)/2).
Strategy two_way_qudit(const states::SchmidtVector& lambda);

/// Pairwise LOCC strategy for the W state. Gap 1/3 for n = 3, otherwise
/// 1/(n-1).
Strategy w_locc(int n);

/// Local strategy for the W state: global excitation-count test with
/// probability 1/2 plus pairwise tests. Gap 1/4 for n = 3, otherwise
/// 1/(2(n-1)).
Strategy w_local(int n);

/// Pairwise LOCC strategy for the Dicke state with k excitations. The
/// conditioning generalizes w_locc, which is the k = 1 case; the gap
/// matches w_locc(n).
Strategy dicke_locc(int n, int k);

/// Projection onto the target as a single test. Gap 1.
Strategy global_strategy(const PureState& target);

}  // namespace qv::strategies
