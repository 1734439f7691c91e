#pragma once

#include <vector>

#include "qv/strategies.hpp"
#include "qv/types.hpp"

namespace qv::qpv {

/// Choi matrix of a channel, J = sum_{ab} |a><b| (x) E(|a><b|), with the
/// input factor first. Positive semidefinite within 1e-9 by construction;
/// `trace_preserving` records whether tracing out the output factor leaves
/// the identity on the input within 1e-9.
struct ChannelChoi {
  int d_in = 0;
  int d_out = 0;
  Matrix j;
  bool trace_preserving = false;
};

/// Validates Hermiticity and positivity, computes the trace-preserving flag.
ChannelChoi make_choi(int d_in, int d_out, const Matrix& j);

/// Choi data of a unitary gate: the channel matrix J = d |psi_U><psi_U| and
/// the pure Choi state |psi_U> = (1/sqrt d) sum_a |a> (x) U|a>, which is
/// maximally entangled.
struct GateChoi {
  ChannelChoi channel;
  PureState state;
};

/// Requires U unitary within 1e-9.
GateChoi choi_of_unitary(const Operator& u);

/// Choi matrix of the identity channel on dimension d.
ChannelChoi choi_identity(int d);

/// Choi matrix of the depolarizing channel rho -> (1-p) rho + p I/d.
ChannelChoi choi_depolarizing(int d, double p);

/// Channel action reconstructed from the Choi matrix:
/// E(rho) = Tr_in[(rho^T (x) I) J].
Operator apply_choi(const ChannelChoi& c, const Operator& rho);

/// Overlap of normalized Choi states, Tr[(J_E/Tr J_E)(J_U/Tr J_U)]. Equals
/// one exactly when the channel implements the gate.
double entanglement_gate_fidelity(const ChannelChoi& e, const Operator& u);

/// One prepare-and-measure test: send `input` through the channel with
/// probability p, then measure the two-outcome effect.
struct PMTest {
  double p;
  Operator input;
  Operator effect;
};

/// Prepare-and-measure verification plan. Probabilities sum to one, inputs
/// are pure density operators, effects lie in [0, 1].
struct PMStrategy {
  int d_in = 0;
  int d_out = 0;
  std::vector<PMTest> tests;

  /// Aggregate operator Xi = sum p_l input_l^T (x) effect_l; the pass
  /// probability of a channel is Tr[Xi J(E)].
  Operator xi() const;
};

/// Converts a one-way strategy (Alice effects summing to the identity) into
/// a prepare-and-measure plan: each Alice effect is split into rank-one
/// pieces mu |v><v|, giving a test with p = mu/d and input (|v><v|)^T.
/// Throws std::invalid_argument when the strategy carries no one-way
/// decomposition or the Alice side is not a measurement.
PMStrategy convert_one_way_to_pm(const strategies::Strategy& s);

/// Plan for verifying the gate U: conjugates the Bob side of a strategy for
/// the identity-gate Choi state by U, converts to prepare-and-measure form,
/// and checks that the gate itself passes every test with certainty.
PMStrategy pm_plan_for_gate(const strategies::Strategy& s, const Operator& u);

/// Pass probability of a channel under a plan, computed both as
/// sum p_l Tr[E(input_l) effect_l] and as Tr[Xi J(E)]; the two routes must
/// agree within 1e-9 or a NumericalError is thrown.
double pm_pass_prob(const PMStrategy& plan, const ChannelChoi& e);

}  // namespace qv::qpv
