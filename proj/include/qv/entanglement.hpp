#pragma once

#include <cstdint>

#include "qv/types.hpp"

namespace qv::entanglement {

/// Fidelity witness W = I/d - |psi><psi| for a maximally entangled state on
/// d x d. Every separable state has Tr(W sigma) >= 0; the target itself
/// scores 1/d - 1 < 0. The target must be bipartite with both reduced states
/// equal to I/d within 1e-9.
Operator witness_operator(const PureState& target);

/// Largest pass probability a separable state can reach under the maximally
/// entangled strategy on d x d: 2/(d+1).
double separable_pass_bound(int d);

/// Bound on the probability that a source of separable states passes a
/// fraction `frequency` of `rounds` tests when each separable state passes
/// with probability at most `separable_bound`. Requires frequency strictly
/// above the bound; otherwise no entanglement conclusion is possible and an
/// error is thrown.
double entanglement_confidence(double frequency, double separable_bound,
                               long long rounds);

/// Largest expectation <a (x) b|op|a (x) b> over pure product states, found
/// by seeding with every computational product pair plus `samples` random
/// product kets and refining each seed by alternating eigenvector ascent.
/// Deterministic given the seed. A certifying lower bound on the true
/// separable maximum, not a general solver.
double max_product_expectation(const Operator& op, int samples, uint64_t seed,
                               int iterations = 15);

}  // namespace qv::entanglement
