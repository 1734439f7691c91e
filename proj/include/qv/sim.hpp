#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qv/stats.hpp"
#include "qv/strategies.hpp"
#include "qv/types.hpp"

namespace qv::sim {

/// State source for a verification run. Sources are constant: every round
/// receives the same density operator, so per-test pass probabilities are
/// computed once per run.
struct Source {
  /// Density operator emitted each round. Trace within 1e-9 of one and
  /// smallest eigenvalue above -1e-9; enforced by every factory.
  Operator state;
  /// Human-readable tag recorded in transcripts ("exact", "worst:0.3", ...).
  std::string label;
  /// Set by worst_case_source when the second eigenvalue of the aggregate
  /// operator is degenerate, in which case the deviation direction was chosen
  /// by the eigensolver ordering convention rather than by the physics.
  bool degenerate_direction = false;
};

/// Source that emits the target state itself. Every test passes with
/// probability one.
Source exact_source(const PureState& target);

/// Deviation state (1-eps)|psi><psi| + eps|phi><phi| where |phi| is the
/// second eigenvector of the strategy's aggregate operator. Its pass
/// probability equals the worst-case bound 1 - eps*gap. `degenerate` (when
/// non-null) receives true if the second eigenvalue is degenerate within
/// 1e-9, meaning the tie was broken by eigensolver convention.
Operator worst_case_state(const strategies::Strategy& s, double eps,
                          bool* degenerate = nullptr);

/// Source wrapping worst_case_state; eps in [0, 1].
Source worst_case_source(const strategies::Strategy& s, double eps);

/// Source emitting (1-p)|psi><psi| + p I/D for p in [0, 1]. Its fidelity
/// with the target is 1 - p + p/D.
Source depolarized_source(const PureState& target, double p);

/// Source wrapping a caller-supplied density operator, validated against the
/// trace and positivity tolerances above.
Source custom_source(const Operator& rho);

/// One round of the protocol: which test was drawn and whether it passed.
struct RoundRecord {
  int test_index;
  bool pass;
};

/// Full record of a verification run. Reproducible: the seed plus the
/// strategy and source determine every record.
struct Transcript {
  uint64_t seed = 0;
  std::string strategy_label;
  std::string source_label;
  std::vector<RoundRecord> records;

  long long passes() const;
  /// Fraction of passed rounds.
  double frequency() const;
};

/// Runs `rounds` protocol rounds (rounds >= 1). Each round k draws a test
/// index from the strategy distribution and a pass flag with probability
/// Tr(effect * state), using the counter generator at indices 2k and 2k+1.
/// Transcripts are bit-identical for any `threads` value. Throws
/// NumericalError if any pass probability leaves [-1e-9, 1 + 1e-9].
Transcript run_protocol(const strategies::Strategy& s, const Source& src,
                        long long rounds, uint64_t seed, int threads = 1);

/// Applies the fidelity decision rule to a transcript's pass frequency.
stats::TestResult evaluate_transcript(const Transcript& tr, double epsilon,
                                      double nu);

}  // namespace qv::sim
