#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "qv/types.hpp"

namespace qv::graphs {

/// Simple undirected graph on vertices 0..n-1. Edges are stored with
/// i < j and deduplicated; self-loops are rejected. The text file format
/// handled by qv::io uses 1-based vertex labels.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  Graph() = default;
  Graph(int n_, std::vector<std::pair<int, int>> edges_);

  std::vector<std::vector<int>> adjacency() const;
};

/// Tensor product of single-qubit Pauli letters with an exact global phase.
///
/// The operator represented is i^phase_exp * L_0 (x) ... (x) L_{n-1} with
/// letters encoded 0=I, 1=X, 2=Y, 3=Z. Multiplication tracks the phase as
/// an integer mod 4, so group arithmetic is exact.
struct PauliString {
  std::vector<uint8_t> letters;
  int phase_exp = 0;

  static PauliString identity(int n);
  /// Parses strings like "XZIZ" or "-YY"; an optional leading +, -, +i, -i
  /// sets the phase.
  static PauliString parse(const std::string& text);

  int n() const { return static_cast<int>(letters.size()); }
  bool is_identity_letters() const;
  /// True when the global phase is +1 or -1.
  bool has_real_phase() const { return phase_exp % 2 == 0; }
  /// +1.0 or -1.0. Requires has_real_phase().
  double sign() const;

  PauliString operator*(const PauliString& rhs) const;
  bool commutes_with(const PauliString& rhs) const;
  bool operator==(const PauliString& rhs) const = default;

  /// Dense 2^n x 2^n matrix, qubit 0 most significant.
  Matrix dense() const;
  std::string str() const;
};

/// Stabilizer generators of the graph state: vertex i carries X, every
/// neighbor carries Z.
std::vector<PauliString> generators(const Graph& g);

/// All 2^k products of the given commuting generators, with exact phases.
/// The first element is the identity. Preconditions: k <= 20, generators
/// pairwise commute and are independent.
std::vector<PauliString> stabilizer_group(const std::vector<PauliString>& gens);

/// (1 + sign * g) / 2 as a dense operator. Requires a real global phase;
/// sign must be +1 or -1.
Operator pauli_projector(const PauliString& g, int sign = +1);

/// Graph state: CZ applied across every edge of |+>^n.
PureState graph_state(const Graph& g);

/// Proper vertex coloring with colors 1..m, every color used.
struct Coloring {
  std::vector<int> color;

  Coloring(const Graph& g, std::vector<int> color_);
  int m() const;
};

/// First-fit coloring in vertex order. Uses at most maxdegree + 1 colors.
Coloring greedy_coloring(const Graph& g);

/// Measurement letters for one color class: X on vertices of color ell,
/// Z elsewhere. Returned as a string like "XZXZ".
std::string coloring_setting(const Graph& g, const Coloring& c, int ell);

}  // namespace qv::graphs
