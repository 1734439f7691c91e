#include "qv/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace qv::graphs {

Graph::Graph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges_) {
    if (a == b) throw std::invalid_argument("self-loops are not allowed");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge endpoint out of range");
    seen.insert({std::min(a, b), std::max(a, b)});
  }
  edges.assign(seen.begin(), seen.end());
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

PauliString PauliString::identity(int n) {
  PauliString p;
  p.letters.assign(n, 0);
  return p;
}

PauliString PauliString::parse(const std::string& text) {
  PauliString p;
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') p.phase_exp = 2;
    ++i;
    if (i < text.size() && text[i] == 'i') {
      p.phase_exp += 1;
      ++i;
    }
  }
  for (; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': p.letters.push_back(0); break;
      case 'X': p.letters.push_back(1); break;
      case 'Y': p.letters.push_back(2); break;
      case 'Z': p.letters.push_back(3); break;
      default: throw std::invalid_argument("unknown Pauli letter in string");
    }
  }
  if (p.letters.empty()) throw std::invalid_argument("empty Pauli string");
  p.phase_exp %= 4;
  return p;
}

bool PauliString::is_identity_letters() const {
  return std::all_of(letters.begin(), letters.end(),
                     [](uint8_t l) { return l == 0; });
}

double PauliString::sign() const {
  if (!has_real_phase())
    throw std::invalid_argument("Pauli string has an imaginary global phase");
  return phase_exp % 4 == 0 ? 1.0 : -1.0;
}

namespace {

// letter_product[a][b] = {letter of a*b, phase exponent added (i^k)}.
struct LetterProduct {
  uint8_t letter;
  int phase;
};
constexpr LetterProduct kTable[4][4] = {
    {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
    {{1, 0}, {0, 0}, {3, 1}, {2, 3}},
    {{2, 0}, {3, 3}, {0, 0}, {1, 1}},
    {{3, 0}, {2, 1}, {1, 3}, {0, 0}},
};

}  // namespace

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n() != rhs.n())
    throw std::invalid_argument("Pauli string lengths differ");
  PauliString out;
  out.letters.resize(letters.size());
  int ph = phase_exp + rhs.phase_exp;
  for (size_t i = 0; i < letters.size(); ++i) {
    LetterProduct lp = kTable[letters[i]][rhs.letters[i]];
    out.letters[i] = lp.letter;
    ph += lp.phase;
  }
  out.phase_exp = ph % 4;
  return out;
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n() != rhs.n())
    throw std::invalid_argument("Pauli string lengths differ");
  int anti = 0;
  for (size_t i = 0; i < letters.size(); ++i) {
    uint8_t a = letters[i], b = rhs.letters[i];
    if (a != 0 && b != 0 && a != b) ++anti;
  }
  return anti % 2 == 0;
}

Matrix PauliString::dense() const {
  const int nq = n();
  const int d = total_dim(std::vector<int>(nq, 2));
  static const Complex iu(0, 1);
  Complex global = std::pow(iu, phase_exp % 4);
  Matrix out = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    int row = col;
    Complex ph = global;
    for (int q = 0; q < nq; ++q) {
      int bit = (col >> (nq - 1 - q)) & 1;
      switch (letters[q]) {
        case 0: break;
        case 1: row ^= 1 << (nq - 1 - q); break;
        case 2:
          row ^= 1 << (nq - 1 - q);
          ph *= bit ? -iu : iu;
          break;
        case 3:
          if (bit) ph = -ph;
          break;
      }
    }
    out(row, col) = ph;
  }
  return out;
}

std::string PauliString::str() const {
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  static const char kLetter[4] = {'I', 'X', 'Y', 'Z'};
  std::string s = kPhase[((phase_exp % 4) + 4) % 4];
  for (uint8_t l : letters) s += kLetter[l];
  return s;
}

std::vector<PauliString> generators(const Graph& g) {
  auto adj = g.adjacency();
  std::vector<PauliString> out;
  out.reserve(g.n);
  for (int v = 0; v < g.n; ++v) {
    PauliString p = PauliString::identity(g.n);
    p.letters[v] = 1;
    for (int u : adj[v]) p.letters[u] = 3;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PauliString> stabilizer_group(const std::vector<PauliString>& gens) {
  const int k = static_cast<int>(gens.size());
  if (k == 0) throw std::invalid_argument("no generators given");
  if (k > 20) throw std::invalid_argument("more than 20 generators");
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (!gens[a].commutes_with(gens[b]))
        throw std::invalid_argument("generators do not commute");

  std::vector<PauliString> out;
  out.reserve(size_t(1) << k);
  out.push_back(PauliString::identity(gens[0].n()));
  // Subset at index m extends the subset at m with its lowest bit cleared.
  for (size_t m = 1; m < (size_t(1) << k); ++m) {
    int low = std::countr_zero(m);
    PauliString p = out[m ^ (size_t(1) << low)] * gens[low];
    if (p.is_identity_letters())
      throw std::invalid_argument("generators are not independent");
    out.push_back(std::move(p));
  }
  return out;
}

Operator pauli_projector(const PauliString& g, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("sign must be +1 or -1");
  if (!g.has_real_phase())
    throw std::invalid_argument("projector needs a real global phase");
  const int d = total_dim(std::vector<int>(g.n(), 2));
  Matrix m = (Matrix::Identity(d, d) + double(sign) * g.dense()) / 2.0;
  return Operator(std::vector<int>(g.n(), 2), std::move(m));
}

PureState graph_state(const Graph& g) {
  const int nq = g.n;
  const int d = total_dim(std::vector<int>(nq, 2));
  Vector v = Vector::Constant(d, 1.0 / std::sqrt(double(d)));
  for (auto [a, b] : g.edges) {
    int ma = 1 << (nq - 1 - a), mb = 1 << (nq - 1 - b);
    for (int i = 0; i < d; ++i)
      if ((i & ma) && (i & mb)) v(i) = -v(i);
  }
  return PureState(std::vector<int>(nq, 2), std::move(v));
}

Coloring::Coloring(const Graph& g, std::vector<int> color_)
    : color(std::move(color_)) {
  if (static_cast<int>(color.size()) != g.n)
    throw std::invalid_argument("coloring size does not match vertex count");
  int mx = 0;
  for (int c : color) {
    if (c < 1) throw std::invalid_argument("colors are 1-based");
    mx = std::max(mx, c);
  }
  std::vector<bool> used(mx + 1, false);
  for (int c : color) used[c] = true;
  for (int c = 1; c <= mx; ++c)
    if (!used[c]) throw std::invalid_argument("color classes must be contiguous");
  for (auto [a, b] : g.edges)
    if (color[a] == color[b])
      throw std::invalid_argument("coloring is not proper");
}

int Coloring::m() const {
  return *std::max_element(color.begin(), color.end());
}

Coloring greedy_coloring(const Graph& g) {
  auto adj = g.adjacency();
  std::vector<int> color(g.n, 0);
  for (int v = 0; v < g.n; ++v) {
    std::set<int> used;
    for (int u : adj[v])
      if (color[u] > 0) used.insert(color[u]);
    int c = 1;
    while (used.count(c)) ++c;
    color[v] = c;
  }
  return Coloring(g, std::move(color));
}

std::string coloring_setting(const Graph& g, const Coloring& c, int ell) {
  if (ell < 1 || ell > c.m()) throw std::invalid_argument("color out of range");
  std::string s(g.n, 'Z');
  for (int v = 0; v < g.n; ++v)
    if (c.color[v] == ell) s[v] = 'X';
  return s;
}

}  // namespace qv::graphs
