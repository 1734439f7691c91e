#include "qv/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace qv::states {

SchmidtVector::SchmidtVector(std::vector<double> raw) : coeffs(std::move(raw)) {
  if (coeffs.empty()) throw std::invalid_argument("Schmidt vector is empty");
  double sq = 0;
  for (double c : coeffs) {
    if (!(c > 0)) throw std::invalid_argument("Schmidt coefficients must be positive");
    sq += c * c;
  }
  if (std::abs(sq - 1.0) > 1e-9)
    throw std::invalid_argument("Schmidt coefficients are not normalized");
  std::sort(coeffs.begin(), coeffs.end(), std::greater<double>());
  double norm = std::sqrt(sq);
  for (double& c : coeffs) c /= norm;
}

PureState bell_state() { return mes_qudit(2); }

PureState mes_qudit(int d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
  int dd = total_dim({d, d});
  Vector v = Vector::Zero(dd);
  for (int a = 0; a < d; ++a) v(a * d + a) = 1.0 / std::sqrt(double(d));
  return PureState({d, d}, std::move(v));
}

PureState ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("GHZ needs at least 2 qubits");
  std::vector<int> dims(n, 2);
  int d = total_dim(dims);
  Vector v = Vector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return PureState(std::move(dims), std::move(v));
}

PureState w_state(int n) { return dicke_state(n, 1); }

PureState dicke_state(int n, int k) {
  if (n < 2) throw std::invalid_argument("Dicke state needs at least 2 qubits");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("excitation count must satisfy 1 <= k <= n-1");
  std::vector<int> dims(n, 2);
  int d = total_dim(dims);
  Vector v = Vector::Zero(d);
  int count = 0;
  for (int b = 0; b < d; ++b) {
    if (std::popcount(static_cast<unsigned>(b)) == k) {
      v(b) = 1.0;
      ++count;
    }
  }
  v /= std::sqrt(double(count));
  return PureState(std::move(dims), std::move(v));
}

PureState schmidt_state(const SchmidtVector& lambda) {
  int d = lambda.d();
  int dd = total_dim({d, d});
  Vector v = Vector::Zero(dd);
  for (int a = 0; a < d; ++a) v(a * d + a) = lambda.coeffs[a];
  return PureState({d, d}, std::move(v));
}

PureState two_qubit_state(double theta) {
  constexpr double quarter_pi = 0.78539816339744830961;
  if (!(theta > 0.0) || theta > quarter_pi + 1e-12)
    throw std::invalid_argument("theta must lie in (0, pi/4]");
  theta = std::min(theta, quarter_pi);
  return schmidt_state(SchmidtVector({std::cos(theta), std::sin(theta)}));
}

}  // namespace qv::states
