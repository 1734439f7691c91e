#include "qv/qpv.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qv/qmath.hpp"

namespace qv::qpv {

namespace {

void require_unitary(const Matrix& u, const char* who) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is not square");
  }
  Matrix g = u.adjoint() * u;
  if ((g - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() >
      kDerivedTol) {
    throw std::invalid_argument(std::string(who) + ": matrix is not unitary");
  }
}

void require_effect(const Operator& n, const char* who) {
  if (!n.is_hermitian(kDerivedTol)) {
    throw NumericalError(std::string(who) + ": effect is not Hermitian");
  }
  RealVector eigs = hermitian_eigenvalues(n);
  if (eigs[eigs.size() - 1] < -kDerivedTol || eigs[0] > 1.0 + kDerivedTol) {
    throw NumericalError(std::string(who) + ": effect leaves [0, 1]");
  }
}

}  // namespace

ChannelChoi make_choi(int d_in, int d_out, const Matrix& j) {
  if (d_in < 2 || d_out < 2) {
    throw std::invalid_argument("make_choi: dimensions must be at least two");
  }
  long long expect = (long long)d_in * d_out;
  if (j.rows() != expect || j.cols() != expect) {
    throw std::invalid_argument(
        "make_choi: matrix size does not match d_in * d_out");
  }
  Operator wrapped({d_in, d_out}, j);
  if (!wrapped.is_hermitian(kDerivedTol)) {
    throw NumericalError("make_choi: Choi matrix is not Hermitian");
  }
  RealVector eigs = hermitian_eigenvalues(wrapped);
  if (eigs[eigs.size() - 1] < -kDerivedTol) {
    throw NumericalError("make_choi: Choi matrix has a negative eigenvalue");
  }
  Operator reduced = partial_trace(wrapped, {0});
  bool tp = (reduced.mat - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() <=
            kDerivedTol;
  return ChannelChoi{d_in, d_out, j, tp};
}

GateChoi choi_of_unitary(const Operator& u) {
  if (u.dims.size() != 1) {
    throw std::invalid_argument(
        "choi_of_unitary: the gate must act on a single factor");
  }
  require_unitary(u.mat, "choi_of_unitary");
  int d = u.dim();
  Vector amps = Vector::Zero(d * d);
  double norm = 1.0 / std::sqrt(double(d));
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) {
      amps[a * d + i] = norm * u.mat(i, a);
    }
  }
  PureState state({d, d}, amps);
  Matrix j = double(d) * (state.amps * state.amps.adjoint());
  return GateChoi{make_choi(d, d, j), state};
}

ChannelChoi choi_identity(int d) {
  Matrix id = Matrix::Identity(d, d);
  return choi_of_unitary(Operator({d}, id)).channel;
}

ChannelChoi choi_depolarizing(int d, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("choi_depolarizing: p must lie in [0, 1]");
  }
  ChannelChoi id = choi_identity(d);
  Matrix j = (1.0 - p) * id.j +
             (p / d) * Matrix::Identity(d * d, d * d);
  return make_choi(d, d, j);
}

Operator apply_choi(const ChannelChoi& c, const Operator& rho) {
  if (rho.dim() != c.d_in) {
    throw std::invalid_argument(
        "apply_choi: state dimension does not match the channel input");
  }
  Matrix lifted = Eigen::kroneckerProduct(
                      rho.mat.transpose().eval(),
                      Matrix::Identity(c.d_out, c.d_out))
                      .eval() *
                  c.j;
  Operator joint({c.d_in, c.d_out}, lifted);
  return partial_trace(joint, {1});
}

double entanglement_gate_fidelity(const ChannelChoi& e, const Operator& u) {
  GateChoi gate = choi_of_unitary(u);
  if (e.d_in != gate.channel.d_in || e.d_out != gate.channel.d_out) {
    throw std::invalid_argument(
        "entanglement_gate_fidelity: dimensions do not match");
  }
  double tr_e = e.j.trace().real();
  if (tr_e <= kDerivedTol) {
    throw NumericalError("entanglement_gate_fidelity: Choi trace is zero");
  }
  Matrix rho_e = e.j / tr_e;
  Matrix rho_u = gate.channel.j / gate.channel.j.trace().real();
  double f = (rho_e * rho_u).trace().real();
  if (f < -kDerivedTol || f > 1.0 + kDerivedTol) {
    throw NumericalError("entanglement_gate_fidelity: overlap leaves [0, 1]");
  }
  return std::min(1.0, std::max(0.0, f));
}

Operator PMStrategy::xi() const {
  if (tests.empty()) {
    throw std::invalid_argument("PMStrategy::xi: plan has no tests");
  }
  Matrix acc = Matrix::Zero((long long)d_in * d_out, (long long)d_in * d_out);
  for (const PMTest& t : tests) {
    acc += t.p * Eigen::kroneckerProduct(t.input.mat.transpose().eval(),
                                         t.effect.mat)
                     .eval();
  }
  return Operator({d_in, d_out}, acc);
}

PMStrategy convert_one_way_to_pm(const strategies::Strategy& s) {
  if (s.one_way.empty()) {
    throw std::invalid_argument(
        "convert_one_way_to_pm: strategy has no one-way decomposition");
  }
  int da = s.one_way[0].alice.dim();
  int db = s.one_way[0].bob.dim();

  Matrix sum = Matrix::Zero(da, da);
  for (const strategies::OneWayPair& pr : s.one_way) {
    if (pr.alice.dim() != da || pr.bob.dim() != db) {
      throw std::invalid_argument(
          "convert_one_way_to_pm: inconsistent pair dimensions");
    }
    sum += pr.alice.mat;
  }
  if ((sum - Matrix::Identity(da, da)).cwiseAbs().maxCoeff() > kDerivedTol) {
    throw std::invalid_argument(
        "convert_one_way_to_pm: Alice effects do not form a measurement");
  }

  PMStrategy plan;
  plan.d_in = da;
  plan.d_out = db;
  double total = 0.0;
  for (const strategies::OneWayPair& pr : s.one_way) {
    if (!pr.alice.is_hermitian(kDerivedTol)) {
      throw NumericalError(
          "convert_one_way_to_pm: Alice effect is not Hermitian");
    }
    require_effect(pr.bob, "convert_one_way_to_pm");
    Eigen::SelfAdjointEigenSolver<Matrix> es(pr.alice.mat);
    for (int i = 0; i < da; ++i) {
      double mu = es.eigenvalues()[i];
      if (mu < -kDerivedTol) {
        throw NumericalError(
            "convert_one_way_to_pm: Alice effect has a negative eigenvalue");
      }
      if (mu <= 1e-12) {
        continue;
      }
      Vector v = es.eigenvectors().col(i);
      Matrix rho = v.conjugate() * v.transpose();
      plan.tests.push_back(
          {mu / da, Operator({da}, rho), pr.bob});
      total += mu / da;
    }
  }
  if (std::abs(total - 1.0) > kInputTol) {
    throw NumericalError(
        "convert_one_way_to_pm: test probabilities do not sum to one");
  }
  return plan;
}

PMStrategy pm_plan_for_gate(const strategies::Strategy& s, const Operator& u) {
  if (u.dims.size() != 1) {
    throw std::invalid_argument(
        "pm_plan_for_gate: the gate must act on a single factor");
  }
  require_unitary(u.mat, "pm_plan_for_gate");
  if (s.target.dims.size() != 2 || s.target.dims[1] != u.dim()) {
    throw std::invalid_argument(
        "pm_plan_for_gate: strategy target does not match the gate dimension");
  }
  strategies::Strategy rotated = strategies::conjugate_local(
      s, Matrix::Identity(s.target.dims[0], s.target.dims[0]), u.mat);
  PMStrategy plan = convert_one_way_to_pm(rotated);
  for (const PMTest& t : plan.tests) {
    double certain =
        (u.mat * t.input.mat * u.mat.adjoint() * t.effect.mat).trace().real();
    if (std::abs(certain - 1.0) > kDerivedTol) {
      throw NumericalError(
          "pm_plan_for_gate: the gate does not pass every test with "
          "certainty; the strategy must verify the gate's Choi state");
    }
  }
  return plan;
}

double pm_pass_prob(const PMStrategy& plan, const ChannelChoi& e) {
  if (plan.tests.empty()) {
    throw std::invalid_argument("pm_pass_prob: plan has no tests");
  }
  if (plan.d_in != e.d_in || plan.d_out != e.d_out) {
    throw std::invalid_argument(
        "pm_pass_prob: plan and channel dimensions differ");
  }
  double left = 0.0;
  for (const PMTest& t : plan.tests) {
    Operator out = apply_choi(e, t.input);
    left += t.p * (out.mat * t.effect.mat).trace().real();
  }
  double right = (plan.xi().mat * e.j).trace().real();
  if (std::abs(left - right) > kDerivedTol) {
    throw NumericalError(
        "pm_pass_prob: operational and Choi-form pass probabilities differ");
  }
  if (left < -kDerivedTol || left > 1.0 + kDerivedTol) {
    throw NumericalError("pm_pass_prob: pass probability leaves [0, 1]");
  }
  return std::min(1.0, std::max(0.0, left));
}

}  // namespace qv::qpv
