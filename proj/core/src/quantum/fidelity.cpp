#include "anonq/quantum/fidelity.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "anonq/quantum/special_states.hpp"

namespace anonq {

namespace {

cplx inner(const StateVector& a, const StateVector& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

void check_same_dim(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("state dimensions differ");
}

struct Split {
  std::vector<int> honest;     // 1-based qubit indices, ascending
  std::vector<int> malicious;  // ditto
};

Split split_qubits(int n, const std::set<int>& malicious_set) {
  for (int q : malicious_set)
    if (q < 1 || q > n) throw std::invalid_argument("malicious index out of range");
  Split sp;
  for (int q = 1; q <= n; ++q) {
    if (malicious_set.count(q))
      sp.malicious.push_back(q);
    else
      sp.honest.push_back(q);
  }
  return sp;
}

// Compact label of `idx` over the given qubit subset, first listed qubit
// becoming the most significant bit.
std::size_t compact_label(std::size_t idx, int n, const std::vector<int>& qubits) {
  std::size_t v = 0;
  for (int q : qubits) v = (v << 1) | ((idx >> (n - q)) & 1u);
  return v;
}

// State regrouped as a (honest-dim x malicious-dim) grid.
Eigen::MatrixXcd as_grid(const StateVector& s, const Split& sp) {
  const std::size_t dh = std::size_t{1} << sp.honest.size();
  const std::size_t dm = std::size_t{1} << sp.malicious.size();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dh),
                                              static_cast<Eigen::Index>(dm));
  for (std::size_t idx = 0; idx < s.dim(); ++idx) {
    const auto h = compact_label(idx, s.num_qubits, sp.honest);
    const auto m = compact_label(idx, s.num_qubits, sp.malicious);
    g(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(m)) = s.amp[idx];
  }
  return g;
}

}  // namespace

double fidelity(const StateVector& a, const StateVector& b) {
  check_same_dim(a, b);
  return std::norm(inner(a, b));
}

double trace_distance_pure(const StateVector& a, const StateVector& b) {
  const double f = fidelity(a, b);
  return std::sqrt(std::max(0.0, 1.0 - f));
}

FidelityReport fprime(const StateVector& state, const std::set<int>& malicious_set) {
  const int n = state.num_qubits;
  const Split sp = split_qubits(n, malicious_set);
  const StateVector phi0 = make_phi(n, 0);

  const Eigen::MatrixXcd psi = as_grid(state, sp);
  const Eigen::MatrixXcd ref = as_grid(phi0, sp);
  const Eigen::MatrixXcd cross = psi.transpose() * ref.conjugate();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cross,
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double nuclear = svd.singularValues().sum();

  // max_U |Tr(U M)| is attained at U = V P^dag for M = P S V^dag.
  const Eigen::MatrixXcd u_best = svd.matrixV() * svd.matrixU().adjoint();

  FidelityReport rep;
  rep.fidelity = fidelity(state, phi0);
  rep.fprime = nuclear * nuclear;
  rep.maximizing_unitary.dim = static_cast<std::size_t>(u_best.rows());
  rep.maximizing_unitary.a.resize(rep.maximizing_unitary.dim *
                                  rep.maximizing_unitary.dim);
  for (Eigen::Index r = 0; r < u_best.rows(); ++r)
    for (Eigen::Index c = 0; c < u_best.cols(); ++c)
      rep.maximizing_unitary.at(static_cast<std::size_t>(r),
                                static_cast<std::size_t>(c)) = u_best(r, c);
  return rep;
}

DecompositionResult decompose_honest(const StateVector& state,
                                     const std::set<int>& malicious_set) {
  const int n = state.num_qubits;
  const Split sp = split_qubits(n, malicious_set);
  const int k = static_cast<int>(sp.honest.size());
  if (k < 1) throw std::invalid_argument("at least one honest qubit required");

  const StateVector phi0k = make_phi(k, 0);
  const StateVector phi1k = make_phi(k, 1);
  const std::size_t dm = std::size_t{1} << sp.malicious.size();

  DecompositionResult res;
  res.psi0.assign(dm, cplx{0.0, 0.0});
  res.psi1.assign(dm, cplx{0.0, 0.0});
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    const auto h = compact_label(idx, n, sp.honest);
    const auto m = compact_label(idx, n, sp.malicious);
    res.psi0[m] += std::conj(phi0k.amp[h]) * state.amp[idx];
    res.psi1[m] += std::conj(phi1k.amp[h]) * state.amp[idx];
  }
  double w = 0.0;
  for (std::size_t m = 0; m < dm; ++m)
    w += std::norm(res.psi0[m]) + std::norm(res.psi1[m]);
  res.chi_norm_sq = std::max(0.0, state.norm_sq() - w);
  return res;
}

void sender_transform_in_place(StateVector& s, int i) {
  // sigma_x * sigma_z == [[0, -1], [1, 0]].
  apply_gate_in_place(s, i, Gate2x2{0, -1, 1, 0});
}

StateVector sender_transform(const StateVector& s, int i) {
  StateVector out = s;
  sender_transform_in_place(out, i);
  return out;
}

}  // namespace anonq
