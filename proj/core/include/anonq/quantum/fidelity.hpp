#pragma once

#include <set>
#include <vector>

#include "anonq/quantum/state_vector.hpp"

namespace anonq {

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// Pure-state trace distance sqrt(1 - F).
double trace_distance_pure(const StateVector& a, const StateVector& b);

/// Small dense complex matrix, row-major.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<cplx> a;
  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

struct FidelityReport {
  double fidelity = 0.0;   // |<Phi0|Psi>|^2, no adversarial freedom
  double fprime = 0.0;     // max over malicious-side unitaries
  DenseMatrix maximizing_unitary;  // on the malicious subsystem
};

/// Fidelity with make_phi(n, 0) maximized over unitaries on the qubits in
/// malicious_set. Computed exactly: with the state written over
/// (honest label h, malicious label m), form M_{m,m'} = sum_h
/// Psi_{h,m} conj(Phi0_{h,m'}); the maximum overlap over unitaries U is the
/// nuclear norm of M (attained at U recovered from the SVD), so
/// fprime = (sum of singular values)^2. An empty malicious set degenerates
/// to the plain fidelity.
FidelityReport fprime(const StateVector& state, const std::set<int>& malicious_set);

struct DecompositionResult {
  std::vector<cplx> psi0;  // malicious-subsystem component along Phi0^k
  std::vector<cplx> psi1;  // along Phi1^k
  double chi_norm_sq = 0.0;
};

/// Projects the honest subsystem onto make_phi(k,0) and make_phi(k,1);
/// chi_norm_sq is the squared norm of everything outside those two sectors.
DecompositionResult decompose_honest(const StateVector& state,
                                     const std::set<int>& malicious_set);

/// The sender's mark: sigma_z then sigma_x on qubit i (the composite
/// sigma_x sigma_z). Maps make_phi(n,0) to make_phi(n,1) for every i, and
/// make_phi(n,1) to -make_phi(n,0).
void sender_transform_in_place(StateVector& s, int i);
[[nodiscard]] StateVector sender_transform(const StateVector& s, int i);

}  // namespace anonq
