#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "anonq/rng.hpp"

namespace anonq {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 12;

/// Dense pure state on n qubits. Qubit indices are 1-based and qubit 1 is
/// the most significant bit of a basis-state label, so |q1 q2 ... qn> maps
/// to amplitude index (q1 << (n-1)) | ... | qn.
struct StateVector {
  int num_qubits = 0;
  std::vector<cplx> amp;

  StateVector() = default;
  explicit StateVector(int n);

  std::size_t dim() const { return amp.size(); }
  double norm_sq() const;

  /// Bit of basis label `idx` belonging to qubit q.
  int bit_of(std::size_t idx, int q) const {
    return static_cast<int>((idx >> (num_qubits - q)) & 1u);
  }
};

/// Single-qubit gate, row-major: [[a, b], [c, d]].
struct Gate2x2 {
  cplx a, b, c, d;
  bool is_unitary(double tol = 1e-9) const;
};

namespace gates {
Gate2x2 identity();
Gate2x2 hadamard();
Gate2x2 sigma_x();
Gate2x2 sigma_z();
Gate2x2 sqrt_z();                  // diag(1, i)
Gate2x2 phase(double theta);       // diag(1, e^{i theta})
Gate2x2 compose(const Gate2x2& second, const Gate2x2& first);  // second*first
}  // namespace gates

/// Basis state |bits> where bits is read MSB-first (qubit 1 first).
StateVector basis_state(int n, std::size_t bits);

void apply_gate_in_place(StateVector& s, int q, const Gate2x2& g);
[[nodiscard]] StateVector apply_gate(const StateVector& s, int q, const Gate2x2& g);

/// Computational-basis measurement of qubit q. Outcome follows the Born
/// rule; the returned state is collapsed and renormalized.
int measure_computational_in_place(StateVector& s, int q, Rng& rng);
[[nodiscard]] std::pair<int, StateVector> measure_computational(const StateVector& s,
                                                                int q, Rng& rng);

/// Forces qubit q to `outcome` and returns the branch probability. The state
/// is collapsed and renormalized unless the probability is (numerically)
/// zero, in which case it is left untouched and 0 is returned.
double collapse_in_place(StateVector& s, int q, int outcome);

/// Measurement in the basis {|+_theta>, |-_theta>} with
/// |+-_theta> = (|0> +- e^{i theta}|1>)/sqrt(2). Y=0 means |+_theta>.
/// Equivalent to diag(1, e^{-i theta}) then H on qubit q, then a
/// computational measurement; the measured qubit is left in that rotated
/// frame.
int measure_theta_basis_in_place(StateVector& s, int q, double theta, Rng& rng);
[[nodiscard]] std::pair<int, StateVector> measure_theta_basis(const StateVector& s,
                                                              int q, double theta,
                                                              Rng& rng);

/// Haar-random pure state (Gaussian amplitudes, normalized).
StateVector random_state(int n, Rng& rng);

}  // namespace anonq
