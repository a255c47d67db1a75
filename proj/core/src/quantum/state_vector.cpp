#include "anonq/quantum/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace anonq {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("qubit count must be in [1, 12]");
}

void check_qubit_index(const StateVector& s, int q) {
  if (q < 1 || q > s.num_qubits)
    throw std::invalid_argument("qubit index out of range");
}

}  // namespace

StateVector::StateVector(int n) {
  check_qubit_count(n);
  num_qubits = n;
  amp.assign(std::size_t{1} << n, cplx{0.0, 0.0});
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

bool Gate2x2::is_unitary(double tol) const {
  // G^dag G == I entrywise.
  const cplx g00 = std::conj(a) * a + std::conj(c) * c;
  const cplx g01 = std::conj(a) * b + std::conj(c) * d;
  const cplx g10 = std::conj(b) * a + std::conj(d) * c;
  const cplx g11 = std::conj(b) * b + std::conj(d) * d;
  return std::abs(g00 - 1.0) < tol && std::abs(g11 - 1.0) < tol &&
         std::abs(g01) < tol && std::abs(g10) < tol;
}

namespace gates {

Gate2x2 identity() { return {1, 0, 0, 1}; }
Gate2x2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}
Gate2x2 sigma_x() { return {0, 1, 1, 0}; }
Gate2x2 sigma_z() { return {1, 0, 0, -1}; }
Gate2x2 sqrt_z() { return {1, 0, 0, cplx{0, 1}}; }
Gate2x2 phase(double theta) { return {1, 0, 0, std::polar(1.0, theta)}; }

Gate2x2 compose(const Gate2x2& s, const Gate2x2& f) {
  return {s.a * f.a + s.b * f.c, s.a * f.b + s.b * f.d,
          s.c * f.a + s.d * f.c, s.c * f.b + s.d * f.d};
}

}  // namespace gates

StateVector basis_state(int n, std::size_t bits) {
  StateVector s(n);
  if (bits >= s.dim()) throw std::invalid_argument("basis label out of range");
  s.amp[bits] = 1.0;
  return s;
}

void apply_gate_in_place(StateVector& s, int q, const Gate2x2& g) {
  check_qubit_index(s, q);
  if (!g.is_unitary()) throw std::invalid_argument("gate is not unitary");
  const std::size_t stride = std::size_t{1} << (s.num_qubits - q);
  const std::size_t dim = s.dim();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = s.amp[i];
      const cplx a1 = s.amp[i + stride];
      s.amp[i] = g.a * a0 + g.b * a1;
      s.amp[i + stride] = g.c * a0 + g.d * a1;
    }
  }
}

StateVector apply_gate(const StateVector& s, int q, const Gate2x2& g) {
  StateVector out = s;
  apply_gate_in_place(out, q, g);
  return out;
}

namespace {

double prob_of_zero(const StateVector& s, int q) {
  const std::size_t stride = std::size_t{1} << (s.num_qubits - q);
  double p0 = 0.0;
  for (std::size_t base = 0; base < s.dim(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) p0 += std::norm(s.amp[i]);
  return p0;
}

void project(StateVector& s, int q, int outcome, double p) {
  const std::size_t stride = std::size_t{1} << (s.num_qubits - q);
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t base = 0; base < s.dim(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      if (outcome == 0) {
        s.amp[i] *= scale;
        s.amp[i + stride] = 0.0;
      } else {
        s.amp[i] = 0.0;
        s.amp[i + stride] *= scale;
      }
    }
  }
}

}  // namespace

int measure_computational_in_place(StateVector& s, int q, Rng& rng) {
  check_qubit_index(s, q);
  const double p0 = prob_of_zero(s, q);
  const int outcome = rng.u01() < p0 ? 0 : 1;
  project(s, q, outcome, outcome == 0 ? p0 : 1.0 - p0);
  return outcome;
}

std::pair<int, StateVector> measure_computational(const StateVector& s, int q, Rng& rng) {
  StateVector out = s;
  const int y = measure_computational_in_place(out, q, rng);
  return {y, std::move(out)};
}

double collapse_in_place(StateVector& s, int q, int outcome) {
  check_qubit_index(s, q);
  const double p0 = prob_of_zero(s, q);
  const double p = outcome == 0 ? p0 : 1.0 - p0;
  if (p < 1e-15) return 0.0;
  project(s, q, outcome, p);
  return p;
}

int measure_theta_basis_in_place(StateVector& s, int q, double theta, Rng& rng) {
  if (theta < 0.0 || theta >= 3.14159265358979323846 + 1e-12)
    throw std::invalid_argument("theta must lie in [0, pi)");
  apply_gate_in_place(s, q, gates::phase(-theta));
  apply_gate_in_place(s, q, gates::hadamard());
  return measure_computational_in_place(s, q, rng);
}

std::pair<int, StateVector> measure_theta_basis(const StateVector& s, int q,
                                                double theta, Rng& rng) {
  StateVector out = s;
  const int y = measure_theta_basis_in_place(out, q, theta, rng);
  return {y, std::move(out)};
}

StateVector random_state(int n, Rng& rng) {
  StateVector s(n);
  for (cplx& a : s.amp) a = cplx{rng.gaussian(), rng.gaussian()};
  const double scale = 1.0 / std::sqrt(s.norm_sq());
  for (cplx& a : s.amp) a *= scale;
  return s;
}

}  // namespace anonq
