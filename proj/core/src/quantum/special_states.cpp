#include "anonq/quantum/special_states.hpp"

#include <bit>
#include <cmath>

namespace anonq {

StateVector make_ghz(int n) {
  StateVector s(n);
  const double v = 1.0 / std::sqrt(2.0);
  s.amp.front() = v;
  s.amp.back() = v;
  return s;
}

int hamming_class(std::size_t y, int /*n*/) {
  return std::popcount(y) % 4;
}

StateVector make_phi(int n, int class_bit) {
  StateVector s(n);
  const double v = 1.0 / std::sqrt(std::ldexp(1.0, n - 1));
  const int plus = class_bit == 0 ? 0 : 1;
  const int minus = class_bit == 0 ? 2 : 3;
  for (std::size_t y = 0; y < s.dim(); ++y) {
    const int c = std::popcount(y) % 4;
    if (c == plus)
      s.amp[y] = v;
    else if (c == minus)
      s.amp[y] = -v;
  }
  return s;
}

Gate2x2 ghz_to_phi_gate() {
  return gates::compose(gates::sqrt_z(), gates::hadamard());
}

Gate2x2 phi_to_ghz_gate() {
  // (sqrt_z * H)^dag = H * diag(1, -i)
  return gates::compose(gates::hadamard(), Gate2x2{1, 0, 0, cplx{0, -1}});
}

StateVector to_phi_convention(const StateVector& ghz_form) {
  StateVector out = ghz_form;
  const Gate2x2 g = ghz_to_phi_gate();
  for (int q = 1; q <= out.num_qubits; ++q) apply_gate_in_place(out, q, g);
  return out;
}

StateVector to_ghz_convention(const StateVector& phi_form) {
  StateVector out = phi_form;
  const Gate2x2 g = phi_to_ghz_gate();
  for (int q = 1; q <= out.num_qubits; ++q) apply_gate_in_place(out, q, g);
  return out;
}

StateVector make_epr() { return make_ghz(2); }

}  // namespace anonq
