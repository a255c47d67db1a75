#pragma once

#include "anonq/quantum/state_vector.hpp"

namespace anonq {

/// (|0...0> + |1...1>)/sqrt(2).
StateVector make_ghz(int n);

/// Hamming weight of the basis label, mod 4.
int hamming_class(std::size_t y, int n);

/// The reference entangled states grouped by Hamming weight of basis labels:
/// class_bit 0 puts +1/sqrt(2^{n-1}) on weight = 0 (mod 4) strings and
/// -1/sqrt(2^{n-1}) on weight = 2 (mod 4); class_bit 1 does the same for
/// weights 1 and 3 (mod 4). Both are GHZ-equivalent up to local unitaries.
StateVector make_phi(int n, int class_bit);

/// The per-qubit local unitary relating the two conventions:
/// applying sqrt_z * hadamard (H first, then sqrt(Z) = diag(1,i)) to every
/// qubit of the GHZ state yields make_phi(n, 0) exactly, global phase +1.
Gate2x2 ghz_to_phi_gate();
Gate2x2 phi_to_ghz_gate();

/// Applies the convention map to every qubit.
StateVector to_phi_convention(const StateVector& ghz_form);
StateVector to_ghz_convention(const StateVector& phi_form);

/// (|00> + |11>)/sqrt(2), the target of anonymous entanglement.
StateVector make_epr();

}  // namespace anonq
