#pragma once

#include <utility>
#include <vector>

#include "anonq/net/fabric.hpp"
#include "anonq/quantum/state_vector.hpp"
#include "anonq/rng.hpp"

namespace anonq::qproto {

using net::AgentId;

struct AnonymousEntanglementResult {
  std::vector<std::pair<AgentId, int>> broadcasts;  // intermediates, index order
  int sender_bit = 0;    // b
  int receiver_bit = 0;  // b' (camouflage only; never steers a correction)
  StateVector pair_state;  // two qubits, sender first
};

/// Carves an EPR pair out of a shared GHZ-convention state: every agent
/// except sender and receiver applies H, measures, and broadcasts; the
/// sender phase-flips on its random bit b; the receiver phase-flips when
/// the parity of all other broadcast bits (the intermediates' outcomes and
/// b together) is odd. On perfect GHZ input the corrections cancel on every
/// branch and the pair is exact.
AnonymousEntanglementResult anonymous_entanglement(const StateVector& state,
                                                   AgentId sender, AgentId receiver,
                                                   Rng& rng,
                                                   net::Fabric* fabric = nullptr);

struct AeBranch {
  double probability = 0.0;
  StateVector pair_state;
};

/// Deterministic single branch: intermediate outcomes are forced (given in
/// ascending agent order) along with the sender bit. Zero-probability
/// branches return probability 0 and an empty state.
AeBranch anonymous_entanglement_branch(const StateVector& state, AgentId sender,
                                       AgentId receiver,
                                       const std::vector<int>& intermediate_outcomes,
                                       int sender_bit);

double epr_fidelity(const StateVector& pair_state);

struct TeleportResult {
  StateVector output;  // single qubit
  int z = 0, x = 0;    // classical corrections
};

/// Standard teleportation over a two-qubit resource pair (first half held
/// by the sender). The classical corrections travel out-of-band.
TeleportResult teleport(const StateVector& message, const StateVector& pair,
                        Rng& rng);

struct TeleportBranch {
  double probability = 0.0;
  StateVector output;
};

TeleportBranch teleport_branch(const StateVector& message, const StateVector& pair,
                               int z, int x);

}  // namespace anonq::qproto
