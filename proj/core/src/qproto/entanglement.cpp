#include "anonq/qproto/entanglement.hpp"

#include <cmath>
#include <stdexcept>

#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"

namespace anonq::qproto {

namespace {

std::vector<AgentId> intermediates_of(int n, AgentId sender, AgentId receiver) {
  if (sender < 1 || sender > n || receiver < 1 || receiver > n)
    throw std::invalid_argument("unknown agent");
  if (sender == receiver)
    throw std::invalid_argument("sender and receiver must differ");
  std::vector<AgentId> mids;
  for (AgentId j = 1; j <= n; ++j)
    if (j != sender && j != receiver) mids.push_back(j);
  return mids;
}

// Collapsed intermediates pinned at their outcomes leave a pure two-qubit
// state on (sender, receiver); slice it out, sender as the first qubit.
StateVector extract_pair(const StateVector& s, AgentId sender, AgentId receiver,
                         const std::vector<AgentId>& mids,
                         const std::vector<int>& outcomes) {
  const int n = s.num_qubits;
  std::size_t base = 0;
  for (std::size_t k = 0; k < mids.size(); ++k)
    if (outcomes[k]) base |= std::size_t{1} << (n - mids[k]);

  StateVector pair(2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      std::size_t idx = base;
      if (a) idx |= std::size_t{1} << (n - sender);
      if (b) idx |= std::size_t{1} << (n - receiver);
      pair.amp[(a << 1) | b] = s.amp[idx];
    }
  }
  const double nrm = std::sqrt(pair.norm_sq());
  if (nrm > 1e-15)
    for (cplx& c : pair.amp) c /= nrm;
  return pair;
}

void apply_corrections(StateVector& work, AgentId sender, AgentId receiver,
                       int parity_of_mids, int b) {
  if (b) apply_gate_in_place(work, sender, gates::sigma_z());
  // "Everyone else" as seen by the receiver covers the sender's b too;
  // without it the phases fail to cancel on half the branches.
  if ((parity_of_mids ^ b) & 1)
    apply_gate_in_place(work, receiver, gates::sigma_z());
}

}  // namespace

AnonymousEntanglementResult anonymous_entanglement(const StateVector& state,
                                                   AgentId sender, AgentId receiver,
                                                   Rng& rng, net::Fabric* fabric) {
  const int n = state.num_qubits;
  const auto mids = intermediates_of(n, sender, receiver);

  StateVector work = state;
  AnonymousEntanglementResult res;
  if (fabric) fabric->set_phase("anonymous_entanglement");

  int parity = 0;
  std::vector<int> outcomes;
  for (AgentId j : mids) {
    apply_gate_in_place(work, j, gates::hadamard());
    const int m = measure_computational_in_place(work, j, rng);
    outcomes.push_back(m);
    parity ^= m;
    res.broadcasts.emplace_back(j, m);
    if (fabric) fabric->send_private(j, net::kBroadcast, m);
  }

  res.sender_bit = rng.bit();
  if (fabric) fabric->send_private(sender, net::kBroadcast, res.sender_bit);
  res.receiver_bit = rng.bit();
  if (fabric) fabric->send_private(receiver, net::kBroadcast, res.receiver_bit);

  apply_corrections(work, sender, receiver, parity, res.sender_bit);
  res.pair_state = extract_pair(work, sender, receiver, mids, outcomes);
  return res;
}

AeBranch anonymous_entanglement_branch(const StateVector& state, AgentId sender,
                                       AgentId receiver,
                                       const std::vector<int>& intermediate_outcomes,
                                       int sender_bit) {
  const int n = state.num_qubits;
  const auto mids = intermediates_of(n, sender, receiver);
  if (intermediate_outcomes.size() != mids.size())
    throw std::invalid_argument("one forced outcome per intermediate required");

  AeBranch br;
  br.probability = 1.0;
  StateVector work = state;
  int parity = 0;
  for (std::size_t k = 0; k < mids.size(); ++k) {
    apply_gate_in_place(work, mids[k], gates::hadamard());
    const double p = collapse_in_place(work, mids[k], intermediate_outcomes[k]);
    br.probability *= p;
    if (br.probability == 0.0) return br;
    parity ^= intermediate_outcomes[k];
  }
  apply_corrections(work, sender, receiver, parity, sender_bit);
  br.pair_state = extract_pair(work, sender, receiver, mids, intermediate_outcomes);
  return br;
}

double epr_fidelity(const StateVector& pair_state) {
  return fidelity(pair_state, make_epr());
}

namespace {

StateVector compose_three(const StateVector& message, const StateVector& pair) {
  if (message.num_qubits != 1 || pair.num_qubits != 2)
    throw std::invalid_argument("teleport expects a 1-qubit message and 2-qubit pair");
  StateVector s(3);
  for (int m = 0; m < 2; ++m)
    for (int ab = 0; ab < 4; ++ab)
      s.amp[(m << 2) | ab] = message.amp[m] * pair.amp[ab];
  return s;
}

void bell_circuit(StateVector& s) {
  // CNOT qubit 1 -> qubit 2, then H on qubit 1.
  for (std::size_t idx = 0; idx < s.dim(); ++idx)
    if (((idx >> 2) & 1u) && !((idx >> 1) & 1u))
      std::swap(s.amp[idx], s.amp[idx | 0b010u]);
  apply_gate_in_place(s, 1, gates::hadamard());
}

StateVector finish(StateVector& s, int z, int x) {
  if (x) apply_gate_in_place(s, 3, gates::sigma_x());
  if (z) apply_gate_in_place(s, 3, gates::sigma_z());
  StateVector out(1);
  const std::size_t base = (static_cast<std::size_t>(z) << 2) |
                           (static_cast<std::size_t>(x) << 1);
  out.amp[0] = s.amp[base];
  out.amp[1] = s.amp[base | 1];
  const double nrm = std::sqrt(out.norm_sq());
  if (nrm > 1e-15)
    for (cplx& c : out.amp) c /= nrm;
  return out;
}

}  // namespace

TeleportResult teleport(const StateVector& message, const StateVector& pair,
                        Rng& rng) {
  StateVector s = compose_three(message, pair);
  bell_circuit(s);
  TeleportResult res;
  res.z = measure_computational_in_place(s, 1, rng);
  res.x = measure_computational_in_place(s, 2, rng);
  res.output = finish(s, res.z, res.x);
  return res;
}

TeleportBranch teleport_branch(const StateVector& message, const StateVector& pair,
                               int z, int x) {
  StateVector s = compose_three(message, pair);
  bell_circuit(s);
  TeleportBranch br;
  br.probability = collapse_in_place(s, 1, z);
  if (br.probability == 0.0) return br;
  const double p2 = collapse_in_place(s, 2, x);
  br.probability *= p2;
  if (br.probability == 0.0) return br;
  br.output = finish(s, z, x);
  return br;
}

}  // namespace anonq::qproto
