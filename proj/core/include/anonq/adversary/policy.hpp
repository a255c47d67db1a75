#pragma once

#include <map>
#include <utility>
#include <vector>

#include "anonq/net/fabric.hpp"
#include "anonq/quantum/state_vector.hpp"

namespace anonq::adversary {

/// What a malicious agent does at each protocol hook. Policies act only on
/// the agent's own qubits and announcements.
struct MaliciousAgentPolicy {
  /// Force the flip bit to 1 in every OR repetition, regardless of input.
  bool flip_or_inputs = false;
  /// Report the complement of the measured outcome to the verifier.
  bool lie_in_verification = false;
  /// As verifier, declare the test passed no matter the outcomes.
  bool verifier_always_accepts = false;
  /// Gates applied to the agent's own qubit before anonymous entanglement,
  /// as (qubit, gate) pairs; qubit must equal the agent's index.
  std::vector<std::pair<int, Gate2x2>> pre_ae_gates;
};

using PolicyMap = std::map<net::AgentId, MaliciousAgentPolicy>;

inline const MaliciousAgentPolicy* policy_for(const PolicyMap* policies,
                                              net::AgentId a) {
  if (!policies) return nullptr;
  auto it = policies->find(a);
  return it == policies->end() ? nullptr : &it->second;
}

}  // namespace anonq::adversary
