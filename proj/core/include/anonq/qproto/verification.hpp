#pragma once

#include <vector>

#include "anonq/adversary/policy.hpp"
#include "anonq/net/fabric.hpp"
#include "anonq/quantum/state_vector.hpp"
#include "anonq/rng.hpp"

namespace anonq::qproto {

using net::AgentId;

struct AngleAssignment {
  std::vector<double> theta;  // 1-based, theta[0] unused; each in [0, pi)
  int multiple_parity = 0;    // (sum theta_j)/pi mod 2
  double total = 0.0;
};

/// theta_1..theta_{n-1} uniform on [0, pi); theta_n tops the sum up to the
/// nearest multiple of pi from above.
AngleAssignment sample_angles(int n, Rng& rng);

struct VerificationResult {
  AngleAssignment angles;
  std::vector<int> outcomes;  // reported Y_j, 1-based
  bool pass = false;
  AgentId verifier = 0;
};

/// One round of the entanglement test, for states given in the
/// make_phi(n,0) convention: the verifier draws an angle assignment, every
/// agent measures its qubit in the theta basis (after the fixed local
/// change of convention), and the test passes when the xor of reported
/// outcomes equals the angle-sum parity. make_phi(n,0) passes with
/// probability 1; make_phi(n,1) never passes.
///
/// Malicious agents may report flipped outcomes (lie_in_verification); a
/// malicious verifier with verifier_always_accepts forces pass = true.
VerificationResult verification_round(const StateVector& state, AgentId verifier,
                                      const net::Roster& roster,
                                      const adversary::PolicyMap& policies,
                                      Rng& rng, net::Fabric* fabric = nullptr);

struct PassEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;   // 99% Wilson
  double ci_high = 0.0;
  int trials = 0;
  int passes = 0;
};

/// Monte Carlo pass probability over fresh angle draws, all agents honest.
PassEstimate estimate_pass_probability(const StateVector& state, int trials,
                                       Rng& rng);

}  // namespace anonq::qproto
