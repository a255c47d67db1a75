#pragma once

#include <optional>
#include <set>
#include <vector>

#include "anonq/adversary/policy.hpp"
#include "anonq/adversary/source.hpp"
#include "anonq/net/fabric.hpp"
#include "anonq/qproto/entanglement.hpp"
#include "anonq/rng.hpp"

namespace anonq::protocol {

using net::AgentId;

struct ProtocolConfig {
  int n = 4;
  std::vector<AgentId> honest_set;  // empty = everyone honest
  int S = 5;
  double epsilon = 0.6;
  double delta = 0.05;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;  // substream of the seed, for batched runs
  adversary::SourceStrategy source = adversary::SourceStrategy::honest();
  adversary::PolicyMap policies;
  std::optional<AgentId> pinned_sender;    // else uniform over honest agents
  std::optional<AgentId> pinned_receiver;  // else uniform over the others
  bool capture_transcript = false;
  bool record_rounds = true;

  net::Roster roster() const;
  std::set<int> malicious_set() const;
  void validate() const;
};

enum class Branch { use, verify };

enum class AbortKind { none, verification_failed, sender_consistency };

struct RoundOutcome {
  int round_index = 0;  // 1-based
  Branch branch = Branch::verify;
  std::optional<AgentId> verifier;
  std::optional<bool> pass;
  AbortKind abort = AbortKind::none;
  std::optional<double> used_state_fprime;
  bool c_epsilon = false;
};

struct Protocol5Result {
  AgentId sender = 0;
  AgentId receiver = 0;
  std::vector<RoundOutcome> rounds;
  int rounds_executed = 0;
  bool aborted = false;
  AbortKind abort_kind = AbortKind::none;
  std::optional<qproto::AnonymousEntanglementResult> entanglement;
  std::optional<double> used_state_fprime;
  bool c_epsilon = false;
  net::Transcript transcript;  // populated when capture_transcript is set
};

/// The full distribution protocol: notification, then per round the source
/// deals a state and the sender's anonymous coin (heads-run rule, P[0] =
/// 2^-S) picks between consuming the state for anonymous entanglement and
/// handing it to a randomly chosen verifier. Verification failure aborts;
/// any public outcome that contradicts the sender's private input makes the
/// sender drop out (a sender_consistency abort). The c_epsilon flag marks
/// runs that consumed a state whose exactly-evaluated fprime was at most
/// sqrt(1 - epsilon^2) + 1e-9.
Protocol5Result run_protocol5(const ProtocolConfig& config);

struct Theorem1Bound {
  double value = 0.0;
  bool vacuous = false;  // value exceeds 1
};

/// 2^-S * 4n / (1 - sqrt(1 - eps^2)).
Theorem1Bound theorem1_bound(int n, int s, double epsilon);

/// Smallest S making the bound at most delta:
/// ceil(log2(4n / ((1 - sqrt(1 - eps^2)) * delta))).
int required_S(int n, double epsilon, double delta);

/// Analytic cap on the probability that round l consumes a bad state:
/// 2^-S (1 - 2^{1-S} + 2^{-2S})^{l-1} (1 - (k - fprime*k)/(4n))^{l-1}.
double per_round_cap(int n, int k, int s, double fprime, int l);

}  // namespace anonq::protocol
