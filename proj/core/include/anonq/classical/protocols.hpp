#pragma once

#include <optional>
#include <vector>

#include "anonq/adversary/policy.hpp"
#include "anonq/net/fabric.hpp"
#include "anonq/rng.hpp"

namespace anonq::classical {

using net::AgentId;
using net::Fabric;
using net::Ordering;

enum class BroadcastMode { simultaneous, ordered };

struct ParityOptions {
  BroadcastMode mode = BroadcastMode::simultaneous;
  const Ordering* ordering = nullptr;           // required in ordered mode
  std::optional<AgentId> skip_announcer;        // that agent's z_j stays private
};

/// One run of the share-split parity protocol. Per-agent inputs are indexed
/// 1..n; index 0 is unused.
struct ParityRun {
  std::vector<std::vector<int>> shares;  // shares[i][j] = r_i^j, 1-based
  std::vector<int> announced;            // z_j per agent; -1 if withheld
  int public_parity = 0;                 // xor of announced z_j
  std::vector<int> result;               // what each agent takes as the outcome
};

/// Every agent splits its bit into n random shares xoring to the input,
/// deals one share to each agent (self included), and the per-agent xors
/// z_j are broadcast. With skip_announcer set, that agent withholds z_i:
/// only it learns the full parity; everyone else sees the partial xor.
ParityRun parity(Fabric& fabric, const std::vector<int>& inputs,
                 const ParityOptions& opts, Rng& rng);

struct LogicalOrOptions {
  int repetitions = 1;      // S
  bool short_circuit = true;
  int ordering_count = 0;   // 0 = all n default orderings
};

/// Anonymous OR: agents with input 1 flip a fair coin into each parity
/// round; any odd round makes the result 1. With short_circuit (default)
/// the loop stops at the first 1. Success probability with any 1-input is
/// 1 - 2^-S per S parity rounds executed.
std::vector<int> logical_or(Fabric& fabric, const std::vector<int>& inputs,
                            const LogicalOrOptions& opts, Rng& rng,
                            const adversary::PolicyMap* policies = nullptr);

struct RandomBitDistribution {
  double probability_of_zero = 0.5;
};

/// The distribution of step 3(a): all of S fair coins land heads -> 0.
RandomBitDistribution coin_rule(int s);

struct RandomBitResult {
  int output = 0;        // the public OR outcome
  int sender_input = 0;  // known to the sender only
};

/// The sender samples a bit from d and feeds it into the OR; everyone else
/// inputs 0. The sender's private input is returned for the consistency
/// check done by the caller.
RandomBitResult random_bit(Fabric& fabric, AgentId sender,
                           const RandomBitDistribution& d, int s, Rng& rng,
                           const adversary::PolicyMap* policies = nullptr);

struct RandomAgentResult {
  AgentId agent = 0;
  bool mismatch = false;  // a public outcome differed from the sender's input
};

/// ceil(log2 n) random bits assemble an index; indices >= n are rejected
/// and redrawn, so the result is exactly uniform over 1..n. Throws after 64
/// rejected attempts (broken randomness).
RandomAgentResult random_agent(Fabric& fabric, AgentId sender, int s, Rng& rng,
                               const adversary::PolicyMap* policies = nullptr);

/// The sender anonymously raises a flag only the receiver can see: for each
/// candidate i, S skip-announcer parity rounds where only the sender (and
/// only when i == r) may feed in a coin. y[i] = 1 iff some round was odd;
/// only agent i can evaluate its own y[i].
std::vector<int> notification(Fabric& fabric, AgentId sender, AgentId receiver,
                              int s, Rng& rng);

}  // namespace anonq::classical
