#include "anonq/classical/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace anonq::classical {

namespace {

void check_inputs(const Fabric& fabric, const std::vector<int>& inputs) {
  if (inputs.size() != static_cast<std::size_t>(fabric.n()) + 1)
    throw std::invalid_argument("need one input bit per agent (1-based vector)");
}

}  // namespace

ParityRun parity(Fabric& fabric, const std::vector<int>& inputs,
                 const ParityOptions& opts, Rng& rng) {
  check_inputs(fabric, inputs);
  const int n = fabric.n();

  ParityRun run;
  run.shares.assign(n + 1, std::vector<int>(n + 1, 0));

  // Share dealing: free bits go to recipients 1..n-1, the last share makes
  // the row xor to the input.
  for (AgentId i = 1; i <= n; ++i) {
    int acc = 0;
    for (AgentId j = 1; j < n; ++j) {
      run.shares[i][j] = rng.bit();
      acc ^= run.shares[i][j];
    }
    run.shares[i][n] = acc ^ (inputs[i] & 1);
    for (AgentId j = 1; j <= n; ++j) fabric.send_private(i, j, run.shares[i][j]);
  }

  std::vector<int> z(n + 1, 0);
  for (AgentId j = 1; j <= n; ++j)
    for (AgentId i = 1; i <= n; ++i) z[j] ^= run.shares[i][j];

  std::vector<std::pair<AgentId, int>> announced;
  if (opts.mode == BroadcastMode::ordered) {
    if (!opts.ordering) throw std::invalid_argument("ordered parity needs an ordering");
    announced = fabric.broadcast_ordered(*opts.ordering, z, {}, opts.skip_announcer);
  } else {
    announced = fabric.broadcast_simultaneous(z, {}, opts.skip_announcer);
  }

  run.announced.assign(n + 1, -1);
  for (auto& [a, bit] : announced) {
    run.announced[a] = bit;
    run.public_parity ^= bit;
  }

  run.result.assign(n + 1, run.public_parity);
  run.result[0] = 0;
  if (opts.skip_announcer) {
    // The withheld z completes the parity for its owner alone.
    const AgentId i = *opts.skip_announcer;
    run.result[i] = run.public_parity ^ z[i];
  }
  return run;
}

std::vector<int> logical_or(Fabric& fabric, const std::vector<int>& inputs,
                            const LogicalOrOptions& opts, Rng& rng,
                            const adversary::PolicyMap* policies) {
  check_inputs(fabric, inputs);
  if (opts.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const int n = fabric.n();

  auto orderings = net::default_orderings(n);
  const int used =
      opts.ordering_count > 0 ? std::min(opts.ordering_count, n) : n;

  bool seen_one = false;
  for (int t = 0; t < used; ++t) {
    for (int rep = 0; rep < opts.repetitions; ++rep) {
      std::vector<int> flips(n + 1, 0);
      for (AgentId i = 1; i <= n; ++i) {
        const auto* pol = adversary::policy_for(policies, i);
        if (pol && pol->flip_or_inputs) {
          flips[i] = 1;
        } else if (inputs[i] & 1) {
          flips[i] = rng.bit();
        }
      }
      ParityOptions popts;
      popts.mode = BroadcastMode::ordered;
      popts.ordering = &orderings[t];
      const ParityRun res = parity(fabric, flips, popts, rng);
      if (res.public_parity == 1) {
        seen_one = true;
        if (opts.short_circuit) return std::vector<int>(n + 1, 1);
      }
    }
  }
  return std::vector<int>(n + 1, seen_one ? 1 : 0);
}

RandomBitDistribution coin_rule(int s) {
  if (s < 1) throw std::invalid_argument("security parameter must be >= 1");
  return {std::ldexp(1.0, -s)};
}

RandomBitResult random_bit(Fabric& fabric, AgentId sender,
                           const RandomBitDistribution& d, int s, Rng& rng,
                           const adversary::PolicyMap* policies) {
  if (d.probability_of_zero < 0.0 || d.probability_of_zero > 1.0)
    throw std::invalid_argument("probability_of_zero outside [0, 1]");
  const int n = fabric.n();
  RandomBitResult res;
  res.sender_input = rng.u01() < d.probability_of_zero ? 0 : 1;
  std::vector<int> inputs(n + 1, 0);
  inputs[sender] = res.sender_input;
  const auto y = logical_or(fabric, inputs, {.repetitions = s}, rng, policies);
  res.output = y[sender];
  return res;
}

RandomAgentResult random_agent(Fabric& fabric, AgentId sender, int s, Rng& rng,
                               const adversary::PolicyMap* policies) {
  const int n = fabric.n();
  if (n == 1) return {1, false};
  int bits = 0;
  while ((1 << bits) < n) ++bits;

  for (int attempt = 0; attempt < 64; ++attempt) {
    int value = 0;
    for (int b = 0; b < bits; ++b) {
      const RandomBitResult rb =
          random_bit(fabric, sender, RandomBitDistribution{0.5}, s, rng, policies);
      if (rb.output != rb.sender_input) return {0, true};
      value = (value << 1) | rb.output;
    }
    if (value < n) return {value + 1, false};
  }
  throw std::runtime_error(
      "random_agent: 64 rejected draws in a row (improbable-failure)");
}

std::vector<int> notification(Fabric& fabric, AgentId sender, AgentId receiver,
                              int s, Rng& rng) {
  const int n = fabric.n();
  if (sender < 1 || sender > n || receiver < 1 || receiver > n)
    throw std::invalid_argument("unknown agent");
  if (s < 1) throw std::invalid_argument("security parameter must be >= 1");

  const Ordering order = net::identity_ordering(n);
  std::vector<int> y(n + 1, 0);
  for (AgentId i = 1; i <= n; ++i) {
    for (int round = 0; round < s; ++round) {
      std::vector<int> flips(n + 1, 0);
      if (i == receiver && sender != i) flips[sender] = rng.bit();
      ParityOptions popts;
      popts.mode = BroadcastMode::ordered;
      popts.ordering = &order;
      popts.skip_announcer = i;
      const ParityRun res = parity(fabric, flips, popts, rng);
      if (res.result[i] == 1) y[i] = 1;
    }
  }
  return y;
}

}  // namespace anonq::classical
