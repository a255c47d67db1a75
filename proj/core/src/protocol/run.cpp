#include "anonq/protocol/run.hpp"

#include <cmath>
#include <stdexcept>

#include "anonq/classical/protocols.hpp"
#include "anonq/qproto/verification.hpp"
#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"

namespace anonq::protocol {

net::Roster ProtocolConfig::roster() const {
  if (honest_set.empty()) return net::Roster::all_honest(n);
  return net::Roster::with_honest(n, honest_set);
}

std::set<int> ProtocolConfig::malicious_set() const {
  std::set<int> m;
  const net::Roster r = roster();
  for (AgentId a : r.malicious()) m.insert(a);
  return m;
}

void ProtocolConfig::validate() const {
  if (n < 2 || n > kMaxQubits)
    throw std::invalid_argument("n must lie in [2, 12]");
  if (S < 1) throw std::invalid_argument("S must be >= 1");
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("delta must lie in (0, 1)");
  const net::Roster r = roster();  // validates honest set
  if (pinned_sender) {
    if (!r.is_honest(*pinned_sender))
      throw std::invalid_argument("sender must be honest");
  }
  if (pinned_receiver) {
    if (*pinned_receiver < 1 || *pinned_receiver > n)
      throw std::invalid_argument("receiver out of range");
    if (pinned_sender && *pinned_sender == *pinned_receiver)
      throw std::invalid_argument("sender and receiver must differ");
  }
}

namespace {

AgentId draw_sender(const net::Roster& roster, Rng& rng) {
  const auto& hon = roster.honest;
  return hon[rng.uniform_int(hon.size())];
}

AgentId draw_receiver(int n, AgentId sender, Rng& rng) {
  AgentId r = static_cast<AgentId>(rng.uniform_int(n - 1)) + 1;
  if (r >= sender) ++r;
  return r;
}

}  // namespace

Protocol5Result run_protocol5(const ProtocolConfig& config) {
  config.validate();
  const net::Roster roster = config.roster();
  const std::set<int> malicious = config.malicious_set();
  Rng rng(config.seed, config.stream);
  net::Fabric fabric(roster, config.capture_transcript);

  Protocol5Result res;
  res.sender = config.pinned_sender ? *config.pinned_sender
                                    : draw_sender(roster, rng);
  res.receiver = config.pinned_receiver ? *config.pinned_receiver
                                        : draw_receiver(config.n, res.sender, rng);

  fabric.set_phase("notification");
  classical::notification(fabric, res.sender, res.receiver, config.S, rng);

  const double quality_cut =
      std::sqrt(1.0 - config.epsilon * config.epsilon) + 1e-9;

  constexpr int kRoundGuard = 10'000'000;
  for (int round = 1; round <= kRoundGuard; ++round) {
    res.rounds_executed = round;
    RoundOutcome out;
    out.round_index = round;

    StateVector shared = config.source.emit(config.n, malicious, rng);

    fabric.set_phase("random_bit");
    const classical::RandomBitResult rb = classical::random_bit(
        fabric, res.sender, classical::coin_rule(config.S), config.S, rng,
        &config.policies);
    if (rb.output != rb.sender_input) {
      out.abort = AbortKind::sender_consistency;
      res.aborted = true;
      res.abort_kind = out.abort;
      if (config.record_rounds) res.rounds.push_back(out);
      break;
    }

    if (rb.output == 0) {
      out.branch = Branch::use;
      const double fp = fprime(to_phi_convention(shared), malicious).fprime;
      out.used_state_fprime = fp;
      out.c_epsilon = fp <= quality_cut;

      // Malicious agents may rotate their own qubits first; this cannot
      // change fprime (it is maximized over exactly such unitaries).
      for (const auto& [agent, pol] : config.policies)
        for (const auto& [q, g] : pol.pre_ae_gates)
          if (q == agent) apply_gate_in_place(shared, q, g);

      fabric.set_phase("anonymous_entanglement");
      res.entanglement = qproto::anonymous_entanglement(shared, res.sender,
                                                        res.receiver, rng, &fabric);
      res.used_state_fprime = fp;
      res.c_epsilon = out.c_epsilon;
      if (config.record_rounds) res.rounds.push_back(out);
      break;
    }

    out.branch = Branch::verify;
    fabric.set_phase("random_agent");
    const classical::RandomAgentResult ra =
        classical::random_agent(fabric, res.sender, config.S, rng, &config.policies);
    if (ra.mismatch) {
      out.abort = AbortKind::sender_consistency;
      res.aborted = true;
      res.abort_kind = out.abort;
      if (config.record_rounds) res.rounds.push_back(out);
      break;
    }
    out.verifier = ra.agent;

    const qproto::VerificationResult v = qproto::verification_round(
        to_phi_convention(shared), ra.agent, roster, config.policies, rng, &fabric);
    out.pass = v.pass;
    if (!v.pass) {
      out.abort = AbortKind::verification_failed;
      res.aborted = true;
      res.abort_kind = out.abort;
      if (config.record_rounds) res.rounds.push_back(out);
      break;
    }
    if (config.record_rounds) res.rounds.push_back(out);
  }

  if (config.capture_transcript) res.transcript = fabric.transcript();
  return res;
}

Theorem1Bound theorem1_bound(int n, int s, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (n < 1 || s < 1) throw std::invalid_argument("n and S must be positive");
  const double denom = 1.0 - std::sqrt(1.0 - epsilon * epsilon);
  Theorem1Bound b;
  b.value = std::ldexp(4.0 * n, -s) / denom;
  b.vacuous = b.value > 1.0;
  return b;
}

int required_S(int n, double epsilon, double delta) {
  if (epsilon <= 0.0 || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("delta must lie in (0, 1)");
  const double denom = 1.0 - std::sqrt(1.0 - epsilon * epsilon);
  const double x = 4.0 * n / (denom * delta);
  const double lg = std::log2(x);
  const double snapped = std::round(lg);
  if (std::abs(lg - snapped) < 1e-9) return static_cast<int>(snapped);
  return static_cast<int>(std::ceil(lg));
}

double per_round_cap(int n, int k, int s, double fprime, int l) {
  if (l < 1) throw std::invalid_argument("round index must be >= 1");
  const double base1 = 1.0 - std::ldexp(1.0, 1 - s) + std::ldexp(1.0, -2 * s);
  const double base2 = 1.0 - (k - fprime * k) / (4.0 * n);
  return std::ldexp(1.0, -s) * std::pow(base1, l - 1) * std::pow(base2, l - 1);
}

}  // namespace anonq::protocol
