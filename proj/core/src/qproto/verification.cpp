#include "anonq/qproto/verification.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "anonq/harness/stats.hpp"
#include "anonq/quantum/special_states.hpp"

namespace anonq::qproto {

namespace {
constexpr double kPi = std::numbers::pi;
}

AngleAssignment sample_angles(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("need at least two agents");
  AngleAssignment a;
  a.theta.assign(n + 1, 0.0);
  double sum = 0.0;
  for (int j = 1; j < n; ++j) {
    a.theta[j] = rng.u01() * kPi;
    sum += a.theta[j];
  }
  const int multiple = static_cast<int>(std::ceil(sum / kPi - 1e-12));
  a.theta[n] = multiple * kPi - sum;
  if (a.theta[n] < 0.0) a.theta[n] = 0.0;
  a.total = sum + a.theta[n];
  a.multiple_parity = multiple & 1;
  return a;
}

VerificationResult verification_round(const StateVector& state, AgentId verifier,
                                      const net::Roster& roster,
                                      const adversary::PolicyMap& policies,
                                      Rng& rng, net::Fabric* fabric) {
  const int n = state.num_qubits;
  if (roster.n != n) throw std::invalid_argument("roster does not match state size");
  if (verifier < 1 || verifier > n) throw std::invalid_argument("unknown verifier");

  VerificationResult res;
  res.verifier = verifier;
  res.angles = sample_angles(n, rng);

  if (fabric) {
    fabric->set_phase("verification.angles");
    for (AgentId j = 1; j <= n; ++j)
      if (j != verifier) fabric->send_private(verifier, j, 0);
  }

  // Measurements happen in the GHZ frame; the angle-parity pass condition
  // is exact there for the ideal state.
  StateVector work = to_ghz_convention(state);
  res.outcomes.assign(n + 1, 0);
  int parity = 0;
  for (AgentId j = 1; j <= n; ++j) {
    int y = measure_theta_basis_in_place(work, j, res.angles.theta[j], rng);
    const auto* pol = adversary::policy_for(&policies, j);
    if (pol && pol->lie_in_verification) y ^= 1;
    res.outcomes[j] = y;
    parity ^= y;
    if (fabric) {
      fabric->set_phase("verification.report");
      if (j != verifier) fabric->send_private(j, verifier, y);
    }
  }

  res.pass = parity == res.angles.multiple_parity;
  const auto* vpol = adversary::policy_for(&policies, verifier);
  if (vpol && vpol->verifier_always_accepts) res.pass = true;
  return res;
}

PassEstimate estimate_pass_probability(const StateVector& state, int trials,
                                       Rng& rng) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int n = state.num_qubits;
  const StateVector ghz_frame = to_ghz_convention(state);

  PassEstimate est;
  est.trials = trials;
  StateVector work;
  for (int t = 0; t < trials; ++t) {
    const AngleAssignment a = sample_angles(n, rng);
    work = ghz_frame;
    int parity = 0;
    for (int j = 1; j <= n; ++j)
      parity ^= measure_theta_basis_in_place(work, j, a.theta[j], rng);
    if (parity == a.multiple_parity) ++est.passes;
  }
  est.estimate = static_cast<double>(est.passes) / trials;
  const auto [lo, hi] = harness::wilson_interval(est.passes, trials);
  est.ci_low = lo;
  est.ci_high = hi;
  return est;
}

}  // namespace anonq::qproto
