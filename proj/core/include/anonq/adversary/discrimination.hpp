#pragma once

#include <set>
#include <vector>

#include "anonq/net/fabric.hpp"
#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/state_vector.hpp"

namespace anonq::adversary {

/// Equiprobable pure-state candidates for a who-is-the-sender attack.
struct DiscriminationEnsemble {
  std::vector<StateVector> candidates;
  std::vector<double> priors;
  std::vector<net::AgentId> labels;  // which honest agent produced each candidate
};

/// Candidate i is the shared state after honest agent i applied the sender
/// transform; priors are uniform over the honest set.
DiscriminationEnsemble build_sender_ensemble(const StateVector& state,
                                             const std::set<int>& honest_set);

/// Optimal success probability for discriminating two equiprobable states:
/// 1/2 + ||rho1 - rho2||_1 / 4.
double helstrom_guess_prob(const StateVector& a, const StateVector& b);

struct PgmResult {
  double success = 0.0;
  std::vector<DenseMatrix> operators;  // valid POVM: positive, sums to identity
};

/// Pretty-good measurement for pure candidates with equal priors:
/// Pi_i = rhobar^{-1/2} (p_i rho_i) rhobar^{-1/2}, pseudo-inverted on the
/// support of the ensemble average and completed uniformly off-support.
PgmResult pgm_guess_prob(const DiscriminationEnsemble& ensemble);

}  // namespace anonq::adversary
