#pragma once

#include <set>

#include "anonq/quantum/state_vector.hpp"
#include "anonq/rng.hpp"

namespace anonq::adversary {

/// A pure state (make_phi convention) whose adversarially-maximized
/// fidelity equals `target` to within 1e-6. The deviation from the ideal
/// state lives on the honest subsystem, orthogonal to both reference
/// sectors, so no malicious-side unitary can raise the overlap; the result
/// is validated by an exact fprime evaluation, with a bisection fallback on
/// the mixing coefficient.
///
/// With a single honest qubit no such orthogonal direction exists and a
/// diagonal two-sector construction is used instead; targets below 1/2 are
/// unreachable there (every pure state has fprime >= 1/2) and rejected.
StateVector craft_state_with_fprime(int n, const std::set<int>& malicious_set,
                                    double target);

enum class SourceKind { honest, bounded_fidelity };

/// What the untrusted source hands the agents each round, in the GHZ
/// convention. The honest source emits perfect GHZ states; the bounded one
/// emits the crafted state of fixed quality every round.
class SourceStrategy {
 public:
  static SourceStrategy honest();
  static SourceStrategy bounded(double target_fprime);

  SourceKind kind() const { return kind_; }
  double target_fprime() const { return target_; }

  StateVector emit(int n, const std::set<int>& malicious_set, Rng& rng) const;

 private:
  SourceKind kind_ = SourceKind::honest;
  double target_ = 1.0;
};

}  // namespace anonq::adversary
