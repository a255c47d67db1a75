#include "anonq/adversary/source.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"

namespace anonq::adversary {

namespace {

// Scatter a (honest label, malicious label) amplitude into the full index.
std::size_t full_index(int n, const std::vector<int>& honest,
                       const std::vector<int>& malicious, std::size_t h,
                       std::size_t m) {
  std::size_t idx = 0;
  for (std::size_t b = 0; b < honest.size(); ++b)
    if ((h >> (honest.size() - 1 - b)) & 1u)
      idx |= std::size_t{1} << (n - honest[b]);
  for (std::size_t b = 0; b < malicious.size(); ++b)
    if ((m >> (malicious.size() - 1 - b)) & 1u)
      idx |= std::size_t{1} << (n - malicious[b]);
  return idx;
}

StateVector assemble(int n, const std::vector<int>& honest,
                     const std::vector<int>& malicious, double coeff) {
  const int k = static_cast<int>(honest.size());
  StateVector psi(n);

  if (k >= 2) {
    // sqrt(c)*Phi0^n plus a weight-1 honest difference vector (orthogonal
    // to both reference sectors) on the malicious all-zeros label.
    const StateVector phi0 = make_phi(n, 0);
    for (std::size_t idx = 0; idx < psi.dim(); ++idx)
      psi.amp[idx] = std::sqrt(coeff) * phi0.amp[idx];
    const double dev = std::sqrt((1.0 - coeff) / 2.0);
    const std::size_t h1 = std::size_t{1} << (k - 1);
    const std::size_t h2 = std::size_t{1} << (k - 2);
    psi.amp[full_index(n, honest, malicious, h1, 0)] += dev;
    psi.amp[full_index(n, honest, malicious, h2, 0)] -= dev;
    return psi;
  }

  // k == 1: diagonal two-sector family cos(phi) |Phi0^1>|Phi0^{n-1}> -
  // sin(phi) |Phi1^1>|Phi1^{n-1}> reaches fprime = (cos+sin)^2/2 = coeff.
  const double phi_ang = 0.5 * std::asin(2.0 * coeff - 1.0);
  const double c = std::cos(phi_ang), s = std::sin(phi_ang);
  const int nm = n - 1;
  const StateVector m0 = make_phi(nm, 0);
  const StateVector m1 = make_phi(nm, 1);
  for (std::size_t m = 0; m < m0.dim(); ++m) {
    psi.amp[full_index(n, honest, malicious, 0, m)] = c * m0.amp[m];
    psi.amp[full_index(n, honest, malicious, 1, m)] = -s * m1.amp[m];
  }
  return psi;
}

}  // namespace

StateVector craft_state_with_fprime(int n, const std::set<int>& malicious_set,
                                    double target) {
  if (target <= 0.0 || target > 1.0)
    throw std::invalid_argument("target must lie in (0, 1]");
  std::vector<int> honest, malicious;
  for (int q = 1; q <= n; ++q) {
    if (malicious_set.count(q))
      malicious.push_back(q);
    else
      honest.push_back(q);
  }
  if (honest.empty()) throw std::invalid_argument("at least one honest agent required");
  if (honest.size() == 1 && target < 0.5)
    throw std::invalid_argument(
        "targets below 1/2 are unreachable with a single honest qubit");

  StateVector psi = assemble(n, honest, malicious, target);
  double achieved = fprime(psi, malicious_set).fprime;
  if (std::abs(achieved - target) <= 1e-6) return psi;

  // The constructions above hit the target exactly in theory; bisection on
  // the coefficient covers any numerical drift.
  double lo = honest.size() == 1 ? 0.5 : 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    psi = assemble(n, honest, malicious, mid);
    achieved = fprime(psi, malicious_set).fprime;
    if (std::abs(achieved - target) <= 1e-9) break;
    (achieved < target ? lo : hi) = mid;
  }
  if (std::abs(achieved - target) > 1e-6)
    throw std::runtime_error("craft_state_with_fprime failed to reach target");
  return psi;
}

SourceStrategy SourceStrategy::honest() { return {}; }

SourceStrategy SourceStrategy::bounded(double target_fprime) {
  if (target_fprime <= 0.0 || target_fprime > 1.0)
    throw std::invalid_argument("target must lie in (0, 1]");
  SourceStrategy s;
  s.kind_ = SourceKind::bounded_fidelity;
  s.target_ = target_fprime;
  return s;
}

StateVector SourceStrategy::emit(int n, const std::set<int>& malicious_set,
                                 Rng& /*rng*/) const {
  if (kind_ == SourceKind::honest) return make_ghz(n);
  return to_ghz_convention(craft_state_with_fprime(n, malicious_set, target_));
}

}  // namespace anonq::adversary
