#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"

#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"
#include "anonq/quantum/state_vector.hpp"

using namespace anonq;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    m = std::max(m, std::abs(a.amp[i] - b.amp[i]));
  return m;
}

// Vector equality up to a global phase.
bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol = 1e-9) {
  cplx ov{0, 0};
  for (std::size_t i = 0; i < a.dim(); ++i) ov += std::conj(a.amp[i]) * b.amp[i];
  if (std::abs(std::abs(ov) - 1.0) > tol) return false;
  const cplx phase = ov / std::abs(ov);
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    m = std::max(m, std::abs(phase * a.amp[i] - b.amp[i]));
  return m < tol;
}

}  // namespace

TEST_CASE("ghz amplitudes") {
  const StateVector g2 = make_ghz(2);
  CHECK(g2.amp[0b00].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(g2.amp[0b11].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(g2.amp[0b01]) == 0.0);
  CHECK(std::abs(g2.amp[0b10]) == 0.0);

  const StateVector g3 = make_ghz(3);
  CHECK(g3.amp[0b000].real() == doctest::Approx(0.7071).epsilon(1e-4));
  CHECK(g3.amp[0b111].real() == doctest::Approx(0.7071).epsilon(1e-4));

  CHECK_THROWS_AS(make_ghz(13), std::invalid_argument);
  CHECK_THROWS_AS(make_ghz(0), std::invalid_argument);
}

TEST_CASE("hamming class") {
  CHECK(hamming_class(0b0000, 4) == 0);
  CHECK(hamming_class(0b1011, 4) == 3);
  CHECK(hamming_class(0b110011, 6) == 0);  // weight 4
}

TEST_CASE("phi states by enumeration") {
  SUBCASE("n=2 explicit") {
    const StateVector p0 = make_phi(2, 0);
    CHECK(p0.amp[0b00].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(p0.amp[0b11].real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    CHECK(std::abs(p0.amp[0b01]) == 0.0);

    const StateVector p1 = make_phi(2, 1);
    CHECK(p1.amp[0b01].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(p1.amp[0b10].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(p1.amp[0b00]) == 0.0);
  }

  SUBCASE("independent popcount oracle, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
      const StateVector p0 = make_phi(n, 0);
      const StateVector p1 = make_phi(n, 1);
      const double v = 1.0 / std::sqrt(std::pow(2.0, n - 1));
      for (std::size_t y = 0; y < p0.dim(); ++y) {
        int w = 0;
        for (std::size_t b = y; b; b >>= 1) w += static_cast<int>(b & 1);
        const double e0 = (w % 4 == 0) ? v : (w % 4 == 2 ? -v : 0.0);
        const double e1 = (w % 4 == 1) ? v : (w % 4 == 3 ? -v : 0.0);
        CHECK(p0.amp[y].real() == doctest::Approx(e0).epsilon(1e-12));
        CHECK(p1.amp[y].real() == doctest::Approx(e1).epsilon(1e-12));
      }
    }
  }

  SUBCASE("orthogonality and norm up to n=12") {
    for (int n = 1; n <= 12; ++n) {
      const StateVector p0 = make_phi(n, 0);
      const StateVector p1 = make_phi(n, 1);
      CHECK(fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(p0.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p1.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(make_phi(13, 0), std::invalid_argument);
}

TEST_CASE("gate application") {
  const StateVector s00 = basis_state(2, 0b00);

  SUBCASE("sigma_x flips the addressed qubit") {
    const StateVector r = apply_gate(s00, 1, gates::sigma_x());
    CHECK(std::abs(r.amp[0b10] - cplx{1, 0}) < 1e-12);
  }

  SUBCASE("H is an involution") {
    Rng rng(5);
    StateVector s = random_state(3, rng);
    const StateVector orig = s;
    apply_gate_in_place(s, 2, gates::hadamard());
    apply_gate_in_place(s, 2, gates::hadamard());
    CHECK(max_abs_diff(s, orig) < 1e-12);
  }

  SUBCASE("sigma_z on half of a pair") {
    StateVector bell = make_ghz(2);
    apply_gate_in_place(bell, 2, gates::sigma_z());
    CHECK(max_abs_diff(bell, make_phi(2, 0)) < 1e-12);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(apply_gate(s00, 3, gates::hadamard()), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s00, 0, gates::hadamard()), std::invalid_argument);
    const Gate2x2 bad{1, 1, 1, 1};
    CHECK_THROWS_AS(apply_gate(s00, 1, bad), std::invalid_argument);
  }

  SUBCASE("norm preserved") {
    Rng rng(6);
    StateVector s = random_state(4, rng);
    apply_gate_in_place(s, 3, gates::sqrt_z());
    apply_gate_in_place(s, 1, gates::phase(1.234));
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("computational measurement") {
  SUBCASE("deterministic on basis states") {
    Rng rng(1);
    auto [y, post] = measure_computational(basis_state(2, 0b10), 1, rng);
    CHECK(y == 1);
    CHECK(std::abs(post.amp[0b10] - cplx{1, 0}) < 1e-12);
  }

  SUBCASE("born frequencies on a GHZ half") {
    Rng rng(42);
    const StateVector g = make_ghz(2);
    int ones = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      StateVector s = g;
      ones += measure_computational_in_place(s, 1, rng);
    }
    CHECK(std::abs(ones / static_cast<double>(trials) - 0.5) < 0.02);
  }

  SUBCASE("collapse propagates across the state") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      StateVector s = make_ghz(3);
      const int y = measure_computational_in_place(s, 3, rng);
      const StateVector expect = basis_state(3, y ? 0b111 : 0b000);
      CHECK(max_abs_diff(s, expect) < 1e-12);
    }
  }

  SUBCASE("forced collapse reports branch probability") {
    StateVector s = make_ghz(2);
    const double p = collapse_in_place(s, 1, 0);
    CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(s.amp[0b00] - cplx{1, 0}) < 1e-12);
    StateVector z = basis_state(2, 0b00);
    CHECK(collapse_in_place(z, 1, 1) == 0.0);
  }
}

TEST_CASE("theta basis measurement") {
  SUBCASE("theta=0 distinguishes |+> from |->") {
    StateVector plus(1);
    plus.amp = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    StateVector minus(1);
    minus.amp = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
      CHECK(measure_theta_basis(plus, 1, 0.0, rng).first == 0);
      CHECK(measure_theta_basis(minus, 1, 0.0, rng).first == 1);
    }
  }

  SUBCASE("theta=pi/2 on |0> is a fair coin") {
    Rng rng(10);
    const StateVector zero = basis_state(1, 0);
    int ones = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      StateVector s = zero;
      ones += measure_theta_basis_in_place(s, 1, kPi / 2, rng);
    }
    CHECK(std::abs(ones / static_cast<double>(trials) - 0.5) < 0.02);
  }

  SUBCASE("range check") {
    Rng rng(2);
    StateVector s = basis_state(1, 0);
    CHECK_THROWS_AS(measure_theta_basis_in_place(s, 1, -0.1, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(measure_theta_basis_in_place(s, 1, 4.0, rng),
                    std::invalid_argument);
  }
}

TEST_CASE("fidelity and trace distance") {
  const StateVector p0 = make_phi(2, 0);
  CHECK(fidelity(p0, p0) == doctest::Approx(1.0));
  CHECK(fidelity(basis_state(2, 0b00), p0) == doctest::Approx(0.5));
  for (int n = 2; n <= 6; ++n)
    CHECK(fidelity(make_phi(n, 0), make_phi(n, 1)) == doctest::Approx(0.0));

  CHECK(trace_distance_pure(p0, p0) == doctest::Approx(0.0));
  CHECK(trace_distance_pure(make_phi(3, 0), make_phi(3, 1)) == doctest::Approx(1.0));

  // F = 1 - eps^2  =>  D = eps
  Rng rng(12);
  const StateVector a = make_ghz(3);
  StateVector mix(3);
  const StateVector orth = make_phi(3, 1);
  for (std::size_t i = 0; i < mix.dim(); ++i)
    mix.amp[i] = std::sqrt(0.64) * a.amp[i] + std::sqrt(0.36) * orth.amp[i];
  CHECK(fidelity(mix, a) == doctest::Approx(0.64));
  CHECK(trace_distance_pure(mix, a) == doctest::Approx(0.6));

  CHECK_THROWS_AS(fidelity(make_ghz(2), make_ghz(3)), std::invalid_argument);
  CHECK_THROWS_AS(trace_distance_pure(make_ghz(2), make_ghz(3)),
                  std::invalid_argument);
}

TEST_CASE("local unitary between conventions") {
  // H then sqrt(Z) on every qubit carries GHZ to the reference state with
  // global phase exactly +1.
  for (int n = 1; n <= 8; ++n) {
    const StateVector mapped = to_phi_convention(make_ghz(n));
    CHECK(max_abs_diff(mapped, make_phi(n, 0)) < 1e-9);
    const StateVector back = to_ghz_convention(make_phi(n, 0));
    CHECK(max_abs_diff(back, make_ghz(n)) < 1e-9);
  }
}

TEST_CASE("sender transform") {
  SUBCASE("maps between the reference states, same vector for every qubit") {
    for (int n = 2; n <= 6; ++n) {
      const StateVector p0 = make_phi(n, 0);
      const StateVector p1 = make_phi(n, 1);
      for (int i = 1; i <= n; ++i) {
        const StateVector t0 = sender_transform(p0, i);
        CHECK(max_abs_diff(t0, p1) < 1e-9);
        const StateVector t1 = sender_transform(p1, i);
        for (std::size_t j = 0; j < t1.dim(); ++j)
          CHECK(std::abs(t1.amp[j] + p0.amp[j]) < 1e-9);  // equals -Phi0
      }
    }
  }

  SUBCASE("applied twice negates") {
    Rng rng(17);
    const StateVector s = random_state(4, rng);
    StateVector t = s;
    sender_transform_in_place(t, 2);
    sender_transform_in_place(t, 2);
    for (std::size_t j = 0; j < t.dim(); ++j)
      CHECK(std::abs(t.amp[j] + s.amp[j]) < 1e-12);
  }

  CHECK_THROWS_AS(sender_transform(make_ghz(2), 3), std::invalid_argument);
}

TEST_CASE("fprime closed form") {
  SUBCASE("ideal state scores 1 for any malicious set") {
    for (int n = 2; n <= 6; ++n) {
      CHECK(fprime(make_phi(n, 0), {}).fprime == doctest::Approx(1.0));
      CHECK(fprime(make_phi(n, 0), {n}).fprime == doctest::Approx(1.0));
      CHECK(fprime(make_phi(n, 0), {1, 2}).fprime == doctest::Approx(1.0));
    }
  }

  SUBCASE("|00> with the second qubit malicious") {
    CHECK(fprime(basis_state(2, 0b00), {2}).fprime == doctest::Approx(0.5));
  }

  SUBCASE("empty malicious set degenerates to plain fidelity") {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
      const StateVector s = random_state(4, rng);
      const FidelityReport rep = fprime(s, {});
      CHECK(std::abs(rep.fprime - rep.fidelity) < 1e-12);
      CHECK(std::abs(rep.fprime - fidelity(s, make_phi(4, 0))) < 1e-12);
    }
  }

  SUBCASE("never below the bare overlap") {
    Rng rng(29);
    for (int t = 0; t < 50; ++t) {
      const StateVector s = random_state(5, rng);
      const FidelityReport rep = fprime(s, {2, 5});
      CHECK(rep.fprime >= rep.fidelity - 1e-12);
    }
  }

  SUBCASE("maximizing unitary is unitary and attains the reported value") {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
      const StateVector s = random_state(4, rng);
      const std::set<int> mal{3, 4};
      const FidelityReport rep = fprime(s, mal);
      const auto& u = rep.maximizing_unitary;
      const std::size_t d = u.dim;
      // U^dag U = I
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
          cplx acc{0, 0};
          for (std::size_t m = 0; m < d; ++m)
            acc += std::conj(u.at(m, r)) * u.at(m, c);
          CHECK(std::abs(acc - (r == c ? cplx{1, 0} : cplx{0, 0})) < 1e-9);
        }
      }
      // Applying U to the malicious qubits realizes fprime as a plain
      // overlap with the reference state.
      StateVector rotated = s;
      std::vector<cplx> scratch(d);
      const int n = s.num_qubits;
      const std::size_t dm = d;
      for (std::size_t base = 0; base < rotated.dim(); ++base) {
        // qubits 3,4 are the low bits here, contiguous by construction
        if (base % dm != 0) continue;
        for (std::size_t m = 0; m < dm; ++m) {
          scratch[m] = {0, 0};
          for (std::size_t m2 = 0; m2 < dm; ++m2)
            scratch[m] += u.at(m, m2) * rotated.amp[base + m2];
        }
        for (std::size_t m = 0; m < dm; ++m) rotated.amp[base + m] = scratch[m];
      }
      (void)n;
      CHECK(fidelity(rotated, make_phi(4, 0)) == doctest::Approx(rep.fprime).epsilon(1e-9));
    }
  }
}

TEST_CASE("fprime agrees with randomized unitary search") {
  // Independent oracle: hill-climbing over the malicious-side unitary group
  // with random restarts, compared against the closed form.
  Rng rng(101);
  auto search = [&](const StateVector& s, const std::set<int>& mal) {
    // Work on the same cross operator the closed form uses, but maximize
    // |Tr(U M)| directly over unitaries built from random rotations.
    const int n = s.num_qubits;
    std::vector<int> hon, malv(mal.begin(), mal.end());
    for (int q = 1; q <= n; ++q)
      if (!mal.count(q)) hon.push_back(q);
    const std::size_t dm = std::size_t{1} << malv.size();
    const std::size_t dh = std::size_t{1} << hon.size();
    const StateVector ref = make_phi(n, 0);
    std::vector<cplx> m(dm * dm, cplx{0, 0});
    std::vector<cplx> psi(dh * dm), phi(dh * dm);
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
      std::size_t h = 0, mm = 0;
      for (int q : hon) h = (h << 1) | ((idx >> (n - q)) & 1u);
      for (int q : malv) mm = (mm << 1) | ((idx >> (n - q)) & 1u);
      psi[h * dm + mm] = s.amp[idx];
      phi[h * dm + mm] = ref.amp[idx];
    }
    for (std::size_t h = 0; h < dh; ++h)
      for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t b = 0; b < dm; ++b)
          m[a * dm + b] += psi[h * dm + a] * std::conj(phi[h * dm + b]);

    auto objective = [&](const std::vector<cplx>& u) {
      cplx tr{0, 0};
      for (std::size_t a = 0; a < dm; ++a)
        for (std::size_t b = 0; b < dm; ++b) tr += u[a * dm + b] * m[b * dm + a];
      return std::abs(tr);
    };
    // Givens-style random rotations keep U exactly unitary.
    auto rotate = [&](std::vector<cplx>& u, double step) {
      const std::size_t p = rng.uniform_int(dm);
      std::size_t q = rng.uniform_int(dm - 1);
      if (q >= p) ++q;
      const double ang = (rng.u01() * 2 - 1) * step;
      const double ph = (rng.u01() * 2 - 1) * step;
      const cplx c = std::cos(ang);
      const cplx sgn = std::polar(1.0, ph);
      const cplx sn = std::sin(ang) * sgn;
      for (std::size_t col = 0; col < dm; ++col) {
        const cplx rp = u[p * dm + col], rq = u[q * dm + col];
        u[p * dm + col] = c * rp + sn * rq;
        u[q * dm + col] = -std::conj(sn) * rp + c * rq;
      }
    };
    double best = 0.0;
    for (int restart = 0; restart < 12; ++restart) {
      std::vector<cplx> u(dm * dm, cplx{0, 0});
      for (std::size_t i = 0; i < dm; ++i) u[i * dm + i] = 1;
      for (int warm = 0; warm < 40; ++warm) rotate(u, 1.5);
      double cur = objective(u);
      double step = 0.8;
      for (int it = 0; it < 4000 && step > 1e-10; ++it) {
        std::vector<cplx> cand = u;
        rotate(cand, step);
        const double val = objective(cand);
        if (val > cur) {
          u = std::move(cand);
          cur = val;
        } else {
          step *= 0.995;
        }
      }
      best = std::max(best, cur);
    }
    return best * best;
  };

  int checked = 0;
  for (int t = 0; t < 12; ++t) {
    const int n = 3 + static_cast<int>(rng.uniform_int(3));  // 3..5
    const std::set<int> mal = t % 2 ? std::set<int>{n} : std::set<int>{1, n};
    const StateVector s = random_state(n, rng);
    const double closed = fprime(s, mal).fprime;
    const double searched = search(s, mal);
    CHECK(searched <= closed + 1e-9);  // search can never beat the exact max
    CHECK(std::abs(closed - searched) < 1e-6);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("decompose_honest") {
  SUBCASE("ideal state splits evenly for any bipartition") {
    for (int n = 3; n <= 6; ++n) {
      for (const std::set<int>& mal :
           {std::set<int>{n}, std::set<int>{1}, std::set<int>{2, n}}) {
        const DecompositionResult d = decompose_honest(make_phi(n, 0), mal);
        double w0 = 0.0, w1 = 0.0;
        for (const cplx& c : d.psi0) w0 += std::norm(c);
        for (const cplx& c : d.psi1) w1 += std::norm(c);
        CHECK(w0 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(w1 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(d.chi_norm_sq == doctest::Approx(0.0).epsilon(1e-9));
      }
    }
  }

  SUBCASE("all-zeros product state, no malicious agents") {
    for (int n = 2; n <= 6; ++n) {
      const DecompositionResult d = decompose_honest(basis_state(n, 0), {});
      double w0 = 0.0;
      for (const cplx& c : d.psi0) w0 += std::norm(c);
      CHECK(w0 == doctest::Approx(std::pow(2.0, -(n - 1))).epsilon(1e-9));
    }
  }

  SUBCASE("completeness on random states") {
    Rng rng(37);
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + static_cast<int>(rng.uniform_int(4));
      const std::set<int> mal = t % 3 ? std::set<int>{n} : std::set<int>{};
      const StateVector s = random_state(n, rng);
      const DecompositionResult d = decompose_honest(s, mal);
      double w = d.chi_norm_sq;
      for (const cplx& c : d.psi0) w += std::norm(c);
      for (const cplx& c : d.psi1) w += std::norm(c);
      CHECK(w == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("sector projection reassembles exactly") {
    Rng rng(41);
    for (int t = 0; t < 30; ++t) {
      const int n = 4;
      const std::set<int> mal{2, 4};
      const StateVector s = random_state(n, rng);
      const DecompositionResult d = decompose_honest(s, mal);
      // Rebuild Phi0^k (x) psi0 + Phi1^k (x) psi1 and compare with the
      // direct projection of s onto those sectors.
      const StateVector p0 = make_phi(2, 0);
      const StateVector p1 = make_phi(2, 1);
      StateVector rebuilt(n);
      StateVector projected(n);
      const std::vector<int> hon{1, 3}, malv{2, 4};
      for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        std::size_t h = 0, m = 0;
        for (int q : hon) h = (h << 1) | ((idx >> (n - q)) & 1u);
        for (int q : malv) m = (m << 1) | ((idx >> (n - q)) & 1u);
        rebuilt.amp[idx] = p0.amp[h] * d.psi0[m] + p1.amp[h] * d.psi1[m];
      }
      // projection of s: for each malicious label, project the honest part
      for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        std::size_t h = 0, m = 0;
        for (int q : hon) h = (h << 1) | ((idx >> (n - q)) & 1u);
        for (int q : malv) m = (m << 1) | ((idx >> (n - q)) & 1u);
        cplx acc{0, 0};
        for (std::size_t h2 = 0; h2 < 4; ++h2) {
          std::size_t idx2 = 0;
          for (std::size_t b = 0; b < hon.size(); ++b)
            if ((h2 >> (hon.size() - 1 - b)) & 1u)
              idx2 |= std::size_t{1} << (n - hon[b]);
          for (std::size_t b = 0; b < malv.size(); ++b)
            if ((m >> (malv.size() - 1 - b)) & 1u)
              idx2 |= std::size_t{1} << (n - malv[b]);
          const cplx proj = p0.amp[h] * std::conj(p0.amp[h2]) +
                            p1.amp[h] * std::conj(p1.amp[h2]);
          acc += proj * s.amp[idx2];
        }
        projected.amp[idx] = acc;
      }
      double resid = 0.0;
      for (std::size_t idx = 0; idx < s.dim(); ++idx)
        resid = std::max(resid, std::abs(rebuilt.amp[idx] - projected.amp[idx]));
      CHECK(resid < 1e-9);
    }
  }

  SUBCASE("no honest qubits is an error") {
    CHECK_THROWS_AS(decompose_honest(make_ghz(2), std::set<int>{1, 2}),
                    std::invalid_argument);
  }
}

TEST_CASE("every state-returning operation stays normalized") {
  Rng rng(53);
  for (int t = 0; t < 50; ++t) {
    StateVector s = random_state(4, rng);
    apply_gate_in_place(s, 1 + static_cast<int>(rng.uniform_int(4)),
                        gates::hadamard());
    measure_computational_in_place(s, 1 + static_cast<int>(rng.uniform_int(4)), rng);
    sender_transform_in_place(s, 1 + static_cast<int>(rng.uniform_int(4)));
    CHECK(s.norm_sq() == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(equal_up_to_phase(make_ghz(3), make_ghz(3)));
}
