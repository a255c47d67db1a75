#include <benchmark/benchmark.h>

#include "anonq/classical/protocols.hpp"
#include "anonq/protocol/run.hpp"
#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"

namespace {

void BM_ApplyGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  anonq::StateVector s = anonq::make_ghz(n);
  const anonq::Gate2x2 h = anonq::gates::hadamard();
  int q = 1;
  for (auto _ : state) {
    anonq::apply_gate_in_place(s, q, h);
    q = q % n + 1;
    benchmark::DoNotOptimize(s.amp.data());
  }
}
BENCHMARK(BM_ApplyGate)->Arg(6)->Arg(10)->Arg(12);

void BM_Fprime(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  anonq::Rng rng(7);
  const anonq::StateVector s = anonq::random_state(n, rng);
  for (auto _ : state) {
    auto rep = anonq::fprime(s, {n});
    benchmark::DoNotOptimize(rep.fprime);
  }
}
BENCHMARK(BM_Fprime)->Arg(4)->Arg(6)->Arg(8);

void BM_ParityRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  anonq::Rng rng(11);
  anonq::net::Fabric fabric(anonq::net::Roster::all_honest(n));
  std::vector<int> inputs(n + 1, 0);
  inputs[1] = 1;
  for (auto _ : state) {
    auto run = anonq::classical::parity(fabric, inputs, {}, rng);
    benchmark::DoNotOptimize(run.public_parity);
  }
}
BENCHMARK(BM_ParityRound)->Arg(4)->Arg(8);

void BM_Protocol5(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) {
    anonq::protocol::ProtocolConfig cfg;
    cfg.n = 4;
    cfg.S = 5;
    cfg.seed = 42;
    cfg.stream = stream++;
    cfg.record_rounds = false;
    auto res = anonq::protocol::run_protocol5(cfg);
    benchmark::DoNotOptimize(res.rounds_executed);
  }
}
BENCHMARK(BM_Protocol5);

}  // namespace

BENCHMARK_MAIN();
