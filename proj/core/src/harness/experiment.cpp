#include "anonq/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "anonq/adversary/discrimination.hpp"
#include "anonq/adversary/source.hpp"
#include "anonq/classical/protocols.hpp"
#include "anonq/harness/stats.hpp"
#include "anonq/protocol/run.hpp"
#include "anonq/qproto/entanglement.hpp"
#include "anonq/qproto/verification.hpp"
#include "anonq/quantum/fidelity.hpp"
#include "anonq/quantum/special_states.hpp"

namespace anonq::harness {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int thread_count(const ExperimentSpec& spec) {
  if (spec.threads > 0) return spec.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Index-sharded parallel loop; every index owns its output slot, so the
/// result is independent of scheduling.
void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || count < 2) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::uint64_t stream_id(std::uint64_t point, std::uint64_t run) {
  return (point << 32) | run;
}

// ---- theorem1 -------------------------------------------------------------

void run_theorem1(const ExperimentSpec& spec, ExperimentResult& result) {
  const int threads = thread_count(spec);
  std::uint64_t point = 0;
  for (double eps : spec.epsilon_values) {
    for (int n : spec.n_values) {
      for (int k : spec.k_values) {
        if (k < 2 || k > n) continue;
        for (int s : spec.s_values) {
          const double target = std::sqrt(1.0 - eps * eps);
          adversary::PolicyMap policies;
          for (int a = k + 1; a <= n; ++a)
            policies[a].verifier_always_accepts = true;

          std::vector<std::uint8_t> hits(spec.trials, 0);
          parallel_for(spec.trials, threads, [&](long r) {
            protocol::ProtocolConfig cfg;
            cfg.n = n;
            for (int a = 1; a <= k; ++a) cfg.honest_set.push_back(a);
            cfg.S = s;
            cfg.epsilon = eps;
            cfg.delta = spec.delta;
            cfg.seed = spec.seed;
            cfg.stream = stream_id(point, static_cast<std::uint64_t>(r));
            cfg.source = adversary::SourceStrategy::bounded(target);
            cfg.policies = policies;
            cfg.record_rounds = false;
            const auto res = protocol::run_protocol5(cfg);
            hits[r] = res.c_epsilon ? 1 : 0;
          });

          long c = 0;
          for (auto h : hits) c += h;
          ResultRow row;
          row.label = "c_epsilon_rate";
          row.n = n;
          row.k = k;
          row.s = s;
          row.epsilon = eps;
          row.delta = spec.delta;
          row.trials = spec.trials;
          row.seed = spec.seed;
          row.estimate = static_cast<double>(c) / spec.trials;
          std::tie(row.ci_low, row.ci_high) = wilson_interval(c, spec.trials);
          row.bound = protocol::theorem1_bound(n, s, eps).value;
          row.relation = Relation::le;
          row.pass = row.ci_low <= row.bound;
          result.rows.push_back(row);
          ++point;
        }
      }
    }
  }
}

// ---- guess_bound ----------------------------------------------------------

void run_guess_bound(const ExperimentSpec& spec, ExperimentResult& result) {
  for (double eps : spec.epsilon_values) {
    for (int k : spec.k_values) {
      const int n = k + 1;  // one malicious agent holding the attack
      const double target = std::sqrt(1.0 - eps * eps);
      const StateVector psi = adversary::craft_state_with_fprime(n, {n}, target);
      std::set<int> honest;
      for (int a = 1; a <= k; ++a) honest.insert(a);
      const auto ens = adversary::build_sender_ensemble(psi, honest);

      double guess;
      std::string label;
      if (k == 2) {
        guess = adversary::helstrom_guess_prob(ens.candidates[0], ens.candidates[1]);
        label = "helstrom";
      } else {
        guess = adversary::pgm_guess_prob(ens).success;
        label = "pgm";
      }

      ResultRow row;
      row.label = label;
      row.n = n;
      row.k = k;
      row.epsilon = eps;
      row.seed = spec.seed;
      row.trials = 0;  // exact linear algebra, no sampling
      row.estimate = guess;
      row.ci_low = row.ci_high = guess;
      row.bound = 1.0 / k + eps;
      row.relation = Relation::le;
      row.pass = guess <= row.bound + 1e-12;
      result.rows.push_back(row);
    }
  }
}

// ---- soundness ------------------------------------------------------------

void run_soundness(const ExperimentSpec& spec, ExperimentResult& result) {
  const int n = spec.n_values.front();
  const int threads = thread_count(spec);
  std::vector<ResultRow> rows(spec.states);
  parallel_for(spec.states, threads, [&](long i) {
    Rng state_rng(spec.seed, stream_id(static_cast<std::uint64_t>(i), 0));
    const StateVector psi = random_state(n, state_rng);
    const double fp = fprime(psi, {n}).fprime;

    Rng mc_rng(spec.seed, stream_id(static_cast<std::uint64_t>(i), 1));
    const auto est = qproto::estimate_pass_probability(
        psi, static_cast<int>(spec.trials), mc_rng);

    ResultRow row;
    row.label = "state_" + std::to_string(i);
    row.n = n;
    row.k = n - 1;
    row.trials = spec.trials;
    row.seed = spec.seed;
    row.estimate = est.estimate;
    row.ci_low = est.ci_low;
    row.ci_high = est.ci_high;
    row.bound = 0.75 + fp / 4.0;
    row.relation = Relation::le;
    row.pass = row.ci_low <= row.bound;
    rows[i] = row;
  });
  for (auto& r : rows) result.rows.push_back(std::move(r));
}

// ---- ae_fidelity ----------------------------------------------------------

StateVector noisy_ghz(int n, double input_fidelity, Rng& rng) {
  const StateVector ghz = make_ghz(n);
  StateVector dev = random_state(n, rng);
  cplx overlap{0, 0};
  for (std::size_t i = 0; i < dev.dim(); ++i)
    overlap += std::conj(ghz.amp[i]) * dev.amp[i];
  for (std::size_t i = 0; i < dev.dim(); ++i) dev.amp[i] -= overlap * ghz.amp[i];
  const double nrm = std::sqrt(dev.norm_sq());
  for (auto& a : dev.amp) a /= nrm;

  StateVector psi(n);
  const double c = std::sqrt(input_fidelity), d = std::sqrt(1.0 - input_fidelity);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    psi.amp[i] = c * ghz.amp[i] + d * dev.amp[i];
  return psi;
}

void run_ae_fidelity(const ExperimentSpec& spec, ExperimentResult& result) {
  const int n = spec.n_values.front();
  const int threads = thread_count(spec);
  std::uint64_t point = 0;
  for (double f_in : spec.fidelities) {
    std::vector<double> fids(spec.trials, 0.0);
    parallel_for(spec.trials, threads, [&](long r) {
      Rng rng(spec.seed, stream_id(point, static_cast<std::uint64_t>(r)));
      const StateVector psi = noisy_ghz(n, f_in, rng);
      const auto ae = qproto::anonymous_entanglement(psi, 1, 2, rng);
      fids[r] = qproto::epr_fidelity(ae.pair_state);
    });
    double mean = 0.0;
    for (double f : fids) mean += f;
    mean /= static_cast<double>(spec.trials);
    double var = 0.0;
    for (double f : fids) var += (f - mean) * (f - mean);
    var /= std::max<long>(1, spec.trials - 1);
    const double half = 3.0 * std::sqrt(var / static_cast<double>(spec.trials));

    ResultRow row;
    row.label = "mean_output_fidelity";
    row.n = n;
    row.epsilon = f_in;  // reused as the input-fidelity column for this kind
    row.trials = spec.trials;
    row.seed = spec.seed;
    row.estimate = mean;
    row.ci_low = mean - half;
    row.ci_high = mean + half;
    row.bound = f_in - 0.01;
    row.relation = Relation::ge;
    row.pass = row.estimate >= row.bound;
    result.rows.push_back(row);
    ++point;
  }
}

// ---- classical_probs ------------------------------------------------------

void run_classical(const ExperimentSpec& spec, ExperimentResult& result) {
  // Parity, exhaustively over all inputs for small n.
  for (int n = 2; n <= 5; ++n) {
    Rng rng(spec.seed, stream_id(900 + n, 0));
    bool all_ok = true;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      net::Fabric fabric(net::Roster::all_honest(n));
      std::vector<int> inputs(n + 1, 0);
      int expect = 0;
      for (int i = 1; i <= n; ++i) {
        inputs[i] = static_cast<int>((mask >> (i - 1)) & 1u);
        expect ^= inputs[i];
      }
      const auto run = classical::parity(fabric, inputs, {}, rng);
      for (int i = 1; i <= n; ++i)
        if (run.result[i] != expect) all_ok = false;
    }
    ResultRow row;
    row.label = "parity_exhaustive";
    row.n = n;
    row.trials = std::int64_t{1} << n;
    row.seed = spec.seed;
    row.estimate = all_ok ? 1.0 : 0.0;
    row.ci_low = row.ci_high = row.estimate;
    row.bound = 1.0;
    row.relation = Relation::ge;
    row.pass = all_ok;
    result.rows.push_back(row);
  }

  const int n = spec.n_values.front();
  const int threads = thread_count(spec);

  // Anonymous OR, single ordering so S counts total parity rounds and the
  // success probability is exactly 1 - 2^-S.
  for (int s : spec.s_values) {
    std::vector<std::uint8_t> ones(spec.trials, 0);
    parallel_for(spec.trials, threads, [&](long r) {
      Rng rng(spec.seed, stream_id(1000 + static_cast<std::uint64_t>(s),
                                   static_cast<std::uint64_t>(r)));
      net::Fabric fabric(net::Roster::all_honest(n));
      std::vector<int> inputs(n + 1, 0);
      inputs[1] = 1;
      const auto y = classical::logical_or(
          fabric, inputs, {.repetitions = s, .ordering_count = 1}, rng);
      ones[r] = static_cast<std::uint8_t>(y[1]);
    });
    long c = 0;
    for (auto v : ones) c += v;
    ResultRow row;
    row.label = "logical_or_success";
    row.n = n;
    row.s = s;
    row.trials = spec.trials;
    row.seed = spec.seed;
    row.estimate = static_cast<double>(c) / spec.trials;
    std::tie(row.ci_low, row.ci_high) = wilson_interval(c, spec.trials);
    row.bound = 1.0 - std::ldexp(1.0, -s);
    row.relation = Relation::within;
    row.pass = row.ci_low <= row.bound && row.bound <= row.ci_high;
    result.rows.push_back(row);
  }

  // Notification: the receiver's flag rate and everyone else's silence.
  {
    const int s = spec.s_values.back();
    std::vector<std::uint8_t> flag_r(spec.trials, 0);
    std::vector<std::uint8_t> flag_other(spec.trials, 0);
    parallel_for(spec.trials, threads, [&](long r) {
      Rng rng(spec.seed, stream_id(2000, static_cast<std::uint64_t>(r)));
      net::Fabric fabric(net::Roster::all_honest(n));
      const auto y = classical::notification(fabric, 1, 2, s, rng);
      flag_r[r] = static_cast<std::uint8_t>(y[2]);
      for (int i = 1; i <= n; ++i)
        if (i != 2 && y[i]) flag_other[r] = 1;
    });
    long cr = 0, co = 0;
    for (long r = 0; r < spec.trials; ++r) {
      cr += flag_r[r];
      co += flag_other[r];
    }
    ResultRow row;
    row.label = "notification_receiver";
    row.n = n;
    row.s = s;
    row.trials = spec.trials;
    row.seed = spec.seed;
    row.estimate = static_cast<double>(cr) / spec.trials;
    std::tie(row.ci_low, row.ci_high) = wilson_interval(cr, spec.trials);
    row.bound = 1.0 - std::ldexp(1.0, -s);
    row.relation = Relation::within;
    row.pass = row.ci_low <= row.bound && row.bound <= row.ci_high;
    result.rows.push_back(row);

    ResultRow other;
    other.label = "notification_non_receiver";
    other.n = n;
    other.s = s;
    other.trials = spec.trials;
    other.seed = spec.seed;
    other.estimate = static_cast<double>(co) / spec.trials;
    other.ci_low = other.ci_high = other.estimate;
    other.bound = 0.0;
    other.relation = Relation::le;
    other.pass = co == 0;
    result.rows.push_back(other);
  }
}

// ---- full_run ---------------------------------------------------------

void run_full(const ExperimentSpec& spec, ExperimentResult& result) {
  protocol::ProtocolConfig cfg;
  cfg.n = spec.n_values.front();
  cfg.S = spec.s_values.front();
  cfg.epsilon = spec.epsilon_values.front();
  cfg.delta = spec.delta;
  cfg.seed = spec.seed;
  cfg.capture_transcript = true;
  const auto res = protocol::run_protocol5(cfg);

  std::ofstream ts(spec.out_dir + "/full_run_transcript.jsonl");
  res.transcript.write_jsonl(ts);

  ResultRow row;
  row.label = "epr_fidelity";
  row.n = cfg.n;
  row.s = cfg.S;
  row.epsilon = cfg.epsilon;
  row.delta = cfg.delta;
  row.trials = 1;
  row.seed = spec.seed;
  row.estimate =
      res.entanglement ? qproto::epr_fidelity(res.entanglement->pair_state) : 0.0;
  row.ci_low = row.ci_high = row.estimate;
  row.bound = 1.0 - 1e-9;
  row.relation = Relation::ge;
  row.pass = !res.aborted && row.estimate >= row.bound;
  result.rows.push_back(row);
}

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::theorem1: return "theorem1";
    case ExperimentKind::guess_bound: return "guess_bound";
    case ExperimentKind::soundness: return "soundness";
    case ExperimentKind::ae_fidelity: return "ae_fidelity";
    case ExperimentKind::classical_probs: return "classical_probs";
    case ExperimentKind::full_run: return "full_run";
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_string(const std::string& s) {
  for (ExperimentKind k :
       {ExperimentKind::theorem1, ExperimentKind::guess_bound,
        ExperimentKind::soundness, ExperimentKind::ae_fidelity,
        ExperimentKind::classical_probs, ExperimentKind::full_run})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::within: return "within";
  }
  return "?";
}

void ExperimentSpec::apply_defaults() {
  auto def = [](auto& v, auto value) {
    if (v.empty()) v = value;
  };
  switch (kind) {
    case ExperimentKind::theorem1:
      def(n_values, std::vector<int>{3, 4, 5});
      def(k_values, std::vector<int>{2});
      def(s_values, std::vector<int>{8, 10});
      def(epsilon_values, std::vector<double>{0.6});
      break;
    case ExperimentKind::guess_bound:
      def(k_values, std::vector<int>{2, 3, 4});
      def(epsilon_values, std::vector<double>{0.2, 0.4, 0.6});
      def(n_values, std::vector<int>{0});  // derived as k + 1
      def(s_values, std::vector<int>{1});
      break;
    case ExperimentKind::soundness:
      def(n_values, std::vector<int>{4});
      def(k_values, std::vector<int>{3});
      def(s_values, std::vector<int>{1});
      def(epsilon_values, std::vector<double>{0.6});
      break;
    case ExperimentKind::ae_fidelity:
      def(n_values, std::vector<int>{4});
      def(k_values, std::vector<int>{4});
      def(s_values, std::vector<int>{1});
      def(epsilon_values, std::vector<double>{0.6});
      def(fidelities, std::vector<double>{0.8, 0.9, 0.95});
      break;
    case ExperimentKind::classical_probs:
      def(n_values, std::vector<int>{4});
      def(k_values, std::vector<int>{4});
      def(s_values, std::vector<int>{1, 2, 3, 4, 5});
      def(epsilon_values, std::vector<double>{0.6});
      break;
    case ExperimentKind::full_run:
      def(n_values, std::vector<int>{4});
      def(k_values, std::vector<int>{4});
      def(s_values, std::vector<int>{5});
      def(epsilon_values, std::vector<double>{0.6});
      break;
  }
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
  };
  for (int n : n_values)
    if (kind != ExperimentKind::guess_bound && (n < 2 || n > 12))
      fail("n", "must lie in [2, 12]");
  for (int k : k_values)
    if (k < 1) fail("k", "must be >= 1");
  for (int s : s_values)
    if (s < 1) fail("S", "must be >= 1");
  for (double e : epsilon_values)
    if (e <= 0.0 || e >= 1.0) fail("epsilon", "must lie in (0, 1)");
  for (double f : fidelities)
    if (f <= 0.0 || f > 1.0) fail("fidelities", "must lie in (0, 1]");
  if (delta <= 0.0 || delta >= 1.0) fail("delta", "must lie in (0, 1)");
  const bool sampled = kind == ExperimentKind::theorem1 ||
                       kind == ExperimentKind::soundness ||
                       kind == ExperimentKind::ae_fidelity ||
                       kind == ExperimentKind::classical_probs;
  if (sampled && trials < 100)
    fail("trials", "bound-checking experiments need at least 100 trials");
  if (states < 1) fail("states", "must be >= 1");
  if (threads < 0) fail("threads", "must be >= 0");
}

bool ExperimentResult::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ResultRow& r) { return r.pass; });
}

ExperimentResult run_experiment(const ExperimentSpec& spec_in) {
  ExperimentSpec spec = spec_in;
  spec.apply_defaults();
  spec.validate();

  const auto t0 = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.kind = spec.kind;
  result.seed = spec.seed;
  switch (spec.kind) {
    case ExperimentKind::theorem1: run_theorem1(spec, result); break;
    case ExperimentKind::guess_bound: run_guess_bound(spec, result); break;
    case ExperimentKind::soundness: run_soundness(spec, result); break;
    case ExperimentKind::ae_fidelity: run_ae_fidelity(spec, result); break;
    case ExperimentKind::classical_probs: run_classical(spec, result); break;
    case ExperimentKind::full_run: run_full(spec, result); break;
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string base = spec.out_dir + "/" + to_string(spec.kind);
  std::ofstream csv(base + ".csv");
  if (!csv) throw std::runtime_error("cannot write " + base + ".csv");
  write_csv(result, csv);
  std::ofstream js(base + ".json");
  if (!js) throw std::runtime_error("cannot write " + base + ".json");
  write_json(result, js);
  return result;
}

void write_csv(const ExperimentResult& result, std::ostream& os) {
  os << "experiment,label,n,k,S,epsilon,delta,trials,seed,estimate,ci_low,"
        "ci_high,bound,relation,verdict\n";
  for (const ResultRow& r : result.rows) {
    os << to_string(result.kind) << ',' << r.label << ',' << r.n << ',' << r.k
       << ',' << r.s << ',' << fmt(r.epsilon) << ',' << fmt(r.delta) << ','
       << r.trials << ',' << r.seed << ',' << fmt(r.estimate) << ','
       << fmt(r.ci_low) << ',' << fmt(r.ci_high) << ',' << fmt(r.bound) << ','
       << to_string(r.relation) << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
}

void write_json(const ExperimentResult& result, std::ostream& os) {
  json j;
  j["experiment"] = to_string(result.kind);
  j["seed"] = result.seed;
  j["all_pass"] = result.all_pass();
  j["rows"] = json::array();
  for (const ResultRow& r : result.rows) {
    json row;
    row["label"] = r.label;
    row["n"] = r.n;
    row["k"] = r.k;
    row["S"] = r.s;
    row["epsilon"] = r.epsilon;
    row["delta"] = r.delta;
    row["trials"] = r.trials;
    row["seed"] = r.seed;
    row["estimate"] = r.estimate;
    row["ci_low"] = r.ci_low;
    row["ci_high"] = r.ci_high;
    row["bound"] = r.bound;
    row["relation"] = to_string(r.relation);
    row["pass"] = r.pass;
    j["rows"].push_back(row);
  }
  os << j.dump(2) << '\n';
}

ExperimentResult read_json(std::istream& is) {
  json j;
  is >> j;
  ExperimentResult result;
  const auto kind = experiment_from_string(j.at("experiment").get<std::string>());
  if (!kind) throw ConfigError("experiment: unknown kind in result file");
  result.kind = *kind;
  result.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& row : j.at("rows")) {
    ResultRow r;
    r.label = row.at("label").get<std::string>();
    r.n = row.at("n").get<int>();
    r.k = row.at("k").get<int>();
    r.s = row.at("S").get<int>();
    r.epsilon = row.at("epsilon").get<double>();
    r.delta = row.at("delta").get<double>();
    r.trials = row.at("trials").get<long>();
    r.seed = row.at("seed").get<std::uint64_t>();
    r.estimate = row.at("estimate").get<double>();
    r.ci_low = row.at("ci_low").get<double>();
    r.ci_high = row.at("ci_high").get<double>();
    r.bound = row.at("bound").get<double>();
    const std::string rel = row.at("relation").get<std::string>();
    r.relation = rel == "ge"       ? Relation::ge
                 : rel == "within" ? Relation::within
                                   : Relation::le;
    r.pass = row.at("pass").get<bool>();
    result.rows.push_back(r);
  }
  return result;
}

std::string summarize(const ExperimentResult& result) {
  if (result.rows.empty())
    throw std::runtime_error("empty result set: nothing to summarize");
  std::ostringstream os;
  os << "experiment: " << to_string(result.kind) << "  (seed " << result.seed
     << ")\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-26s %4s %3s %4s %9s %12s %24s %12s %4s %s\n",
                "label", "n", "k", "S", "eps", "estimate", "99% interval", "bound",
                "rel", "verdict");
  os << line;
  for (const ResultRow& r : result.rows) {
    std::snprintf(line, sizeof line,
                  "%-26s %4d %3d %4d %9.4g %12.6g [%10.6g,%10.6g] %12.6g %4s %s\n",
                  r.label.c_str(), r.n, r.k, r.s, r.epsilon, r.estimate, r.ci_low,
                  r.ci_high, r.bound, to_string(r.relation),
                  r.pass ? "pass" : "FAIL");
    os << line;
  }
  os << (result.all_pass() ? "all rows pass\n" : "BOUND VIOLATION present\n");
  return os.str();
}

namespace {

template <typename T>
std::vector<T> list_or_scalar(const json& j, const std::string& field) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& v : j) out.push_back(v.get<T>());
  } else {
    out.push_back(j.get<T>());
  }
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

}  // namespace

ExperimentSpec parse_config(const std::optional<std::string>& config_path,
                            const CliOverrides& overrides) {
  ExperimentSpec spec;
  std::optional<std::string> kind_name;

  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw ConfigError("config: cannot open " + *config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (j.contains("experiment")) kind_name = j["experiment"].get<std::string>();
    if (j.contains("n")) spec.n_values = list_or_scalar<int>(j["n"], "n");
    if (j.contains("k")) spec.k_values = list_or_scalar<int>(j["k"], "k");
    if (j.contains("S")) spec.s_values = list_or_scalar<int>(j["S"], "S");
    if (j.contains("epsilon"))
      spec.epsilon_values = list_or_scalar<double>(j["epsilon"], "epsilon");
    if (j.contains("fidelities"))
      spec.fidelities = list_or_scalar<double>(j["fidelities"], "fidelities");
    if (j.contains("delta")) spec.delta = j["delta"].get<double>();
    if (j.contains("trials")) spec.trials = j["trials"].get<long>();
    if (j.contains("states")) spec.states = j["states"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) spec.out_dir = j["out"].get<std::string>();
    if (j.contains("threads")) spec.threads = j["threads"].get<int>();
  }

  if (overrides.experiment) kind_name = *overrides.experiment;
  if (overrides.n) spec.n_values = {*overrides.n};
  if (overrides.k) spec.k_values = {*overrides.k};
  if (overrides.s) spec.s_values = {*overrides.s};
  if (overrides.epsilon) spec.epsilon_values = {*overrides.epsilon};
  if (overrides.delta) spec.delta = *overrides.delta;
  if (overrides.trials) spec.trials = *overrides.trials;
  if (overrides.seed) spec.seed = *overrides.seed;
  if (overrides.out) spec.out_dir = *overrides.out;
  if (overrides.threads) spec.threads = *overrides.threads;

  if (!overrides.out && spec.out_dir == ".") {
    if (const char* env = std::getenv("ANONQ_OUT_DIR")) spec.out_dir = env;
  }

  if (!kind_name)
    throw ConfigError(
        "experiment: missing; valid kinds are theorem1, guess_bound, soundness, "
        "ae_fidelity, classical_probs, full_run");
  const auto kind = experiment_from_string(*kind_name);
  if (!kind)
    throw ConfigError("experiment: unknown kind '" + *kind_name +
                      "'; valid kinds are theorem1, guess_bound, soundness, "
                      "ae_fidelity, classical_probs, full_run");
  spec.kind = *kind;
  spec.apply_defaults();
  spec.validate();
  return spec;
}

}  // namespace anonq::harness
