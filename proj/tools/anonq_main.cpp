// anonq: experiment driver for the anonymous entanglement protocol stack.
//
// Subcommands:
//   run        execute a seeded experiment grid, write CSV + JSON artifacts
//   summarize  reprint the verdict table from a JSON result file
//   replay     re-execute one protocol run from a seed, dump its transcript
//
// Exit codes: 0 all bounds hold, 1 bound violation, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "anonq/harness/experiment.hpp"
#include "anonq/protocol/run.hpp"
#include "anonq/qproto/entanglement.hpp"

namespace {

struct RunFlags {
  std::optional<std::string> config;
  anonq::harness::CliOverrides ov;
};

void add_common_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--experiment,-e", f.ov.experiment,
                  "theorem1|guess_bound|soundness|ae_fidelity|classical_probs|full_run");
  cmd->add_option("--n", f.ov.n, "agent count");
  cmd->add_option("--k", f.ov.k, "honest agent count");
  cmd->add_option("--S", f.ov.s, "security parameter");
  cmd->add_option("--epsilon", f.ov.epsilon, "anonymity slack in (0,1)");
  cmd->add_option("--delta", f.ov.delta, "failure budget in (0,1)");
  cmd->add_option("--trials", f.ov.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--seed", f.ov.seed, "base seed");
  cmd->add_option("--out", f.ov.out,
                  "output directory (default $ANONQ_OUT_DIR or .)");
  cmd->add_option("--threads", f.ov.threads, "worker threads (0 = hardware)");
}

int do_run(const RunFlags& f) {
  const auto spec = anonq::harness::parse_config(f.config, f.ov);
  const auto result = anonq::harness::run_experiment(spec);
  std::cout << anonq::harness::summarize(result);
  std::fprintf(stderr, "wall time: %.2fs; artifacts in %s\n", result.wall_seconds,
               spec.out_dir.c_str());
  return result.all_pass() ? 0 : 1;
}

int do_summarize(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  const auto result = anonq::harness::read_json(in);
  std::cout << anonq::harness::summarize(result);
  return result.all_pass() ? 0 : 1;
}

int do_replay(int n, int s, double epsilon, std::uint64_t seed,
              const std::string& out) {
  anonq::protocol::ProtocolConfig cfg;
  cfg.n = n;
  cfg.S = s;
  cfg.epsilon = epsilon;
  cfg.seed = seed;
  cfg.capture_transcript = true;
  const auto res = anonq::protocol::run_protocol5(cfg);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
    os = &file;
  }
  res.transcript.write_jsonl(*os);

  std::fprintf(stderr, "sender=%d receiver=%d rounds=%d %s", res.sender,
               res.receiver, res.rounds_executed,
               res.aborted ? "aborted\n" : "");
  if (res.entanglement)
    std::fprintf(stderr, "epr fidelity=%.12g\n",
                 anonq::qproto::epr_fidelity(res.entanglement->pair_state));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonymous entanglement protocol harness"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment grid");
  add_common_flags(run_cmd, run_flags);

  std::string summarize_path;
  CLI::App* sum_cmd = app.add_subcommand("summarize", "print a result table");
  sum_cmd->add_option("--in", summarize_path, "JSON result file")->required();

  int rp_n = 4, rp_s = 5;
  double rp_eps = 0.6;
  std::uint64_t rp_seed = 1;
  std::string rp_out;
  CLI::App* rp_cmd = app.add_subcommand("replay", "transcript of one seeded run");
  rp_cmd->add_option("--n", rp_n, "agent count");
  rp_cmd->add_option("--S", rp_s, "security parameter");
  rp_cmd->add_option("--epsilon", rp_eps, "anonymity slack");
  rp_cmd->add_option("--seed", rp_seed, "run seed");
  rp_cmd->add_option("--out", rp_out, "transcript file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_flags);
    if (sum_cmd->parsed()) return do_summarize(summarize_path);
    if (rp_cmd->parsed()) return do_replay(rp_n, rp_s, rp_eps, rp_seed, rp_out);
  } catch (const anonq::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
