#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonq::harness {

enum class ExperimentKind {
  theorem1,
  guess_bound,
  soundness,
  ae_fidelity,
  classical_probs,
  full_run,
};

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_string(const std::string& s);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::theorem1;
  std::vector<int> n_values;
  std::vector<int> k_values;
  std::vector<int> s_values;
  std::vector<double> epsilon_values;
  std::vector<double> fidelities;  // ae_fidelity input qualities
  double delta = 0.05;
  long trials = 10000;
  int states = 100;  // soundness sample size
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 0;  // 0 = hardware concurrency

  void apply_defaults();  // fills empty grids per experiment kind
  void validate() const;
};

enum class Relation { le, ge, within };
const char* to_string(Relation r);

struct ResultRow {
  std::string label;
  int n = 0, k = 0, s = 0;
  double epsilon = 0.0, delta = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  double bound = 0.0;
  Relation relation = Relation::le;
  bool pass = false;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::theorem1;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;
  double wall_seconds = 0.0;  // console diagnostics only; never serialized

  bool all_pass() const;
};

/// Runs the grid and writes <out_dir>/<kind>.csv and <kind>.json. Output
/// bytes are a pure function of (spec, seed); wall time stays out of the
/// artifacts for that reason.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_csv(const ExperimentResult& result, std::ostream& os);
void write_json(const ExperimentResult& result, std::ostream& os);
ExperimentResult read_json(std::istream& is);

/// Human-readable bound-vs-estimate table.
std::string summarize(const ExperimentResult& result);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Command-line overrides; any set field wins over the config file.
struct CliOverrides {
  std::optional<std::string> experiment;
  std::optional<int> n, k, s;
  std::optional<double> epsilon, delta;
  std::optional<long> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> threads;
};

/// Builds a spec from an optional JSON config file plus flag overrides.
/// Errors name the offending field. The ANONQ_OUT_DIR environment variable
/// supplies the default output directory.
ExperimentSpec parse_config(const std::optional<std::string>& config_path,
                            const CliOverrides& overrides);

}  // namespace anonq::harness
