#pragma once
// Experiment orchestration: seeded Monte Carlo trials over the bump
// environment, pseudo-regret accounting, config parsing, CSV/JSON emission,
// and the minimax-rate diagnostic overlay.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftbandit/environment.hpp"
#include "shiftbandit/policy.hpp"

namespace shiftbandit {

enum class Algorithm { transfer, adaptive, baseline, oracle, constant_arm };
enum class OutputFormat { csv, json };

std::string to_string(Algorithm algo);
std::string to_string(OutputFormat format);
Algorithm algorithm_from_string(const std::string& name);
OutputFormat format_from_string(const std::string& name);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_config when --help is requested; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Algorithm algo = Algorithm::transfer;
  std::int64_t n_q = 0;  // required
  std::int64_t n_p = 0;
  double beta = 0.8;
  double sigma = 0.05;
  double gamma = 1.0;
  std::optional<double> c_beta;  // policy input; defaults to 4^beta/2
  double c_gamma = 1.0;
  double q_lo = 1.0;
  std::optional<double> kappa;  // defaults to the exploration coefficient of mu
  std::vector<double> mu;       // defaults to uniform over the arms
  std::optional<double> alpha;  // diagnostic only; enables the rate overlay
  double beta_lo = 0.5;
  double beta_hi = 1.0;
  double gamma_hi = 2.0;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> checkpoints;  // defaults to 50 log-spaced points
  std::string out = "regret.csv";
  OutputFormat format = OutputFormat::csv;
  int d = 2;
  int num_arms = 2;
  int constant_arm = 0;  // used by the constant_arm diagnostic algorithm

  // Fills defaults and validates; idempotent. Throws UsageError.
  void finalize();

  bool operator==(const ExperimentConfig&) const = default;
};

struct RegretTrace {
  std::int64_t trial = 0;
  std::vector<double> cum_regret;  // aligned with the config checkpoints
};

struct CheckpointStat {
  std::int64_t t = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation across trials
};

struct Summary {
  ExperimentConfig config;
  std::vector<CheckpointStat> checkpoints;
  std::optional<double> minimax_rate_overlay;
  double wall_clock_seconds = 0.0;
};

struct ExperimentResult {
  Summary summary;
  std::vector<RegretTrace> traces;
};

std::vector<std::int64_t> default_checkpoints(std::int64_t n_q);

// One seeded trial: generates the trial's reward functions and auxiliary
// data, then runs the configured policy for n_q steps accumulating
// pseudo-regret. Deterministic in (config.seed, trial_index).
RegretTrace run_trial(const ExperimentConfig& cfg, std::int64_t trial_index);

// All trials (in parallel), aggregated per checkpoint.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Diagnostic overlay n_q * (n_q + (kappa n_p)^((d+2b)/(d+2b+g)))^(-b(1+a)/(2b+d)).
double minimax_rate(std::int64_t n_q, std::int64_t n_p, double kappa, double beta, double alpha,
                    double gamma, int d);

// Rendered output, exposed for tests; emit_results writes one of these.
std::string trace_csv(const Summary& summary, const std::vector<RegretTrace>& traces);
std::string summary_json(const Summary& summary);

void emit_results(const Summary& summary, const std::vector<RegretTrace>& traces,
                  OutputFormat format, const std::string& path);

// Command-line arguments (without the program name) plus an optional
// --config JSON file; flags take precedence over file values.
ExperimentConfig parse_config(const std::vector<std::string>& args);

// Parses the flat JSON document used by --config. With finalized = false the
// parsed values are returned as-is so command-line flags can override them.
ExperimentConfig config_from_json_text(const std::string& text, bool finalized = true);
std::string config_json_text(const ExperimentConfig& cfg);

// Diagnostic policies.
class OraclePolicy final : public Policy {
 public:
  explicit OraclePolicy(const Environment& env) : env_(env) {}
  int select(const Point& x) override { return env_.oracle_gap(x).best_arm; }
  void observe(const Point&, int, double) override {}

 private:
  const Environment& env_;
};

class ConstantPolicy final : public Policy {
 public:
  explicit ConstantPolicy(int arm) : arm_(arm) {}
  int select(const Point&) override { return arm_; }
  void observe(const Point&, int, double) override {}

 private:
  int arm_;
};

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, const Environment& env,
                                    AuxDataset aux, std::uint64_t policy_seed);

}  // namespace shiftbandit
