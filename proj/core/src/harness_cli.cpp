#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shiftbandit/harness.hpp"

namespace shiftbandit {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list");
    }
  }
  if (out.empty()) throw UsageError("expected a comma-separated list of numbers");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + item + "' in list");
    }
  }
  if (out.empty()) throw UsageError("expected a comma-separated list of integers");
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Monte Carlo regret benchmark for transfer-learning contextual bandits"};
  app.name("shiftbandit");

  std::string algo_s, format_s, mu_s, checkpoints_s, out_s, config_path;
  std::int64_t n_q = 0, n_p = 0, trials = 0;
  std::uint64_t seed = 0;
  double beta = 0, c_beta = 0, gamma = 0, c_gamma = 0, q_lo = 0, kappa = 0, sigma = 0, alpha = 0;
  double beta_lo = 0, beta_hi = 0, gamma_hi = 0;

  app.add_option("--algo", algo_s, "Algorithm: transfer, adaptive or baseline");
  app.add_option("--n-q", n_q, "Target-bandit horizon (required)");
  app.add_option("--n-p", n_p, "Auxiliary sample count");
  app.add_option("--beta", beta, "Holder exponent of the rewards, in (0,1]");
  app.add_option("--c-beta", c_beta, "Holder-constant input to the policy (default 4^beta/2)");
  app.add_option("--gamma", gamma, "Transfer exponent of the source covariates");
  app.add_option("--c-gamma", c_gamma, "Transfer constant input, in (0,1]");
  app.add_option("--q-lo", q_lo, "Lower density bound input");
  app.add_option("--kappa", kappa, "Exploration-coefficient input (default: derived from --mu)");
  app.add_option("--mu", mu_s, "Arm-pull probabilities in the source log, e.g. 0.5,0.5");
  app.add_option("--sigma", sigma, "Reward noise standard deviation");
  app.add_option("--alpha", alpha, "Margin exponent, diagnostic overlay only");
  app.add_option("--beta-lo", beta_lo, "Adaptive: lower smoothness bound");
  app.add_option("--beta-hi", beta_hi, "Adaptive: upper smoothness bound");
  app.add_option("--gamma-hi", gamma_hi, "Adaptive: upper bound on the transfer exponent");
  app.add_option("--trials", trials, "Number of Monte Carlo trials");
  app.add_option("--seed", seed, "Base seed; trial i uses a stream derived from (seed, i)");
  app.add_option("--checkpoints", checkpoints_s, "Comma-separated checkpoint timesteps");
  app.add_option("--out", out_s, "Output path");
  app.add_option("--format", format_s, "Output format: csv (per-trial traces) or json (summary)");
  app.add_option("--config", config_path, "JSON config file; flags override file values");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("shiftbandit");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  ExperimentConfig cfg;
  // File values first; explicit flags overwrite them below.
  if (app.count("--config") > 0)
    cfg = config_from_json_text(read_file(config_path), /*finalized=*/false);

  if (app.count("--algo") > 0) {
    if (algo_s != "transfer" && algo_s != "adaptive" && algo_s != "baseline")
      throw UsageError("unknown algorithm '" + algo_s + "' (expected transfer|adaptive|baseline)");
    cfg.algo = algorithm_from_string(algo_s);
  }
  if (app.count("--n-q") > 0) cfg.n_q = n_q;
  if (app.count("--n-p") > 0) cfg.n_p = n_p;
  if (app.count("--beta") > 0) cfg.beta = beta;
  if (app.count("--c-beta") > 0) cfg.c_beta = c_beta;
  if (app.count("--gamma") > 0) cfg.gamma = gamma;
  if (app.count("--c-gamma") > 0) cfg.c_gamma = c_gamma;
  if (app.count("--q-lo") > 0) cfg.q_lo = q_lo;
  if (app.count("--kappa") > 0) cfg.kappa = kappa;
  if (app.count("--mu") > 0) cfg.mu = parse_double_list(mu_s);
  if (app.count("--sigma") > 0) cfg.sigma = sigma;
  if (app.count("--alpha") > 0) cfg.alpha = alpha;
  if (app.count("--beta-lo") > 0) cfg.beta_lo = beta_lo;
  if (app.count("--beta-hi") > 0) cfg.beta_hi = beta_hi;
  if (app.count("--gamma-hi") > 0) cfg.gamma_hi = gamma_hi;
  if (app.count("--trials") > 0) cfg.trials = trials;
  if (app.count("--seed") > 0) cfg.seed = seed;
  if (app.count("--checkpoints") > 0) cfg.checkpoints = parse_int_list(checkpoints_s);
  if (app.count("--out") > 0) cfg.out = out_s;
  if (app.count("--format") > 0) cfg.format = format_from_string(format_s);

  cfg.finalize();
  return cfg;
}

}  // namespace shiftbandit
