#include "shiftbandit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "shiftbandit/adaptive.hpp"
#include "shiftbandit/rng.hpp"
#include "shiftbandit/transfer_policy.hpp"

namespace shiftbandit {

using nlohmann::json;

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::transfer: return "transfer";
    case Algorithm::adaptive: return "adaptive";
    case Algorithm::baseline: return "baseline";
    case Algorithm::oracle: return "oracle";
    case Algorithm::constant_arm: return "constant";
  }
  return "unknown";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "transfer") return Algorithm::transfer;
  if (s == "adaptive") return Algorithm::adaptive;
  if (s == "baseline") return Algorithm::baseline;
  if (s == "oracle") return Algorithm::oracle;
  if (s == "constant") return Algorithm::constant_arm;
  throw UsageError("unknown algorithm '" + s + "' (expected transfer|adaptive|baseline)");
}

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw UsageError("unknown format '" + s + "' (expected csv|json)");
}

std::vector<std::int64_t> default_checkpoints(std::int64_t n_q) {
  const int want = 50;
  std::vector<std::int64_t> cps;
  const double log_n = std::log(static_cast<double>(n_q));
  for (int i = 0; i < want; ++i) {
    const double frac = want == 1 ? 1.0 : static_cast<double>(i) / (want - 1);
    auto t = static_cast<std::int64_t>(std::llround(std::exp(frac * log_n)));
    t = std::clamp<std::int64_t>(t, 1, n_q);
    if (cps.empty() || t > cps.back()) cps.push_back(t);
  }
  if (cps.back() != n_q) cps.push_back(n_q);
  return cps;
}

void ExperimentConfig::finalize() {
  if (n_q < 1) throw UsageError("n_q is required and must be at least 1");
  if (d != 2 || num_arms != 2)
    throw UsageError("the bump environment is 2-dimensional with 2 arms");
  if (!(beta > 0.0 && beta <= 1.0)) throw UsageError("beta must lie in (0,1]");
  if (sigma < 0.0) throw UsageError("sigma must be non-negative");
  if (gamma < 0.0) throw UsageError("gamma must be non-negative");
  if (n_p < 0) throw UsageError("n_p must be non-negative");
  if (trials < 1) throw UsageError("trials must be at least 1");
  if (algo == Algorithm::baseline) n_p = 0;

  if (mu.empty()) mu.assign(static_cast<std::size_t>(num_arms), 1.0 / num_arms);
  if (static_cast<int>(mu.size()) != num_arms)
    throw UsageError("mu must list one probability per arm");
  double total = 0.0;
  for (double p : mu) {
    if (p < 0.0) throw UsageError("mu entries must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw UsageError("mu must sum to 1");

  if (!c_beta) c_beta = 0.5 * std::pow(4.0, beta);
  if (!(*c_beta > 0.0)) throw UsageError("c_beta must be positive");
  if (!kappa) kappa = exploration_coefficient(mu);
  if (!(*kappa >= 0.0 && *kappa <= 1.0)) throw UsageError("kappa must lie in [0,1]");
  if (!(c_gamma > 0.0 && c_gamma <= 1.0)) throw UsageError("c_gamma must lie in (0,1]");
  if (!(q_lo > 0.0)) throw UsageError("q_lo must be positive");
  if (!(beta_lo > 0.0 && beta_lo < beta_hi && beta_hi <= 1.0))
    throw UsageError("smoothness bracket must satisfy 0 < beta_lo < beta_hi <= 1");
  if (gamma_hi < 0.0) throw UsageError("gamma_hi must be non-negative");
  if (alpha) {
    if (*alpha < 0.0) throw UsageError("alpha must be non-negative");
    if (*alpha * beta > static_cast<double>(d))
      throw UsageError("alpha*beta must not exceed the dimension");
  }
  if (algo == Algorithm::constant_arm && (constant_arm < 0 || constant_arm >= num_arms))
    throw UsageError("constant arm index out of range");

  if (checkpoints.empty()) {
    checkpoints = default_checkpoints(n_q);
  } else {
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    if (checkpoints.front() < 1 || checkpoints.back() > n_q)
      throw UsageError("checkpoints must lie in [1, n_q]");
  }
  if (out.empty()) throw UsageError("output path must not be empty");
}

std::unique_ptr<Policy> make_policy(const ExperimentConfig& cfg, const Environment& env,
                                    AuxDataset aux, std::uint64_t policy_seed) {
  switch (cfg.algo) {
    case Algorithm::transfer:
    case Algorithm::baseline: {
      TransferConfig tc;
      tc.bounds.beta = cfg.beta;
      tc.bounds.c_beta = *cfg.c_beta;
      tc.bounds.gamma = cfg.gamma;
      tc.bounds.kappa = *cfg.kappa;
      tc.bounds.n_q = cfg.n_q;
      tc.bounds.n_p = static_cast<std::int64_t>(aux.size());
      tc.bounds.d = cfg.d;
      tc.c_gamma = cfg.c_gamma;
      tc.q_lo = cfg.q_lo;
      tc.num_arms = cfg.num_arms;
      return std::make_unique<TransferPolicy>(tc, std::move(aux));
    }
    case Algorithm::adaptive: {
      AdaptiveConfig ac;
      ac.params.beta_lo = cfg.beta_lo;
      ac.params.beta_hi = cfg.beta_hi;
      ac.params.c_beta_hi = *cfg.c_beta;
      ac.params.gamma_hi = cfg.gamma_hi;
      ac.n_q = cfg.n_q;
      ac.d = cfg.d;
      ac.num_arms = cfg.num_arms;
      return std::make_unique<AdaptivePolicy>(ac, std::move(aux), policy_seed);
    }
    case Algorithm::oracle:
      return std::make_unique<OraclePolicy>(env);
    case Algorithm::constant_arm:
      return std::make_unique<ConstantPolicy>(cfg.constant_arm);
  }
  throw std::logic_error("unhandled algorithm");
}

RegretTrace run_trial(const ExperimentConfig& raw, std::int64_t trial_index) {
  ExperimentConfig cfg = raw;
  cfg.finalize();

  const std::uint64_t root = derive_seed(cfg.seed, static_cast<std::uint64_t>(trial_index));
  RngStream rng_env(derive_seed(root, 1));
  RngStream rng_aux(derive_seed(root, 2));
  const std::uint64_t policy_seed = derive_seed(root, 3);

  // Signs are drawn before the auxiliary samples, so the trial's reward
  // functions and context stream are shared across algorithms and n_p.
  const RewardSpec spec = make_bump_reward(cfg.beta, cfg.sigma, rng_aux);
  SourceSpec src;
  src.gamma = cfg.gamma;
  src.mu = cfg.mu;
  src.n_p = cfg.n_p;
  AuxDataset aux = generate_aux_dataset(spec, src, rng_aux);
  const BumpShiftEnvironment env(spec);
  const auto policy = make_policy(cfg, env, std::move(aux), policy_seed);

  RegretTrace trace;
  trace.trial = trial_index;
  trace.cum_regret.resize(cfg.checkpoints.size(), 0.0);
  double cum = 0.0;
  std::size_t next_cp = 0;
  for (std::int64_t t = 1; t <= cfg.n_q; ++t) {
    const Point x = env.sample_context(rng_env);
    const int arm = policy->select(x);
    const double reward = env.draw_reward(arm, x, rng_env);
    policy->observe(x, arm, reward);
    cum += env.oracle_gap(x).f_first - env.mean_reward(arm, x);
    while (next_cp < cfg.checkpoints.size() && cfg.checkpoints[next_cp] == t)
      trace.cum_regret[next_cp++] = cum;
  }
  return trace;
}

ExperimentResult run_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  cfg.finalize();
  const auto start = std::chrono::steady_clock::now();

  std::vector<RegretTrace> traces(static_cast<std::size_t>(cfg.trials));
  std::atomic<std::int64_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      try {
        traces[static_cast<std::size_t>(i)] = run_trial(cfg, i);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::make_exception_ptr(
              std::runtime_error("trial " + std::to_string(i) + " failed: " + e.what()));
        return;
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<unsigned>(
      std::min<std::int64_t>(cfg.trials, static_cast<std::int64_t>(hw)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.traces = std::move(traces);
  result.summary.config = cfg;
  result.summary.checkpoints.resize(cfg.checkpoints.size());
  for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
    double mean = 0.0;
    for (const RegretTrace& tr : result.traces) mean += tr.cum_regret[i];
    mean /= static_cast<double>(cfg.trials);
    double var = 0.0;
    for (const RegretTrace& tr : result.traces) {
      const double dev = tr.cum_regret[i] - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(cfg.trials);
    result.summary.checkpoints[i] = {cfg.checkpoints[i], mean, std::sqrt(var)};
  }
  if (cfg.alpha)
    result.summary.minimax_rate_overlay =
        minimax_rate(cfg.n_q, cfg.n_p, *cfg.kappa, cfg.beta, *cfg.alpha, cfg.gamma, cfg.d);
  result.summary.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double minimax_rate(std::int64_t n_q, std::int64_t n_p, double kappa, double beta, double alpha,
                    double gamma, int d) {
  if (n_q < 1 || n_p < 0) throw std::domain_error("invalid sample sizes");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0,1]");
  if (alpha < 0.0 || gamma < 0.0 || d < 1) throw std::domain_error("invalid rate parameters");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::domain_error("kappa must lie in [0,1]");
  if (alpha * beta > static_cast<double>(d))
    throw std::domain_error("alpha*beta must not exceed the dimension");
  const double dd = static_cast<double>(d);
  const double effective =
      std::pow(kappa * static_cast<double>(n_p), (dd + 2.0 * beta) / (dd + 2.0 * beta + gamma));
  return static_cast<double>(n_q) *
         std::pow(static_cast<double>(n_q) + effective, -beta * (1.0 + alpha) / (2.0 * beta + dd));
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["algo"] = to_string(cfg.algo);
  j["n_q"] = cfg.n_q;
  j["n_p"] = cfg.n_p;
  j["beta"] = cfg.beta;
  j["c_beta"] = cfg.c_beta.value_or(0.5 * std::pow(4.0, cfg.beta));
  j["gamma"] = cfg.gamma;
  j["c_gamma"] = cfg.c_gamma;
  j["q_lo"] = cfg.q_lo;
  if (cfg.kappa) j["kappa"] = *cfg.kappa;
  j["mu"] = cfg.mu;
  j["sigma"] = cfg.sigma;
  if (cfg.alpha) j["alpha"] = *cfg.alpha;
  j["beta_lo"] = cfg.beta_lo;
  j["beta_hi"] = cfg.beta_hi;
  j["gamma_hi"] = cfg.gamma_hi;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["checkpoints"] = cfg.checkpoints;
  j["out"] = cfg.out;
  j["format"] = to_string(cfg.format);
  return j;
}

void apply_json_key(ExperimentConfig& cfg, const std::string& key, const json& value) {
  try {
    if (key == "algo")
      cfg.algo = algorithm_from_string(value.get<std::string>());
    else if (key == "n_q")
      cfg.n_q = value.get<std::int64_t>();
    else if (key == "n_p")
      cfg.n_p = value.get<std::int64_t>();
    else if (key == "beta")
      cfg.beta = value.get<double>();
    else if (key == "c_beta")
      cfg.c_beta = value.get<double>();
    else if (key == "gamma")
      cfg.gamma = value.get<double>();
    else if (key == "c_gamma")
      cfg.c_gamma = value.get<double>();
    else if (key == "q_lo")
      cfg.q_lo = value.get<double>();
    else if (key == "kappa")
      cfg.kappa = value.get<double>();
    else if (key == "mu")
      cfg.mu = value.get<std::vector<double>>();
    else if (key == "sigma")
      cfg.sigma = value.get<double>();
    else if (key == "alpha")
      cfg.alpha = value.get<double>();
    else if (key == "beta_lo")
      cfg.beta_lo = value.get<double>();
    else if (key == "beta_hi")
      cfg.beta_hi = value.get<double>();
    else if (key == "gamma_hi")
      cfg.gamma_hi = value.get<double>();
    else if (key == "trials")
      cfg.trials = value.get<std::int64_t>();
    else if (key == "seed")
      cfg.seed = value.get<std::uint64_t>();
    else if (key == "checkpoints")
      cfg.checkpoints = value.get<std::vector<std::int64_t>>();
    else if (key == "out")
      cfg.out = value.get<std::string>();
    else if (key == "format")
      cfg.format = format_from_string(value.get<std::string>());
    else
      throw UsageError("unknown config key '" + key + "'");
  } catch (const json::exception& e) {
    throw UsageError("bad value for config key '" + key + "': " + e.what());
  }
}

}  // namespace

std::string trace_csv(const Summary& summary, const std::vector<RegretTrace>& traces) {
  const std::string algo = to_string(summary.config.algo);
  std::string out = "algo,trial,checkpoint_t,cum_regret\n";
  for (const RegretTrace& tr : traces) {
    for (std::size_t i = 0; i < tr.cum_regret.size(); ++i) {
      out += algo;
      out += ',';
      out += std::to_string(tr.trial);
      out += ',';
      out += std::to_string(summary.config.checkpoints[i]);
      out += ',';
      out += format_double(tr.cum_regret[i]);
      out += '\n';
    }
  }
  return out;
}

std::string summary_json(const Summary& summary) {
  json j;
  j["config"] = config_to_json(summary.config);
  json cps = json::array();
  for (const CheckpointStat& c : summary.checkpoints)
    cps.push_back({{"t", c.t}, {"mean", c.mean}, {"std", c.stddev}});
  j["checkpoints"] = cps;
  if (summary.minimax_rate_overlay) j["minimax_rate_overlay"] = *summary.minimax_rate_overlay;
  j["wall_clock_seconds"] = summary.wall_clock_seconds;
  return j.dump(2) + "\n";
}

void emit_results(const Summary& summary, const std::vector<RegretTrace>& traces,
                  OutputFormat format, const std::string& path) {
  const std::string payload =
      format == OutputFormat::csv ? trace_csv(summary, traces) : summary_json(summary);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << payload;
  file.flush();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

ExperimentConfig config_from_json_text(const std::string& text, bool finalized) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) apply_json_key(cfg, key, value);
  if (finalized) cfg.finalize();
  return cfg;
}

std::string config_json_text(const ExperimentConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

}  // namespace shiftbandit
