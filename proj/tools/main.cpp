// CLI entry point: parse flags/config, run the Monte Carlo experiment,
// write the trace CSV or summary JSON, print a one-line digest.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "shiftbandit/harness.hpp"

int main(int argc, char** argv) {
  using namespace shiftbandit;

  ExperimentConfig cfg;
  try {
    cfg = parse_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const HelpRequested& help) {
    std::printf("%s", help.what());
    return 0;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "shiftbandit: %s\n", e.what());
    return 2;
  }

  try {
    const ExperimentResult result = run_experiment(cfg);
    emit_results(result.summary, result.traces, cfg.format, cfg.out);
    const CheckpointStat& last = result.summary.checkpoints.back();
    std::printf("%s: %lld trials, n_q=%lld, regret %.4g +- %.4g at t=%lld -> %s (%.2fs)\n",
                to_string(cfg.algo).c_str(), static_cast<long long>(cfg.trials),
                static_cast<long long>(cfg.n_q), last.mean, last.stddev,
                static_cast<long long>(last.t), cfg.out.c_str(),
                result.summary.wall_clock_seconds);
    if (result.summary.minimax_rate_overlay)
      std::printf("minimax rate overlay: %.6g\n", *result.summary.minimax_rate_overlay);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "shiftbandit: %s\n", e.what());
    return 1;
  }
  return 0;
}
