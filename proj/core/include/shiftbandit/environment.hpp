#pragma once
// Synthetic covariate-shift bandit environments: bump reward functions on
// [0,1]^2, target/source covariate samplers, Gaussian reward noise,
// auxiliary-dataset generation and oracle quantities.

#include <cstdint>
#include <vector>

#include "shiftbandit/geometry.hpp"
#include "shiftbandit/rng.hpp"

namespace shiftbandit {

// Bump profile (1-t)^beta on [0,1], zero beyond 1.
double bump_profile(double beta, double t);

// Reward construction: f_0 == 1/2 and
//   f_1(x) = 1/2 + 1/2 * sum_i signs[i] * bump_profile(beta, 4*||x - centers[i]||_inf).
// Arms are 0-based throughout the library.
struct RewardSpec {
  int d = 2;
  int num_arms = 2;
  double beta = 0.8;
  double sigma = 0.05;
  std::vector<Point> centers;
  std::vector<int> signs;  // each +1 or -1

  // Exact Holder constant of the realized construction (w.r.t. ||.||_inf).
  // Within one bump the constant is 4^beta/2; a pair of bumps with opposite
  // signs sharpens it to 2^beta, which dominates for beta <= 1.
  double holder_constant() const;

  void validate() const;  // throws std::domain_error
};

// Four bumps centered at (1/2 +- 1/4, 1/2 +- 1/4) with signs drawn uniformly
// from {-1,+1} using `rng`.
RewardSpec make_bump_reward(double beta, double sigma, RngStream& rng);

double eval_reward(const RewardSpec& spec, int arm, const Point& x);

Point sample_target_context(int d, RngStream& rng);

// Draws from the density p(x) ~ ||x - (1/2,1/2)||_inf^gamma on [0,1]^2 via
// inverse CDF on the radius, F(r) = (2r)^(gamma+2), then a uniform point on
// the square shell of that radius.
Point sample_source_context(RngStream& rng, double gamma);

// Gaussian reward with mean eval_reward(spec, arm, x) and sd spec.sigma.
double draw_reward(const RewardSpec& spec, int arm, const Point& x, RngStream& rng);

struct SourceSpec {
  double gamma = 1.0;
  std::vector<double> mu;  // arm-pull probabilities, sums to 1
  std::int64_t n_p = 0;

  void validate() const;
};

struct AuxSample {
  Point x;
  int arm = 0;
  double reward = 0.0;
};

using AuxDataset = std::vector<AuxSample>;

AuxDataset generate_aux_dataset(const RewardSpec& spec, const SourceSpec& src, RngStream& rng);

// K * min_k mu(k) for a state-independent logging policy.
double exploration_coefficient(const std::vector<double>& mu);

struct OracleGap {
  double f_first = 0.0;   // pointwise maximum of the reward functions
  double f_second = 0.0;  // second maximum; equals f_first when all arms tie
  int best_arm = 0;       // argmax, lowest index on ties
};

OracleGap oracle_gap(const RewardSpec& spec, const Point& x);

// Model constants used for diagnostics and as algorithm inputs.
struct ProblemParams {
  double alpha = 1.0;
  double c_alpha = 1.0;
  double c_beta = 1.0;
  double q_lo = 1.0;
  double q_hi = 1.0;
  double c_gamma = 1.0;
  double kappa = 1.0;

  void validate() const;
};

// Minimal surface a policy-driving loop needs; custom environments plug in here.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual int dim() const = 0;
  virtual int num_arms() const = 0;
  virtual Point sample_context(RngStream& rng) const = 0;
  virtual double mean_reward(int arm, const Point& x) const = 0;
  virtual double draw_reward(int arm, const Point& x, RngStream& rng) const = 0;
  virtual OracleGap oracle_gap(const Point& x) const = 0;
};

class BumpShiftEnvironment final : public Environment {
 public:
  explicit BumpShiftEnvironment(RewardSpec spec);

  int dim() const override { return spec_.d; }
  int num_arms() const override { return spec_.num_arms; }
  Point sample_context(RngStream& rng) const override;
  double mean_reward(int arm, const Point& x) const override;
  double draw_reward(int arm, const Point& x, RngStream& rng) const override;
  OracleGap oracle_gap(const Point& x) const override;

  const RewardSpec& spec() const { return spec_; }

 private:
  RewardSpec spec_;
};

}  // namespace shiftbandit
