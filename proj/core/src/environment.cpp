#include "shiftbandit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shiftbandit {

double bump_profile(double beta, double t) {
  if (t > 1.0) return 0.0;
  return std::pow(1.0 - t, beta);
}

namespace {

double linf_dist(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void check_point(const Point& x, int d) {
  if (static_cast<int>(x.size()) != d) throw std::domain_error("point has wrong dimension");
  for (double c : x)
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("point outside [0,1]^d");
}

}  // namespace

double RewardSpec::holder_constant() const {
  const double within = 0.5 * std::pow(4.0, beta);
  bool mixed = false;
  for (std::size_t i = 1; i < signs.size(); ++i)
    if (signs[i] != signs[0]) mixed = true;
  if (!mixed) return within;
  return std::max(within, std::pow(2.0, beta));
}

void RewardSpec::validate() const {
  if (d < 1) throw std::domain_error("dimension must be positive");
  if (num_arms < 1) throw std::domain_error("arm count must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0,1]");
  if (sigma < 0.0) throw std::domain_error("sigma must be non-negative");
  if (centers.size() != signs.size()) throw std::domain_error("centers/signs size mismatch");
  for (const Point& c : centers) check_point(c, d);
  for (int s : signs)
    if (s != 1 && s != -1) throw std::domain_error("signs must be +1 or -1");
  // Bump supports must have disjoint interiors so the sum stays in [0,1].
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      if (linf_dist(centers[i], centers[j]) < 0.5 - 1e-12)
        throw std::domain_error("bump centers closer than their support width");
}

RewardSpec make_bump_reward(double beta, double sigma, RngStream& rng) {
  RewardSpec spec;
  spec.d = 2;
  spec.num_arms = 2;
  spec.beta = beta;
  spec.sigma = sigma;
  spec.centers = {{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}};
  spec.signs.resize(4);
  for (int& s : spec.signs) s = (rng.next_u64() & 1) ? 1 : -1;
  spec.validate();
  return spec;
}

double eval_reward(const RewardSpec& spec, int arm, const Point& x) {
  if (arm < 0 || arm >= spec.num_arms) throw std::domain_error("arm index out of range");
  check_point(x, spec.d);
  if (arm == 0) return 0.5;
  double value = 0.5;
  for (std::size_t i = 0; i < spec.centers.size(); ++i)
    value += 0.5 * spec.signs[i] * bump_profile(spec.beta, 4.0 * linf_dist(x, spec.centers[i]));
  return value;
}

Point sample_target_context(int d, RngStream& rng) {
  Point x(d);
  for (double& c : x) c = rng.uniform01();
  return x;
}

Point sample_source_context(RngStream& rng, double gamma) {
  if (gamma < 0.0) throw std::domain_error("gamma must be non-negative");
  // Radius r in [0,1/2] with CDF (2r)^(gamma+2).
  const double u = rng.uniform01();
  const double r = 0.5 * std::pow(u, 1.0 / (gamma + 2.0));
  // Uniform point on the shell ||x - (1/2,1/2)||_inf = r.
  const auto side = static_cast<int>(rng.uniform_int(4));
  const double v = (2.0 * rng.uniform01() - 1.0) * r;
  Point x(2, 0.5);
  switch (side) {
    case 0: x[0] += r; x[1] += v; break;
    case 1: x[0] -= r; x[1] += v; break;
    case 2: x[0] += v; x[1] += r; break;
    default: x[0] += v; x[1] -= r; break;
  }
  for (double& c : x) c = std::clamp(c, 0.0, 1.0);
  return x;
}

double draw_reward(const RewardSpec& spec, int arm, const Point& x, RngStream& rng) {
  return eval_reward(spec, arm, x) + spec.sigma * rng.normal();
}

void SourceSpec::validate() const {
  if (gamma < 0.0) throw std::domain_error("gamma must be non-negative");
  if (n_p < 0) throw std::domain_error("n_p must be non-negative");
  if (mu.empty()) throw std::domain_error("mu must not be empty");
  double total = 0.0;
  for (double p : mu) {
    if (p < 0.0) throw std::domain_error("mu entries must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::domain_error("mu must sum to 1");
}

AuxDataset generate_aux_dataset(const RewardSpec& spec, const SourceSpec& src, RngStream& rng) {
  src.validate();
  if (static_cast<int>(src.mu.size()) != spec.num_arms)
    throw std::domain_error("mu size must equal the arm count");
  AuxDataset data;
  data.reserve(static_cast<std::size_t>(src.n_p));
  for (std::int64_t i = 0; i < src.n_p; ++i) {
    AuxSample s;
    s.x = sample_source_context(rng, src.gamma);
    const double u = rng.uniform01();
    double acc = 0.0;
    s.arm = spec.num_arms - 1;
    for (int k = 0; k < spec.num_arms; ++k) {
      acc += src.mu[k];
      if (u < acc) {
        s.arm = k;
        break;
      }
    }
    s.reward = draw_reward(spec, s.arm, s.x, rng);
    data.push_back(std::move(s));
  }
  return data;
}

double exploration_coefficient(const std::vector<double>& mu) {
  if (mu.empty()) throw std::domain_error("mu must not be empty");
  double lo = mu[0];
  for (double p : mu) {
    if (p < 0.0) throw std::domain_error("mu entries must be non-negative");
    lo = std::min(lo, p);
  }
  return static_cast<double>(mu.size()) * lo;
}

OracleGap oracle_gap(const RewardSpec& spec, const Point& x) {
  OracleGap g;
  g.f_first = eval_reward(spec, 0, x);
  g.best_arm = 0;
  double lo = g.f_first;
  for (int k = 1; k < spec.num_arms; ++k) {
    const double f = eval_reward(spec, k, x);
    lo = std::min(lo, f);
    if (f > g.f_first) {
      g.f_first = f;
      g.best_arm = k;
    }
  }
  if (lo == g.f_first) {
    g.f_second = g.f_first;  // all arms tie
    return g;
  }
  double second = lo;
  for (int k = 0; k < spec.num_arms; ++k) {
    const double f = eval_reward(spec, k, x);
    if (f < g.f_first) second = std::max(second, f);
  }
  g.f_second = second;
  return g;
}

void ProblemParams::validate() const {
  if (alpha < 0.0) throw std::domain_error("alpha must be non-negative");
  if (!(c_alpha > 0.0) || !(c_beta > 0.0)) throw std::domain_error("constants must be positive");
  if (!(q_lo > 0.0 && q_lo <= q_hi)) throw std::domain_error("need 0 < q_lo <= q_hi");
  if (!(c_gamma > 0.0 && c_gamma <= 1.0)) throw std::domain_error("c_gamma must lie in (0,1]");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::domain_error("kappa must lie in [0,1]");
}

BumpShiftEnvironment::BumpShiftEnvironment(RewardSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

Point BumpShiftEnvironment::sample_context(RngStream& rng) const {
  return sample_target_context(spec_.d, rng);
}

double BumpShiftEnvironment::mean_reward(int arm, const Point& x) const {
  return eval_reward(spec_, arm, x);
}

double BumpShiftEnvironment::draw_reward(int arm, const Point& x, RngStream& rng) const {
  return shiftbandit::draw_reward(spec_, arm, x, rng);
}

OracleGap BumpShiftEnvironment::oracle_gap(const Point& x) const {
  return shiftbandit::oracle_gap(spec_, x);
}

}  // namespace shiftbandit
