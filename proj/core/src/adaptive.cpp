#include "shiftbandit/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace shiftbandit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest integer strictly greater than a.
std::int64_t strict_ceil(double a) { return static_cast<std::int64_t>(std::floor(a)) + 1; }

double linf_dist(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

void AdaptiveParams::validate() const {
  if (!(beta_lo > 0.0 && beta_lo < beta_hi && beta_hi <= 1.0))
    throw std::domain_error("smoothness bracket must satisfy 0 < beta_lo < beta_hi <= 1");
  if (!(c_beta_hi > 0.0)) throw std::domain_error("c_beta_hi must be positive");
  if (gamma_hi < 0.0) throw std::domain_error("gamma_hi must be non-negative");
}

SmoothnessScales smoothness_scales(std::int64_t n_q, std::int64_t n_p, const AdaptiveParams& ap,
                                   int d) {
  ap.validate();
  if (n_q < 1) throw std::domain_error("n_q must be at least 1");
  if (n_p < 0) throw std::domain_error("n_p must be non-negative");
  if (d < 1) throw std::domain_error("dimension must be positive");

  SmoothnessScales s;
  s.from_source = n_p > n_q;
  const auto n = static_cast<double>(std::max(n_q, n_p));
  const double shift = s.from_source ? ap.gamma_hi : 0.0;
  const double denom = static_cast<double>(d) + 2.0 * ap.beta_hi + shift;
  const double ln_n = std::log(n);
  // log2(log n) clamped at 0 so the levels stay ordered for tiny n.
  const double corr = std::log2(std::max(ln_n, 1.0)) / ap.beta_lo;

  const int level_max = 62 / d;
  s.l1 = static_cast<int>(std::clamp<std::int64_t>(
      strict_ceil(ap.beta_lo * std::log2(n) / (denom * denom)), 1, level_max));
  s.l2 = static_cast<int>(
      std::clamp<std::int64_t>(strict_ceil(s.l1 + corr), s.l1, level_max));
  s.l3 = static_cast<int>(std::clamp<std::int64_t>(
      strict_ceil(ap.beta_hi / ap.beta_lo * s.l1 + corr), s.l2, level_max));

  const double t_raw = std::pow(n, ap.beta_lo / denom) *
                       std::pow(ln_n, (static_cast<double>(d) + ap.beta_hi + shift) / ap.beta_lo);
  const std::int64_t cap = s.from_source ? n_p : n_q;
  if (!(t_raw >= 1.0))
    s.budget = 1;
  else if (t_raw >= static_cast<double>(cap))
    s.budget = cap;
  else
    s.budget = static_cast<std::int64_t>(std::ceil(t_raw));
  s.budget = std::min(s.budget, cap);
  return s;
}

namespace {

// Per-bin, per-arm (count, sum) at one level, keyed by the Morton code of
// the bin. A grid point's local average at its own bin's level equals the
// bin mean: every in-bin sample is within one side length of the point, so
// the window indicator is identically one.
using LevelTable = std::unordered_map<std::uint64_t, std::vector<std::pair<std::int64_t, double>>>;

LevelTable build_level_table(const std::vector<LabeledSample>& samples, int num_arms, int d,
                             int level) {
  LevelTable table;
  table.reserve(samples.size());
  std::vector<std::int64_t> cells(static_cast<std::size_t>(d));
  for (const LabeledSample& s : samples) {
    if (static_cast<int>(s.x.size()) != d) throw std::domain_error("sample has wrong dimension");
    if (s.arm < 0 || s.arm >= num_arms) throw std::domain_error("sample arm out of range");
    for (int i = 0; i < d; ++i)
      cells[static_cast<std::size_t>(i)] = cell_of(s.x[static_cast<std::size_t>(i)], level);
    auto& per_arm = table[interleave_cells(cells, level)];
    if (per_arm.empty()) per_arm.assign(static_cast<std::size_t>(num_arms), {0, 0.0});
    per_arm[static_cast<std::size_t>(s.arm)].first += 1;
    per_arm[static_cast<std::size_t>(s.arm)].second += s.y;
  }
  return table;
}

double table_mean(const LevelTable& table, std::uint64_t key, int arm) {
  const auto it = table.find(key);
  if (it == table.end()) return 0.0;
  const auto& [count, sum] = it->second[static_cast<std::size_t>(arm)];
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace

BetaFit estimate_beta_raw(const std::vector<LabeledSample>& samples, int num_arms, int d, int l1,
                          int l2, int l3, std::int64_t n, BetaLogBase base, std::int64_t grid_cap,
                          RngStream& rng) {
  if (num_arms < 1 || d < 1) throw std::domain_error("invalid arm count or dimension");
  if (l1 < 1 || l2 < 1 || l3 < 1) throw std::domain_error("levels must be positive");
  if (static_cast<std::int64_t>(std::max({l1, l2, l3})) * d > 62)
    throw std::domain_error("level exceeds the 64-bit index space");
  if (n < 1) throw std::domain_error("n must be at least 1");
  if (grid_cap < 1) throw std::domain_error("grid_cap must be positive");

  const LevelTable coarse = build_level_table(samples, num_arms, d, l1);
  const LevelTable fine = build_level_table(samples, num_arms, d, l2);

  const std::int64_t per_dim = (std::int64_t{1} << l3) + 1;
  const double total = std::pow(static_cast<double>(per_dim), d);

  std::vector<std::int64_t> grid(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> cells(static_cast<std::size_t>(d));
  Point x(static_cast<std::size_t>(d));
  double sup_gap = 0.0;

  const auto eval_point = [&]() {
    for (int i = 0; i < d; ++i)
      x[static_cast<std::size_t>(i)] = std::ldexp(static_cast<double>(grid[static_cast<std::size_t>(i)]), -l3);
    for (int i = 0; i < d; ++i) cells[static_cast<std::size_t>(i)] = cell_of(x[static_cast<std::size_t>(i)], l1);
    const std::uint64_t key1 = interleave_cells(cells, l1);
    for (int i = 0; i < d; ++i) cells[static_cast<std::size_t>(i)] = cell_of(x[static_cast<std::size_t>(i)], l2);
    const std::uint64_t key2 = interleave_cells(cells, l2);
    for (int arm = 0; arm < num_arms; ++arm) {
      const double gap = std::abs(table_mean(coarse, key1, arm) - table_mean(fine, key2, arm));
      sup_gap = std::max(sup_gap, gap);
    }
  };

  if (total <= static_cast<double>(grid_cap)) {
    for (;;) {
      eval_point();
      int i = d - 1;
      while (i >= 0 && grid[static_cast<std::size_t>(i)] == per_dim - 1) {
        grid[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      grid[static_cast<std::size_t>(i)] += 1;
    }
  } else {
    std::fprintf(stderr,
                 "shiftbandit: estimation grid has %.3g points, subsampling %lld at random\n",
                 total, static_cast<long long>(grid_cap));
    for (std::int64_t j = 0; j < grid_cap; ++j) {
      for (int i = 0; i < d; ++i) grid[static_cast<std::size_t>(i)] = rng.uniform_int(per_dim);
      eval_point();
    }
  }

  const double log_gap =
      base == BetaLogBase::base2 ? std::log2(sup_gap) : std::log(sup_gap);
  const double corr =
      n >= 2 ? std::log2(std::log(static_cast<double>(n))) / std::log2(static_cast<double>(n))
             : 0.0;
  return {-log_gap / static_cast<double>(l1) - corr, sup_gap};
}

double local_average(const std::vector<XY>& data, const Point& center, double window,
                     const BinId& bin) {
  if (!(window > 0.0)) throw std::domain_error("window must be positive");
  std::int64_t count = 0;
  double sum = 0.0;
  for (const XY& e : data) {
    if (!owns(bin, e.x)) continue;
    if (linf_dist(e.x, center) > window) continue;
    ++count;
    sum += e.y;
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

SmoothnessEstimate estimate_smoothness(std::int64_t n_q, const AdaptiveParams& ap,
                                       const Environment& env, const AuxDataset& aux,
                                       RngStream& rng, BetaLogBase base, std::int64_t grid_cap) {
  const auto n_p = static_cast<std::int64_t>(aux.size());
  const SmoothnessScales scales = smoothness_scales(n_q, n_p, ap, env.dim());

  std::vector<LabeledSample> samples;
  samples.reserve(static_cast<std::size_t>(scales.budget));
  SmoothnessEstimate est;
  est.l1 = scales.l1;
  est.l2 = scales.l2;
  est.l3 = scales.l3;
  if (scales.from_source) {
    for (std::int64_t i = 0; i < scales.budget; ++i)
      samples.push_back({aux[static_cast<std::size_t>(i)].x, aux[static_cast<std::size_t>(i)].arm,
                         aux[static_cast<std::size_t>(i)].reward});
    est.s_p = scales.budget;
  } else {
    for (std::int64_t t = 0; t < scales.budget; ++t) {
      Point x = env.sample_context(rng);
      const auto arm = static_cast<int>(rng.uniform_int(env.num_arms()));
      const double y = env.draw_reward(arm, x, rng);
      samples.push_back({std::move(x), arm, y});
    }
    est.s_q = scales.budget;
  }

  const BetaFit fit = estimate_beta_raw(samples, env.num_arms(), env.dim(), scales.l1, scales.l2,
                                        scales.l3, std::max(n_q, n_p), base, grid_cap, rng);
  est.sup_gap = fit.sup_gap;
  est.beta_hat = std::min(std::max(ap.beta_lo, fit.beta_raw), ap.beta_hi);
  return est;
}

double adaptive_confidence_bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin,
                                 double beta_hat, double c_beta_hi, std::int64_t n) {
  if (tau < 0) throw std::domain_error("tau must be non-negative");
  if (n < 1) throw std::domain_error("n must be at least 1");
  const double clamp = 2.0 * c_beta_hi * std::pow(bin.side(), beta_hat);
  const std::int64_t m = tau + agg.n_aux;
  if (m == 0) return kInf;
  const double dev =
      2.0 * std::sqrt(2.0 * std::log(static_cast<double>(n)) / static_cast<double>(m));
  return std::max(dev, clamp);
}

std::int64_t adaptive_pull_limit(const ArmAggregate& agg, const BinId& bin, double beta_hat,
                                 double c_beta_hi, std::int64_t n) {
  const double clamp = 2.0 * c_beta_hi * std::pow(bin.side(), beta_hat);
  const auto satisfied = [&](std::int64_t tau) {
    return adaptive_confidence_bound(tau, agg, bin, beta_hat, c_beta_hi, n) <= clamp;
  };
  // Closed-form threshold, then pin the exact crossing of the predicate.
  const double need = 2.0 * std::log(static_cast<double>(n)) /
                          (c_beta_hi * c_beta_hi * std::pow(bin.side(), 2.0 * beta_hat)) -
                      static_cast<double>(agg.n_aux);
  std::int64_t tau = need > 0.0 ? static_cast<std::int64_t>(std::ceil(need)) : 0;
  while (!satisfied(tau)) ++tau;
  while (tau > 0 && satisfied(tau - 1)) --tau;
  return tau;
}

void AdaptiveConfig::validate() const {
  params.validate();
  if (n_q < 1) throw std::domain_error("n_q must be at least 1");
  if (d < 1) throw std::domain_error("dimension must be positive");
  if (num_arms < 1) throw std::domain_error("arm count must be positive");
  if (grid_cap < 1) throw std::domain_error("grid_cap must be positive");
  if (depth_cap < 1) throw std::domain_error("depth_cap must be positive");
}

AdaptivePolicy::AdaptivePolicy(const AdaptiveConfig& cfg, AuxDataset aux, std::uint64_t seed)
    : cfg_(cfg), aux_(std::move(aux)), rng_(derive_seed(seed, 0x5e71)) {
  cfg_.validate();
  scales_ = smoothness_scales(cfg_.n_q, static_cast<std::int64_t>(aux_.size()), cfg_.params, cfg_.d);
  if (scales_.from_source) {
    std::vector<LabeledSample> samples;
    samples.reserve(static_cast<std::size_t>(scales_.budget));
    for (std::int64_t i = 0; i < scales_.budget; ++i)
      samples.push_back({aux_[static_cast<std::size_t>(i)].x, aux_[static_cast<std::size_t>(i)].arm,
                         aux_[static_cast<std::size_t>(i)].reward});
    finalize(samples, 0, scales_.budget);
  } else {
    collected_.reserve(static_cast<std::size_t>(scales_.budget));
  }
}

AdaptivePolicy::AdaptivePolicy(const AdaptiveConfig& cfg, AuxDataset aux, FixedExponentTag,
                               double beta_hat)
    : cfg_(cfg), aux_(std::move(aux)), rng_(derive_seed(0, 0x5e71)) {
  cfg_.validate();
  scales_ = smoothness_scales(cfg_.n_q, static_cast<std::int64_t>(aux_.size()), cfg_.params, cfg_.d);
  SmoothnessEstimate est;
  est.beta_hat = std::min(std::max(cfg_.params.beta_lo, beta_hat), cfg_.params.beta_hi);
  estimate_ = est;
  build_tree(est.beta_hat, 0);
}

AdaptivePolicy AdaptivePolicy::with_fixed_exponent(const AdaptiveConfig& cfg, AuxDataset aux,
                                                   double beta_hat) {
  return AdaptivePolicy(cfg, std::move(aux), FixedExponentTag{}, beta_hat);
}

std::int64_t AdaptivePolicy::n_total() const {
  return std::max(cfg_.n_q, static_cast<std::int64_t>(aux_.size()));
}

void AdaptivePolicy::finalize(const std::vector<LabeledSample>& samples, std::int64_t s_q,
                              std::int64_t s_p) {
  const BetaFit fit = estimate_beta_raw(samples, cfg_.num_arms, cfg_.d, scales_.l1, scales_.l2,
                                        scales_.l3, n_total(), cfg_.beta_log_base, cfg_.grid_cap,
                                        rng_);
  SmoothnessEstimate est;
  est.beta_hat = std::min(std::max(cfg_.params.beta_lo, fit.beta_raw), cfg_.params.beta_hi);
  est.s_q = s_q;
  est.s_p = s_p;
  est.l1 = scales_.l1;
  est.l2 = scales_.l2;
  est.l3 = scales_.l3;
  est.sup_gap = fit.sup_gap;
  estimate_ = est;
  build_tree(est.beta_hat, s_p);
}

void AdaptivePolicy::build_tree(double beta_hat, std::int64_t s_p) {
  // Only the auxiliary data left over after estimation feeds the tree.
  AuxDataset remainder(aux_.begin() + static_cast<std::ptrdiff_t>(s_p), aux_.end());
  model_.emplace(beta_hat, cfg_.params.c_beta_hi, n_total(), cfg_.depth_cap);
  core_.emplace(cfg_.d, cfg_.num_arms, std::move(remainder), *model_);
}

int AdaptivePolicy::select(const Point& x) {
  if (core_) return core_->select(x);
  if (static_cast<int>(x.size()) != cfg_.d) throw std::domain_error("point has wrong dimension");
  for (double c : x)
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("point outside [0,1]^d");
  if (pending_arm_ != -1) throw std::logic_error("select called with an unobserved pull pending");
  pending_arm_ = static_cast<int>(rng_.uniform_int(cfg_.num_arms));
  return pending_arm_;
}

void AdaptivePolicy::observe(const Point& x, int arm, double reward) {
  if (core_) {
    core_->observe(x, arm, reward);
    return;
  }
  if (pending_arm_ == -1 || arm != pending_arm_)
    throw std::logic_error("observe does not match the preceding select");
  collected_.push_back({x, arm, reward});
  pending_arm_ = -1;
  if (static_cast<std::int64_t>(collected_.size()) == scales_.budget) {
    finalize(collected_, scales_.budget, 0);
    std::vector<LabeledSample>().swap(collected_);
  }
}

const SmoothnessEstimate& AdaptivePolicy::smoothness() const {
  if (!estimate_) throw std::logic_error("smoothness estimate not available yet");
  return *estimate_;
}

const PartitionCore& AdaptivePolicy::core() const {
  if (!core_) throw std::logic_error("policy is still in the estimation stage");
  return *core_;
}

PartitionCore& AdaptivePolicy::core() {
  if (!core_) throw std::logic_error("policy is still in the estimation stage");
  return *core_;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double integrate_box(const std::function<double(const Point&)>& f,
                     const std::vector<std::pair<double, double>>& box, Point& scratch,
                     std::size_t dim, double tol) {
  const auto [lo, hi] = box[dim];
  if (dim + 1 == box.size())
    return integrate_1d(
        [&](double t) {
          scratch[dim] = t;
          return f(scratch);
        },
        lo, hi, tol);
  return integrate_1d(
      [&](double t) {
        scratch[dim] = t;
        return integrate_box(f, box, scratch, dim + 1, tol);
      },
      lo, hi, tol);
}

}  // namespace

double piecewise_constant_projection(const std::function<double(const Point&)>& f,
                                     const BinId& bin, double window, const Point& x) {
  if (!(window > 0.0)) throw std::domain_error("window must be positive");
  if (static_cast<int>(x.size()) != bin.dim()) throw std::domain_error("point has wrong dimension");
  const Box box = bin_box(bin);
  std::vector<std::pair<double, double>> region(x.size());
  double volume = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = std::max(box.lower[i], x[i] - window);
    const double hi = std::min(box.upper[i], x[i] + window);
    if (!(hi > lo)) return 0.0;
    region[i] = {lo, hi};
    volume *= hi - lo;
  }
  Point scratch(x.size());
  const double integral = integrate_box(f, region, scratch, 0, 1e-10 * std::max(volume, 1e-6));
  return integral / volume;
}

}  // namespace shiftbandit
