#pragma once
// Smoothness-agnostic pipeline: two-bandwidth local-averaging estimation of
// the Holder exponent under self-similarity, the adaptive confidence bound
// and pull limit built from it, the adaptive policy, and the
// piecewise-constant projection diagnostic.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "shiftbandit/elimination.hpp"
#include "shiftbandit/environment.hpp"
#include "shiftbandit/partition_core.hpp"
#include "shiftbandit/policy.hpp"
#include "shiftbandit/rng.hpp"

namespace shiftbandit {

struct AdaptiveParams {
  double beta_lo = 0.5;
  double beta_hi = 1.0;
  double c_beta_hi = 1.0;  // upper bound on the Holder constant
  double gamma_hi = 2.0;   // upper bound on the transfer exponent

  void validate() const;
};

// Base of the logarithm applied to the two-bandwidth gap statistic when
// converting it into an exponent estimate.
enum class BetaLogBase { natural, base2 };

struct SmoothnessEstimate {
  double beta_hat = 0.0;  // clamped into [beta_lo, beta_hi]
  std::int64_t s_q = 0;   // target timesteps consumed by the estimation stage
  std::int64_t s_p = 0;   // source samples consumed by the estimation stage
  int l1 = 0, l2 = 0, l3 = 0;
  double sup_gap = 0.0;  // the statistic b
};

// Bandwidth levels, grid level and sample budget for the estimation stage.
// The budget is the theoretical sample count capped at what is available.
struct SmoothnessScales {
  int l1 = 1;
  int l2 = 2;
  int l3 = 2;
  std::int64_t budget = 1;
  bool from_source = false;  // n_p > n_q: estimate from the auxiliary data
};

SmoothnessScales smoothness_scales(std::int64_t n_q, std::int64_t n_p, const AdaptiveParams& ap,
                                   int d);

struct LabeledSample {
  Point x;
  int arm = 0;
  double y = 0.0;
};

struct BetaFit {
  double beta_raw = 0.0;  // unclamped estimate; +inf when the gap statistic is 0
  double sup_gap = 0.0;
};

// Core of the estimation stage with explicit bandwidth levels: compares
// per-arm local averages at levels l1 and l2 over the level-l3 grid. Grids
// larger than grid_cap points are subsampled uniformly at random (the sup is
// then taken over the subgrid only).
BetaFit estimate_beta_raw(const std::vector<LabeledSample>& samples, int num_arms, int d, int l1,
                          int l2, int l3, std::int64_t n, BetaLogBase base, std::int64_t grid_cap,
                          RngStream& rng);

struct XY {
  Point x;
  double y = 0.0;
};

// Mean of y over samples with x in `bin` and ||x - center||_inf <= window;
// 0 when no sample qualifies.
double local_average(const std::vector<XY>& data, const Point& center, double window,
                     const BinId& bin);

// Full estimation stage against a live environment: consumes either the
// first samples of `aux` (when aux.size() > n_q) or uniform-arm pulls on the
// target bandit, then returns the clamped exponent estimate.
SmoothnessEstimate estimate_smoothness(std::int64_t n_q, const AdaptiveParams& ap,
                                       const Environment& env, const AuxDataset& aux,
                                       RngStream& rng,
                                       BetaLogBase base = BetaLogBase::natural,
                                       std::int64_t grid_cap = 1000000);

// Adaptive confidence width 2*sqrt(2 log(n)/(tau+n_aux)) clamped below by
// 2*c_beta_hi*|B|^beta_hat; +inf when tau + n_aux = 0.
double adaptive_confidence_bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin,
                                 double beta_hat, double c_beta_hi, std::int64_t n);

// Least tau at which the adaptive width meets its clamp; agrees with a
// linear scan.
std::int64_t adaptive_pull_limit(const ArmAggregate& agg, const BinId& bin, double beta_hat,
                                 double c_beta_hi, std::int64_t n);

class AdaptiveModel final : public ConfidenceModel {
 public:
  AdaptiveModel(double beta_hat, double c_beta_hi, std::int64_t n, int level_cap)
      : beta_hat_(beta_hat), c_beta_hi_(c_beta_hi), n_(n), cap_(level_cap) {}

  double bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin) const override {
    return adaptive_confidence_bound(tau, agg, bin, beta_hat_, c_beta_hi_, n_);
  }
  std::int64_t limit(const ArmAggregate& agg, const BinId& bin) const override {
    return adaptive_pull_limit(agg, bin, beta_hat_, c_beta_hi_, n_);
  }
  int level_cap() const override { return cap_; }

  double beta_hat() const { return beta_hat_; }

 private:
  double beta_hat_;
  double c_beta_hi_;
  std::int64_t n_;
  int cap_;
};

struct AdaptiveConfig {
  AdaptiveParams params;
  std::int64_t n_q = 1;
  int d = 2;
  int num_arms = 2;
  BetaLogBase beta_log_base = BetaLogBase::natural;
  std::int64_t grid_cap = 1000000;
  // The adaptive loop has no horizon-derived depth cap; this is a memory
  // safety limit that does not bind at practical scales.
  int depth_cap = 20;

  void validate() const;
};

// Two-stage policy: smoothness estimation first (uniform-arm pulls when the
// target bandit supplies the samples, counted against the caller's horizon
// and regret), then the partition-tree loop using only the auxiliary data
// left over after estimation.
class AdaptivePolicy final : public Policy {
 public:
  AdaptivePolicy(const AdaptiveConfig& cfg, AuxDataset aux, std::uint64_t seed);

  // Skips the estimation stage and runs with the supplied exponent (clamped
  // into [beta_lo, beta_hi]); the full auxiliary dataset is used.
  static AdaptivePolicy with_fixed_exponent(const AdaptiveConfig& cfg, AuxDataset aux,
                                            double beta_hat);

  // The partition core references the model member; pinning the object keeps
  // that self-reference valid.
  AdaptivePolicy(const AdaptivePolicy&) = delete;
  AdaptivePolicy& operator=(const AdaptivePolicy&) = delete;

  int select(const Point& x) override;
  void observe(const Point& x, int arm, double reward) override;

  bool estimating() const { return !core_.has_value(); }
  const SmoothnessEstimate& smoothness() const;
  const PartitionCore& core() const;
  PartitionCore& core();

 private:
  struct FixedExponentTag {};
  AdaptivePolicy(const AdaptiveConfig& cfg, AuxDataset aux, FixedExponentTag, double beta_hat);

  void finalize(const std::vector<LabeledSample>& samples, std::int64_t s_q, std::int64_t s_p);
  void build_tree(double beta_hat, std::int64_t s_p);
  std::int64_t n_total() const;

  AdaptiveConfig cfg_;
  AuxDataset aux_;
  RngStream rng_;
  SmoothnessScales scales_;
  std::vector<LabeledSample> collected_;
  int pending_arm_ = -1;
  std::optional<SmoothnessEstimate> estimate_;
  std::optional<AdaptiveModel> model_;
  std::optional<PartitionCore> core_;
};

// Value at x of the best constant approximation of f over the part of `bin`
// within ||u - x||_inf <= window, under the uniform measure; computed by
// adaptive quadrature. Returns 0 when the region is empty.
double piecewise_constant_projection(const std::function<double(const Point&)>& f,
                                     const BinId& bin, double window, const Point& x);

}  // namespace shiftbandit
