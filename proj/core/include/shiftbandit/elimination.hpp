#pragma once
// Static-bandit core: confidence bounds, pull limits, the c*/l* constants,
// auxiliary bin statistics, and the per-bin elimination state machine.

#include <cstdint>
#include <utility>
#include <vector>

#include "shiftbandit/environment.hpp"
#include "shiftbandit/geometry.hpp"

namespace shiftbandit {

// Per-arm statistics inside one bin: auxiliary sample count, target pulls,
// and the running mean over the combined n_aux + tau rewards.
struct ArmAggregate {
  std::int64_t n_aux = 0;
  std::int64_t tau = 0;
  double mean = 0.0;
};

struct BoundParams {
  double beta = 0.8;
  double c_beta = 1.0;
  double gamma = 0.0;
  double kappa = 0.0;
  std::int64_t n_q = 1;
  std::int64_t n_p = 0;
  int d = 2;

  void validate() const;  // throws std::domain_error
};

// log(x) clamped below by 1; natural log.
double log_plus(double x);

// Two-piece confidence width. Returns +inf exactly when tau == 0 and
// n_aux == 0; otherwise max of the deviation term and the bias clamp
// 2 * c_beta * |B|^beta.
double confidence_bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin,
                        const BoundParams& p);

// Least tau with confidence_bound(tau) <= 2 * c_beta * |B|^beta; agrees with
// a linear scan over tau = 0, 1, 2, ...
std::int64_t pull_limit(const ArmAggregate& agg, const BinId& bin, const BoundParams& p);

// Unique root of x * max(ln(1/x), 1) = c3 / (2 c2 K) with c2 = max(2/c_beta^2, 1)
// and c3 = c_gamma * q_lo; bisection to absolute tolerance 1e-12.
double c_star(double c_beta, double c_gamma, double q_lo, int num_arms);

// Smallest integer strictly greater than log2(x)/divisor, for x >= 1.
// Exact for x a power of two (the divisor, a double, is a dyadic rational).
int strict_ceil_log2_ratio(double x, double divisor);

// Prescribed maximum tree depth: the strictly-greater integer of
//   max( log2(n_q)/(d+2 beta), log2(c_star * kappa * n_p)/(d+2 beta+gamma) ),
// where the second branch is dropped when c_star * kappa * n_p < 1.
int max_depth(std::int64_t n_q, std::int64_t n_p, double kappa, double gamma, double beta,
              int d, double c_star);

// (count, mean reward) over samples with x in `bin` (per bin_of membership)
// and the given arm; mean is 0 when the count is 0.
std::pair<std::int64_t, double> aux_bin_stats(const AuxDataset& data, const BinId& bin, int arm);

// Pluggable bound/limit pair driving the elimination machinery. The oracle
// policy and the smoothness-adaptive policy differ only through this seam.
class ConfidenceModel {
 public:
  virtual ~ConfidenceModel() = default;
  virtual double bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin) const = 0;
  virtual std::int64_t limit(const ArmAggregate& agg, const BinId& bin) const = 0;
  virtual int level_cap() const = 0;
};

class TransferModel final : public ConfidenceModel {
 public:
  TransferModel(const BoundParams& p, int level_cap) : p_(p), cap_(level_cap) {}

  double bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin) const override {
    return confidence_bound(tau, agg, bin, p_);
  }
  std::int64_t limit(const ArmAggregate& agg, const BinId& bin) const override {
    return pull_limit(agg, bin, p_);
  }
  int level_cap() const override { return cap_; }

  const BoundParams& params() const { return p_; }

 private:
  BoundParams p_;
  int cap_;
};

enum class BinPhase { explore, greedy };

struct ArmSlot {
  int arm = 0;
  ArmAggregate agg;
  std::int64_t limit = 0;
};

// One static bandit run inside a bin, restructured as a select/observe state
// machine: round-robin exploration with eliminations against the running
// floor, then greedy play once every arm reached its pull limit.
class BinBanditState {
 public:
  BinBanditState(BinId bin, std::vector<ArmSlot> slots, const ConfidenceModel& model);

  // Next arm to pull. In the exploration phase this advances the round-robin
  // cursor over active arms below their limits, eliminating on the way any
  // arm whose upper bound falls below the floor. Flips to greedy (argmax of
  // the means, lowest index on ties) once nothing explorable remains.
  int select(const ConfidenceModel& model);

  // Folds the reward of the arm returned by the immediately preceding
  // select() into its running mean and refreshes the floor.
  void observe(int arm, double reward, const ConfidenceModel& model);

  const BinId& bin() const { return bin_; }
  BinPhase phase() const { return phase_; }
  double floor() const { return floor_; }
  std::size_t active_count() const { return slots_.size(); }
  const std::vector<ArmSlot>& slots() const { return slots_; }
  std::vector<int> active_arms() const;
  const ArmSlot* find(int arm) const;
  bool all_limits_zero() const;

  // Active set after the auxiliary-data-only elimination step (arms whose
  // aux upper bound stays above the best aux lower bound). Used right before
  // a split when every pull limit is zero; does not mutate the state.
  std::vector<int> arms_after_aux_elimination(const ConfidenceModel& model) const;

 private:
  void refresh_floor(const ConfidenceModel& model);
  void refresh_phase();

  BinId bin_;
  std::vector<ArmSlot> slots_;
  double floor_ = 0.0;
  BinPhase phase_ = BinPhase::explore;
  std::size_t cursor_ = 0;
  int pending_ = -1;
  std::size_t pending_pos_ = 0;
};

// Seeds a fresh bin state from the auxiliary data: per-arm aggregates via
// aux_bin_stats, pull limits from the model, floor from the tau = 0 bounds.
BinBanditState elim_init(const BinId& bin, const std::vector<int>& arms, const AuxDataset& data,
                         const ConfidenceModel& model);

}  // namespace shiftbandit
