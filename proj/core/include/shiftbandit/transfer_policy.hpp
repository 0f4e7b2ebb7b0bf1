#pragma once
// Transfer policy: a partition tree over the covariate cube whose leaves run
// successive elimination seeded with the auxiliary data, split on demand and
// capped at the horizon-derived maximum depth. With an empty auxiliary
// dataset this reduces to the adaptively binned successive-elimination
// baseline.

#include <cstdint>

#include "shiftbandit/elimination.hpp"
#include "shiftbandit/partition_core.hpp"
#include "shiftbandit/policy.hpp"

namespace shiftbandit {

struct TransferConfig {
  BoundParams bounds;
  double c_gamma = 1.0;  // transfer constant, in (0,1]
  double q_lo = 1.0;     // lower density bound of the target marginal
  int num_arms = 2;

  void validate() const;
};

class TransferPolicy final : public Policy {
 public:
  TransferPolicy(const TransferConfig& cfg, AuxDataset aux);

  // The partition core references the model member; pinning the object keeps
  // that self-reference valid.
  TransferPolicy(const TransferPolicy&) = delete;
  TransferPolicy& operator=(const TransferPolicy&) = delete;

  int select(const Point& x) override;
  void observe(const Point& x, int arm, double reward) override;

  double c_star_value() const { return c_star_; }
  int max_level() const { return model_.level_cap(); }
  const PartitionCore& core() const { return core_; }
  PartitionCore& core() { return core_; }

 private:
  double c_star_;
  TransferModel model_;
  PartitionCore core_;
};

}  // namespace shiftbandit
