#pragma once
// Shared machinery behind the partition-tree policies: a lazily grown dyadic
// partition whose leaves each run the per-bin elimination procedure. A leaf
// splits once it has more than one active arm, sits above the model's level
// cap, and every active arm has exhausted its pull limit; children inherit
// the (possibly pruned) active arm set and are re-seeded from the auxiliary
// data.

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "shiftbandit/aux_index.hpp"
#include "shiftbandit/elimination.hpp"
#include "shiftbandit/geometry.hpp"

namespace shiftbandit {

class PartitionCore {
 public:
  // `model` must outlive the core.
  PartitionCore(int d, int num_arms, AuxDataset aux, const ConfidenceModel& model);

  int select(const Point& x);
  void observe(const Point& x, int arm, double reward);

  std::int64_t steps() const { return steps_; }
  int max_level_seen() const { return max_level_seen_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  const AuxDataset& aux() const { return aux_; }
  const BinId& last_selected_bin() const;

  std::vector<BinId> leaf_bins() const;
  void for_each_leaf(
      const std::function<void(const BinId&, const BinBanditState&, std::int64_t)>& fn) const;

  // Test/diagnostic hook, invoked on every split with the parent bin and the
  // arm set inherited by its children.
  void set_split_observer(std::function<void(const BinId&, const std::vector<int>&)> observer) {
    split_observer_ = std::move(observer);
  }

 private:
  struct Leaf {
    BinBanditState state;
    std::int64_t visits = 0;
  };

  Leaf& locate(const Point& x, BinId& key_out);
  Leaf make_leaf(const BinId& bin, const std::vector<int>& arms) const;
  void split(const BinId& key);

  const ConfidenceModel& model_;
  int d_;
  int num_arms_;
  AuxDataset aux_;
  AuxIndex index_;
  std::unordered_map<BinId, Leaf, BinIdHash> leaves_;
  int max_level_seen_ = 0;
  std::int64_t steps_ = 0;
  BinId pending_bin_;
  int pending_arm_ = -1;
  std::function<void(const BinId&, const std::vector<int>&)> split_observer_;
};

}  // namespace shiftbandit
