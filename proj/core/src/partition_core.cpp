#include "shiftbandit/partition_core.hpp"

#include <stdexcept>

namespace shiftbandit {

PartitionCore::PartitionCore(int d, int num_arms, AuxDataset aux, const ConfidenceModel& model)
    : model_(model), d_(d), num_arms_(num_arms), aux_(std::move(aux)), index_(aux_, d) {
  if (num_arms_ < 1) throw std::domain_error("arm count must be positive");
  std::vector<int> arms(static_cast<std::size_t>(num_arms_));
  for (int k = 0; k < num_arms_; ++k) arms[static_cast<std::size_t>(k)] = k;
  leaves_.emplace(root_bin(d_), make_leaf(root_bin(d_), arms));
}

PartitionCore::Leaf PartitionCore::make_leaf(const BinId& bin, const std::vector<int>& arms) const {
  const auto stats = index_.stats(bin, num_arms_);
  std::vector<ArmSlot> slots;
  slots.reserve(arms.size());
  for (int arm : arms) {
    ArmSlot s;
    s.arm = arm;
    s.agg.n_aux = stats[static_cast<std::size_t>(arm)].count;
    s.agg.mean = stats[static_cast<std::size_t>(arm)].mean;
    s.limit = model_.limit(s.agg, bin);
    slots.push_back(std::move(s));
  }
  return Leaf{BinBanditState(bin, std::move(slots), model_), 0};
}

PartitionCore::Leaf& PartitionCore::locate(const Point& x, BinId& key_out) {
  for (int level = 0; level <= max_level_seen_; ++level) {
    key_out.level = level;
    key_out.index.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) key_out.index[i] = cell_of(x[i], level) + 1;
    const auto it = leaves_.find(key_out);
    if (it != leaves_.end()) return it->second;
  }
  throw std::logic_error("partition does not cover the query point");
}

void PartitionCore::split(const BinId& key) {
  auto it = leaves_.find(key);
  BinBanditState& state = it->second.state;
  const std::vector<int> arms = state.all_limits_zero()
                                    ? state.arms_after_aux_elimination(model_)
                                    : state.active_arms();
  if (split_observer_) split_observer_(key, arms);
  for (const BinId& child : children(key)) leaves_.emplace(child, make_leaf(child, arms));
  leaves_.erase(key);
  if (key.level + 1 > max_level_seen_) max_level_seen_ = key.level + 1;
}

int PartitionCore::select(const Point& x) {
  if (static_cast<int>(x.size()) != d_) throw std::domain_error("point has wrong dimension");
  for (double c : x)
    if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("point outside [0,1]^d");
  if (pending_arm_ != -1) throw std::logic_error("select called with an unobserved pull pending");

  BinId key;
  Leaf* leaf = &locate(x, key);
  while (leaf->state.active_count() > 1 && key.level < model_.level_cap() &&
         leaf->state.phase() == BinPhase::greedy) {
    split(key);
    key = bin_of(key.level + 1, x);
    leaf = &leaves_.at(key);
  }
  pending_bin_ = key;
  pending_arm_ = leaf->state.select(model_);
  return pending_arm_;
}

void PartitionCore::observe(const Point& x, int arm, double reward) {
  (void)x;
  if (pending_arm_ == -1 || arm != pending_arm_)
    throw std::logic_error("observe does not match the preceding select");
  Leaf& leaf = leaves_.at(pending_bin_);
  leaf.state.observe(arm, reward, model_);
  leaf.visits += 1;
  steps_ += 1;
  pending_arm_ = -1;
}

const BinId& PartitionCore::last_selected_bin() const { return pending_bin_; }

std::vector<BinId> PartitionCore::leaf_bins() const {
  std::vector<BinId> bins;
  bins.reserve(leaves_.size());
  for (const auto& [bin, leaf] : leaves_) bins.push_back(bin);
  return bins;
}

void PartitionCore::for_each_leaf(
    const std::function<void(const BinId&, const BinBanditState&, std::int64_t)>& fn) const {
  for (const auto& [bin, leaf] : leaves_) fn(bin, leaf.state, leaf.visits);
}

}  // namespace shiftbandit
