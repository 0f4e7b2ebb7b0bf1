#pragma once
// Spatial index over the auxiliary dataset: samples sorted once by the
// Morton code of their dyadic cell, so every bin maps to one contiguous key
// range and per-bin statistics cost O(log n_P + matches).

#include <cstdint>
#include <vector>

#include "shiftbandit/environment.hpp"
#include "shiftbandit/geometry.hpp"

namespace shiftbandit {

class AuxIndex {
 public:
  AuxIndex(const AuxDataset& data, int d);

  struct ArmStats {
    std::int64_t count = 0;
    double mean = 0.0;
  };

  // Per-arm count and mean over samples in `bin`; membership matches bin_of
  // exactly (the cell grid uses the same boundary convention).
  std::vector<ArmStats> stats(const BinId& bin, int num_arms) const;

  std::int64_t size() const { return static_cast<std::int64_t>(entries_.size()); }
  int key_depth() const { return depth_; }

 private:
  struct Entry {
    std::uint64_t key;
    std::int32_t arm;
    double reward;
  };

  std::uint64_t interleave(const std::vector<std::int64_t>& cells) const;

  int d_;
  int depth_;  // 62/d: at least as deep as any addressable bin level
  std::vector<Entry> entries_;
};

}  // namespace shiftbandit
