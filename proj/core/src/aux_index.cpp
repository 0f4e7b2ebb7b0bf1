#include "shiftbandit/aux_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace shiftbandit {

AuxIndex::AuxIndex(const AuxDataset& data, int d) : d_(d), depth_(62 / d) {
  if (d < 1) throw std::domain_error("dimension must be positive");
  entries_.reserve(data.size());
  std::vector<std::int64_t> cells(static_cast<std::size_t>(d));
  for (const AuxSample& s : data) {
    if (static_cast<int>(s.x.size()) != d) throw std::domain_error("aux sample has wrong dimension");
    for (int i = 0; i < d; ++i)
      cells[static_cast<std::size_t>(i)] = cell_of(s.x[static_cast<std::size_t>(i)], depth_);
    entries_.push_back({interleave_cells(cells, depth_), s.arm, s.reward});
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
}

std::vector<AuxIndex::ArmStats> AuxIndex::stats(const BinId& bin, int num_arms) const {
  if (bin.dim() != d_) throw std::domain_error("bin has wrong dimension");
  if (bin.level > depth_) throw std::domain_error("bin level exceeds index depth");
  std::vector<std::int64_t> cells(bin.index.size());
  for (std::size_t i = 0; i < bin.index.size(); ++i) cells[i] = bin.index[i] - 1;
  const int shift = (depth_ - bin.level) * d_;
  const std::uint64_t prefix = interleave_cells(cells, bin.level);
  const std::uint64_t lo = prefix << shift;
  const std::uint64_t hi = (prefix + 1) << shift;

  const auto key_less = [](const Entry& e, std::uint64_t k) { return e.key < k; };
  const auto begin = std::lower_bound(entries_.begin(), entries_.end(), lo, key_less);
  const auto end = std::lower_bound(begin, entries_.end(), hi, key_less);

  std::vector<ArmStats> out(static_cast<std::size_t>(num_arms));
  std::vector<double> sums(static_cast<std::size_t>(num_arms), 0.0);
  for (auto it = begin; it != end; ++it) {
    if (it->arm < 0 || it->arm >= num_arms) continue;
    const auto a = static_cast<std::size_t>(it->arm);
    out[a].count += 1;
    sums[a] += it->reward;
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    if (out[a].count > 0) out[a].mean = sums[a] / static_cast<double>(out[a].count);
  return out;
}

}  // namespace shiftbandit
