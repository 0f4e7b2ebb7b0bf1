#pragma once
// Dyadic partition of the covariate cube [0,1]^d: bin identification,
// point-to-bin lookup with deterministic boundary handling, and refinement.

#include <cstdint>
#include <functional>
#include <vector>

namespace shiftbandit {

using Point = std::vector<double>;

// A node of the dyadic partition tree. `index` is 1-based per coordinate,
// k_i in [1, 2^level], so the bin covers [(k_i-1)*2^-level, k_i*2^-level].
struct BinId {
  int level = 0;
  std::vector<std::int64_t> index;

  int dim() const { return static_cast<int>(index.size()); }
  double side() const;

  bool operator==(const BinId&) const = default;
};

struct BinIdHash {
  std::size_t operator()(const BinId& b) const noexcept;
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  // Closed-box membership.
  bool contains(const Point& x) const;
};

// 0-based cell index of coordinate x at the given level, in [0, 2^level).
// Boundary points go to the lower cell (the bin whose center is closer to
// the origin), except x = 0 which belongs to cell 0.
std::int64_t cell_of(double x, int level);

// Bin at `level` owning x. Among the closed bins containing x this is the
// one whose center has minimal distance to the origin.
BinId bin_of(int level, const Point& x);

// Membership of x in b under the bin_of convention.
bool owns(const BinId& b, const Point& x);

// The 2^d bins at level+1 that refine b, last coordinate varying fastest.
std::vector<BinId> children(const BinId& b);

Box bin_box(const BinId& b);

BinId root_bin(int d);

// Morton key of a cell vector at `level` (bit-interleaved, level*dim <= 62
// bits). Bins at any coarser level map to contiguous key ranges.
std::uint64_t interleave_cells(const std::vector<std::int64_t>& cells, int level);

}  // namespace shiftbandit
