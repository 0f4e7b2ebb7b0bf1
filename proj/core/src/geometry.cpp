#include "shiftbandit/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shiftbandit {

namespace {

void check_level_and_dim(int level, int d) {
  if (level < 0) throw std::domain_error("bin level must be non-negative");
  if (d < 1) throw std::domain_error("dimension must be positive");
  // 2^(level*d) bins must stay addressable in a 64-bit index space.
  if (static_cast<std::int64_t>(level) * d > 62)
    throw std::domain_error("partition level " + std::to_string(level) +
                            " in dimension " + std::to_string(d) +
                            " exceeds the 64-bit index space");
}

}  // namespace

double BinId::side() const { return std::ldexp(1.0, -level); }

std::size_t BinIdHash::operator()(const BinId& b) const noexcept {
  auto mix = [](std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
  };
  std::uint64_t h = mix(static_cast<std::uint64_t>(b.level) + 0x9e3779b97f4a7c15ULL);
  for (std::int64_t k : b.index) h = mix(h ^ (static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL));
  return static_cast<std::size_t>(h);
}

bool Box::contains(const Point& x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

std::int64_t cell_of(double x, int level) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("coordinate outside [0,1]");
  // Scaling by a power of two is exact, so boundary points resolve exactly.
  const double scaled = std::ldexp(x, level);
  auto k = static_cast<std::int64_t>(std::ceil(scaled));
  if (k < 1) k = 1;  // x == 0
  return k - 1;
}

BinId bin_of(int level, const Point& x) {
  const int d = static_cast<int>(x.size());
  check_level_and_dim(level, d);
  BinId b;
  b.level = level;
  b.index.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) b.index[i] = cell_of(x[i], level) + 1;
  return b;
}

bool owns(const BinId& b, const Point& x) {
  if (b.dim() != static_cast<int>(x.size())) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (cell_of(x[i], b.level) + 1 != b.index[i]) return false;
  return true;
}

std::vector<BinId> children(const BinId& b) {
  const int d = b.dim();
  check_level_and_dim(b.level + 1, d);
  std::vector<BinId> out;
  out.reserve(std::size_t{1} << d);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
    BinId c;
    c.level = b.level + 1;
    c.index.resize(d);
    for (int i = 0; i < d; ++i) {
      const std::uint64_t bit = (mask >> (d - 1 - i)) & 1;  // last coordinate fastest
      c.index[i] = 2 * b.index[i] - 1 + static_cast<std::int64_t>(bit);
    }
    out.push_back(std::move(c));
  }
  return out;
}

Box bin_box(const BinId& b) {
  Box box;
  box.lower.resize(b.index.size());
  box.upper.resize(b.index.size());
  for (std::size_t i = 0; i < b.index.size(); ++i) {
    box.lower[i] = std::ldexp(static_cast<double>(b.index[i] - 1), -b.level);
    box.upper[i] = std::ldexp(static_cast<double>(b.index[i]), -b.level);
  }
  return box;
}

BinId root_bin(int d) {
  if (d < 1) throw std::domain_error("dimension must be positive");
  BinId b;
  b.level = 0;
  b.index.assign(d, 1);
  return b;
}

std::uint64_t interleave_cells(const std::vector<std::int64_t>& cells, int level) {
  check_level_and_dim(level, static_cast<int>(cells.size()));
  std::uint64_t key = 0;
  for (int bit = level - 1; bit >= 0; --bit)
    for (std::int64_t cell : cells) key = (key << 1) | ((static_cast<std::uint64_t>(cell) >> bit) & 1);
  return key;
}

}  // namespace shiftbandit
