#include "shiftbandit/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shiftbandit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvE = 0.36787944117144232;  // 1/e
}  // namespace

void BoundParams::validate() const {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("beta must lie in (0,1]");
  if (!(c_beta > 0.0)) throw std::domain_error("c_beta must be positive");
  if (gamma < 0.0) throw std::domain_error("gamma must be non-negative");
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw std::domain_error("kappa must lie in [0,1]");
  if (n_q < 1) throw std::domain_error("n_q must be at least 1");
  if (n_p < 0) throw std::domain_error("n_p must be non-negative");
  if (d < 1) throw std::domain_error("dimension must be positive");
}

double log_plus(double x) { return std::max(std::log(x), 1.0); }

double confidence_bound(std::int64_t tau, const ArmAggregate& agg, const BinId& bin,
                        const BoundParams& p) {
  if (tau < 0) throw std::domain_error("tau must be non-negative");
  const double side = bin.side();
  const double clamp = 2.0 * p.c_beta * std::pow(side, p.beta);
  double dev;
  if (tau == 0) {
    if (agg.n_aux == 0) return kInf;
    const double arg =
        std::max(static_cast<double>(p.n_q) * std::pow(side, p.d + 2.0 * p.beta),
                 p.kappa * static_cast<double>(p.n_p) * std::pow(side, p.d + 2.0 * p.beta + p.gamma));
    dev = 2.0 * std::sqrt(2.0 / static_cast<double>(agg.n_aux) * log_plus(arg));
  } else {
    const double arg = static_cast<double>(p.n_q) * std::pow(side, p.d) / static_cast<double>(tau);
    dev = 2.0 * std::sqrt(2.0 / static_cast<double>(tau + agg.n_aux) * log_plus(arg));
  }
  return std::max(dev, clamp);
}

std::int64_t pull_limit(const ArmAggregate& agg, const BinId& bin, const BoundParams& p) {
  const double clamp = 2.0 * p.c_beta * std::pow(bin.side(), p.beta);
  const auto satisfied = [&](std::int64_t tau) {
    return confidence_bound(tau, agg, bin, p) <= clamp;
  };
  if (satisfied(0)) return 0;
  // The bound is non-increasing for tau >= 1, so bracket by doubling and
  // bisect; the final walk-down pins the exact first crossing.
  std::int64_t hi = 1;
  while (!satisfied(hi)) hi *= 2;
  std::int64_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (satisfied(mid))
      hi = mid;
    else
      lo = mid;
  }
  while (hi > 1 && satisfied(hi - 1)) --hi;
  return hi;
}

double c_star(double c_beta, double c_gamma, double q_lo, int num_arms) {
  if (!(c_beta > 0.0) || !(c_gamma > 0.0) || !(q_lo > 0.0) || num_arms < 1)
    throw std::domain_error("c_star inputs must be positive");
  const double c2 = std::max(2.0 / (c_beta * c_beta), 1.0);
  const double c3 = c_gamma * q_lo;
  const double target = c3 / (2.0 * c2 * static_cast<double>(num_arms));
  if (target >= kInvE) return target;  // upper branch: g(x) = x
  double lo = 0.0;
  double hi = kInvE;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::log(1.0 / mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

int strict_ceil_log2_ratio(double x, double divisor) {
  if (!(x >= 1.0)) throw std::domain_error("strict_ceil_log2_ratio requires x >= 1");
  if (!(divisor > 0.0)) throw std::domain_error("divisor must be positive");
  int xe = 0;
  const double xm = std::frexp(x, &xe);
  if (xm == 0.5) {
    // x == 2^j exactly: decide l * divisor > j in integer arithmetic.
    const std::int64_t j = xe - 1;
    int de = 0;
    const double dm_f = std::frexp(divisor, &de);
    const auto dm = static_cast<std::int64_t>(std::ldexp(dm_f, 53));  // divisor = dm * 2^(de-53)
    de -= 53;
    const auto above = [&](std::int64_t l) {
      const __int128 lhs = static_cast<__int128>(l) * dm;
      __int128 rhs = j;
      if (de >= 0)
        return lhs * (static_cast<__int128>(1) << de) > rhs;
      return lhs > rhs * (static_cast<__int128>(1) << -de);
    };
    auto l = static_cast<std::int64_t>(std::floor(static_cast<double>(j) / divisor)) + 1;
    if (l < 1) l = 1;
    while (!above(l)) ++l;
    while (l > 1 && above(l - 1)) --l;
    return static_cast<int>(l);
  }
  return static_cast<int>(std::floor(std::log2(x) / divisor)) + 1;
}

int max_depth(std::int64_t n_q, std::int64_t n_p, double kappa, double gamma, double beta, int d,
              double c_star) {
  if (n_q < 1) throw std::domain_error("n_q must be at least 1");
  if (n_p < 0) throw std::domain_error("n_p must be non-negative");
  int depth = strict_ceil_log2_ratio(static_cast<double>(n_q), d + 2.0 * beta);
  const double source_mass = c_star * kappa * static_cast<double>(n_p);
  if (source_mass >= 1.0)
    depth = std::max(depth, strict_ceil_log2_ratio(source_mass, d + 2.0 * beta + gamma));
  return depth;
}

std::pair<std::int64_t, double> aux_bin_stats(const AuxDataset& data, const BinId& bin, int arm) {
  std::int64_t count = 0;
  double sum = 0.0;
  for (const AuxSample& s : data) {
    if (s.arm != arm || !owns(bin, s.x)) continue;
    ++count;
    sum += s.reward;
  }
  return {count, count > 0 ? sum / static_cast<double>(count) : 0.0};
}

BinBanditState::BinBanditState(BinId bin, std::vector<ArmSlot> slots, const ConfidenceModel& model)
    : bin_(std::move(bin)), slots_(std::move(slots)) {
  if (slots_.empty()) throw std::domain_error("arm set must not be empty");
  refresh_floor(model);
  refresh_phase();
}

std::vector<int> BinBanditState::active_arms() const {
  std::vector<int> arms;
  arms.reserve(slots_.size());
  for (const ArmSlot& s : slots_) arms.push_back(s.arm);
  return arms;
}

const ArmSlot* BinBanditState::find(int arm) const {
  for (const ArmSlot& s : slots_)
    if (s.arm == arm) return &s;
  return nullptr;
}

bool BinBanditState::all_limits_zero() const {
  for (const ArmSlot& s : slots_)
    if (s.limit != 0) return false;
  return true;
}

int BinBanditState::select(const ConfidenceModel& model) {
  if (pending_ != -1) throw std::logic_error("select called with an unobserved pull pending");
  if (phase_ == BinPhase::explore) {
    std::size_t examined = 0;
    while (examined < slots_.size()) {
      if (cursor_ >= slots_.size()) cursor_ = 0;
      ArmSlot& s = slots_[cursor_];
      if (s.agg.tau >= s.limit) {
        ++cursor_;
        ++examined;
        continue;
      }
      if (s.agg.mean + model.bound(s.agg.tau, s.agg, bin_) < floor_) {
        // The floor-achieving arm always passes this test, so the active set
        // never empties here.
        slots_.erase(slots_.begin() + static_cast<std::ptrdiff_t>(cursor_));
        if (cursor_ >= slots_.size()) cursor_ = 0;
        examined = 0;
        continue;
      }
      pending_ = s.arm;
      pending_pos_ = cursor_;
      return pending_;
    }
    phase_ = BinPhase::greedy;  // every active arm is at its limit
  }
  pending_pos_ = 0;
  for (std::size_t i = 1; i < slots_.size(); ++i)
    if (slots_[i].agg.mean > slots_[pending_pos_].agg.mean) pending_pos_ = i;
  pending_ = slots_[pending_pos_].arm;
  return pending_;
}

void BinBanditState::observe(int arm, double reward, const ConfidenceModel& model) {
  if (pending_ == -1 || arm != pending_)
    throw std::logic_error("observe does not match the preceding select");
  ArmSlot& s = slots_[pending_pos_];
  s.agg.tau += 1;
  s.agg.mean += (reward - s.agg.mean) / static_cast<double>(s.agg.n_aux + s.agg.tau);
  if (phase_ == BinPhase::explore) cursor_ = pending_pos_ + 1;
  pending_ = -1;
  refresh_floor(model);
  refresh_phase();
}

std::vector<int> BinBanditState::arms_after_aux_elimination(const ConfidenceModel& model) const {
  double aux_floor = -kInf;
  for (const ArmSlot& s : slots_)
    aux_floor = std::max(aux_floor, s.agg.mean - model.bound(0, s.agg, bin_));
  std::vector<int> kept;
  for (const ArmSlot& s : slots_)
    if (s.agg.mean + model.bound(0, s.agg, bin_) >= aux_floor) kept.push_back(s.arm);
  return kept;
}

void BinBanditState::refresh_floor(const ConfidenceModel& model) {
  floor_ = -kInf;
  for (const ArmSlot& s : slots_)
    floor_ = std::max(floor_, s.agg.mean - model.bound(s.agg.tau, s.agg, bin_));
}

void BinBanditState::refresh_phase() {
  if (phase_ == BinPhase::greedy) return;
  for (const ArmSlot& s : slots_)
    if (s.agg.tau < s.limit) return;
  phase_ = BinPhase::greedy;
}

BinBanditState elim_init(const BinId& bin, const std::vector<int>& arms, const AuxDataset& data,
                         const ConfidenceModel& model) {
  if (arms.empty()) throw std::domain_error("arm set must not be empty");
  std::vector<ArmSlot> slots;
  slots.reserve(arms.size());
  for (int arm : arms) {
    ArmSlot s;
    s.arm = arm;
    const auto [count, mean] = aux_bin_stats(data, bin, arm);
    s.agg.n_aux = count;
    s.agg.mean = mean;
    s.limit = model.limit(s.agg, bin);
    slots.push_back(std::move(s));
  }
  return {bin, std::move(slots), model};
}

}  // namespace shiftbandit
