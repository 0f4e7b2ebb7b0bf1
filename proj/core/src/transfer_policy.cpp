#include "shiftbandit/transfer_policy.hpp"

#include <stdexcept>

namespace shiftbandit {

void TransferConfig::validate() const {
  bounds.validate();
  if (!(c_gamma > 0.0 && c_gamma <= 1.0)) throw std::domain_error("c_gamma must lie in (0,1]");
  if (!(q_lo > 0.0)) throw std::domain_error("q_lo must be positive");
  if (num_arms < 1) throw std::domain_error("arm count must be positive");
}

namespace {

double checked_c_star(const TransferConfig& cfg) {
  cfg.validate();
  return c_star(cfg.bounds.c_beta, cfg.c_gamma, cfg.q_lo, cfg.num_arms);
}

}  // namespace

TransferPolicy::TransferPolicy(const TransferConfig& cfg, AuxDataset aux)
    : c_star_(checked_c_star(cfg)),
      model_(cfg.bounds, max_depth(cfg.bounds.n_q, cfg.bounds.n_p, cfg.bounds.kappa,
                                   cfg.bounds.gamma, cfg.bounds.beta, cfg.bounds.d, c_star_)),
      core_(cfg.bounds.d, cfg.num_arms, std::move(aux), model_) {}

int TransferPolicy::select(const Point& x) { return core_.select(x); }

void TransferPolicy::observe(const Point& x, int arm, double reward) {
  core_.observe(x, arm, reward);
}

}  // namespace shiftbandit
