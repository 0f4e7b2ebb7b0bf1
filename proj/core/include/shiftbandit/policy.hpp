#pragma once
// Arm-selection policy interface driven one timestep at a time:
// select(x) then observe(x, arm, reward), strictly paired.

#include "shiftbandit/geometry.hpp"

namespace shiftbandit {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual int select(const Point& x) = 0;
  virtual void observe(const Point& x, int arm, double reward) = 0;
};

}  // namespace shiftbandit
