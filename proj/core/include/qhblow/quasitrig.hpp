#pragma once

#include <utility>
#include <vector>

#include "qhblow/errors.hpp"

namespace qhblow {

// The (1,l)-trigonometric pair solving Cs' = -Sn, Sn' = Cs^{2l-1} with
// Cs(0) = 1, Sn(0) = 0 and invariant Cs^{2l} + l Sn^2 = 1. Values are stored
// on a uniform grid over one period; evaluation is cubic Hermite using the
// exact derivatives from the defining equations.
class QuasiTrigTable {
 public:
  int l = 1;
  double period = 0.0;

  std::pair<double, double> cs_sn(double theta) const;
  double cs(double theta) const { return cs_sn(theta).first; }
  double sn(double theta) const { return cs_sn(theta).second; }

  int samples() const { return static_cast<int>(cs_.size()) - 1; }

 private:
  friend QuasiTrigTable build_table(int l, int samples_per_period);
  std::vector<double> cs_, sn_;  // grid values, cs_[N] == cs_[0]
  double h_ = 0.0;               // grid spacing = period / N
};

// Integrates the defining equations, locates the period by first-return
// detection, and resamples one period on a uniform grid.
QuasiTrigTable build_table(int l, int samples_per_period = 8192);

}  // namespace qhblow
