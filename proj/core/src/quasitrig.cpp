#include "qhblow/quasitrig.hpp"

#include <cmath>

#include "qhblow/ode.hpp"

namespace qhblow {

namespace {

Dopri5::Rhs trig_rhs(int l) {
  return [l](double, const Vec& y, Vec& dy) {
    dy[0] = -y[1];
    double cp = 1.0;
    for (int e = 0; e < 2 * l - 1; ++e) cp *= y[0];
    dy[1] = cp;
  };
}

OdeOptions tight_opts() {
  OdeOptions o;
  o.rtol = 1e-13;
  o.atol = 1e-14;
  o.h_init = 1e-3;
  return o;
}

}  // namespace

QuasiTrigTable build_table(int l, int samples_per_period) {
  if (l < 1) throw input_error("build_table: l must be >= 1");
  if (samples_per_period < 64)
    throw input_error("build_table: need at least 64 samples per period");

  Dopri5 solver(trig_rhs(l), tight_opts());

  // Walk forward until Sn crosses zero upward with Cs > 0: that is the first
  // return to the initial point (1, 0).
  Vec y{1.0, 0.0};
  double theta = 0.0;
  Vec y_prev = y;
  double theta_prev = 0.0;
  bool bracketed = false;
  while (!bracketed) {
    double target = theta + 0.25;
    Vec yt = y;
    auto res = solver.integrate(theta, target, yt);
    if (res.step_failed) throw numeric_error("build_table: integration failed");
    theta_prev = theta;
    y_prev = y;
    theta = target;
    y = yt;
    if (theta_prev > 0.5 && y_prev[1] < 0.0 && y[1] >= 0.0 && y[0] > 0.0)
      bracketed = true;
    if (theta > 1e4) throw numeric_error("build_table: no return detected");
  }

  // Bisection on Sn(theta) = 0 inside the bracket, re-integrating from the
  // saved pre-crossing state each probe.
  double lo = theta_prev, hi = theta;
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    Vec ym = y_prev;
    auto res = solver.integrate(theta_prev, mid, ym);
    if (res.step_failed) throw numeric_error("build_table: integration failed");
    (ym[1] < 0.0 ? lo : hi) = mid;
  }
  const double period = 0.5 * (lo + hi);

  QuasiTrigTable table;
  table.l = l;
  table.period = period;
  const int N = samples_per_period;
  table.h_ = period / N;
  table.cs_.resize(N + 1);
  table.sn_.resize(N + 1);
  Vec yg{1.0, 0.0};
  table.cs_[0] = 1.0;
  table.sn_[0] = 0.0;
  for (int i = 1; i <= N; ++i) {
    auto res = solver.integrate((i - 1) * table.h_, i * table.h_, yg);
    if (res.step_failed) throw numeric_error("build_table: resampling failed");
    table.cs_[i] = yg[0];
    table.sn_[i] = yg[1];
  }
  return table;
}

std::pair<double, double> QuasiTrigTable::cs_sn(double theta) const {
  if (!std::isfinite(theta)) throw numeric_error("cs_sn: non-finite angle");
  double u = std::fmod(theta, period);
  if (u < 0.0) u += period;
  int j = static_cast<int>(u / h_);
  if (j < 0) j = 0;
  if (j >= samples()) j = samples() - 1;
  const double t = (u - j * h_) / h_;

  auto deriv = [this](double c, double s, double& dc, double& ds) {
    dc = -s;
    double cp = 1.0;
    for (int e = 0; e < 2 * l - 1; ++e) cp *= c;
    ds = cp;
  };
  double dc0, ds0, dc1, ds1;
  deriv(cs_[j], sn_[j], dc0, ds0);
  deriv(cs_[j + 1], sn_[j + 1], dc1, ds1);

  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  double c = h00 * cs_[j] + h10 * h_ * dc0 + h01 * cs_[j + 1] + h11 * h_ * dc1;
  double s = h00 * sn_[j] + h10 * h_ * ds0 + h01 * sn_[j + 1] + h11 * h_ * ds1;
  return {c, s};
}

}  // namespace qhblow
