#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "qhblow/errors.hpp"
#include "qhblow/scheme.hpp"

namespace qhblow {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-4;
  double h_max = 1.0;
  std::size_t max_steps = 5'000'000;
};

// Dormand-Prince 5(4) embedded pair with PI step-size control.
// The observer is called after every accepted step; returning false stops
// the integration early. When an integration cannot make progress the step
// size underflows and integrate() reports failure instead of throwing.
class Dopri5 {
 public:
  using Rhs = std::function<void(double, const Vec&, Vec&)>;

  explicit Dopri5(Rhs rhs, OdeOptions opts = {}) : rhs_(std::move(rhs)), opts_(opts) {}

  struct Result {
    bool completed = false;   // reached t_end (or observer stop)
    bool step_failed = false; // step size underflow / step budget exhausted
    double t = 0.0;
  };

  // observer(t, y, h_last) after each accepted step; may be null
  Result integrate(double t0, double t_end, Vec& y,
                   const std::function<bool(double, const Vec&)>& observer = nullptr) {
    const int n = static_cast<int>(y.size());
    double t = t0;
    double h = std::min(opts_.h_init, t_end - t0);
    double err_prev = 1.0;
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    rhs_(t, y, k1);
    for (std::size_t step = 0; step < opts_.max_steps; ++step) {
      if (t >= t_end) return {true, false, t};
      h = std::min(h, t_end - t);
      if (h < 1e-15 * std::max(1.0, std::abs(t))) return {false, true, t};

      stage(t, y, h, k1, k2, k3, k4, k5, k6, k7, ytmp, ynew);

      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        double sc = opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        double e = h * err_coeff(k1[i], k3[i], k4[i], k5[i], k6[i], k7[i]) / sc;
        err += e * e;
      }
      err = std::sqrt(err / n);

      if (err <= 1.0 || h <= 1e-14 * std::max(1.0, std::abs(t))) {
        t += h;
        y = ynew;
        k1 = k7;  // FSAL
        if (observer && !observer(t, y)) return {true, false, t};
        double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                     std::pow(err_prev, 0.4 / 5.0);
        fac = std::min(5.0, std::max(0.2, fac));
        h = std::min(h * fac, opts_.h_max);
        err_prev = std::max(err, 1e-10);
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
      }
    }
    return {false, true, t};
  }

 private:
  void stage(double t, const Vec& y, double h, const Vec& k1, Vec& k2, Vec& k3,
             Vec& k4, Vec& k5, Vec& k6, Vec& k7, Vec& ytmp, Vec& ynew) {
    const int n = static_cast<int>(y.size());
    auto comb = [&](std::initializer_list<std::pair<const Vec*, double>> terms) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (const auto& [k, c] : terms) acc += c * (*k)[i];
        ytmp[i] = y[i] + h * acc;
      }
    };
    comb({{&k1, 1.0 / 5}});
    rhs_(t + h / 5, ytmp, k2);
    comb({{&k1, 3.0 / 40}, {&k2, 9.0 / 40}});
    rhs_(t + 3 * h / 10, ytmp, k3);
    comb({{&k1, 44.0 / 45}, {&k2, -56.0 / 15}, {&k3, 32.0 / 9}});
    rhs_(t + 4 * h / 5, ytmp, k4);
    comb({{&k1, 19372.0 / 6561}, {&k2, -25360.0 / 2187}, {&k3, 64448.0 / 6561},
          {&k4, -212.0 / 729}});
    rhs_(t + 8 * h / 9, ytmp, k5);
    comb({{&k1, 9017.0 / 3168}, {&k2, -355.0 / 33}, {&k3, 46732.0 / 5247},
          {&k4, 49.0 / 176}, {&k5, -5103.0 / 18656}});
    rhs_(t + h, ytmp, k6);
    for (int i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (35.0 / 384 * k1[i] + 500.0 / 1113 * k3[i] +
                            125.0 / 192 * k4[i] - 2187.0 / 6784 * k5[i] +
                            11.0 / 84 * k6[i]);
    rhs_(t + h, ynew, k7);
  }

  static double err_coeff(double k1, double k3, double k4, double k5, double k6,
                          double k7) {
    return 71.0 / 57600 * k1 - 71.0 / 16695 * k3 + 71.0 / 1920 * k4 -
           17253.0 / 339200 * k5 + 22.0 / 525 * k6 - 1.0 / 40 * k7;
  }

  Rhs rhs_;
  OdeOptions opts_;
};

}  // namespace qhblow
