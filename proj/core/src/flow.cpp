#include "qhblow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "qhblow/ode.hpp"

namespace qhblow {

namespace {

double dist(const Vec& a, const Vec& b, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct LinFit {
  double slope = 0.0;
  double rms = 0.0;
  bool ok = false;
};

LinFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  LinFit f;
  const size_t n = xs.size();
  if (n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) return f;
  f.slope = (n * sxy - sx * sy) / denom;
  double b = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = ys[i] - (f.slope * xs[i] + b);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  f.ok = true;
  return f;
}

// keep local maxima only (per-return peaks of an oscillating series)
void envelope_filter(std::vector<double>& xs, std::vector<double>& ys) {
  std::vector<double> fx, fy;
  for (size_t i = 1; i + 1 < ys.size(); ++i) {
    if (ys[i] >= ys[i - 1] && ys[i] >= ys[i + 1]) {
      fx.push_back(xs[i]);
      fy.push_back(ys[i]);
    }
  }
  if (fy.size() >= 4) {
    xs = std::move(fx);
    ys = std::move(fy);
  }
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::TauLimit: return "tau-limit";
    case Termination::ConvergedEquilibrium: return "converged-to-equilibrium";
    case Termination::ConvergedCycle: return "converged-to-cycle";
    case Termination::LeftDomain: return "left-domain";
    case Termination::StepFailure: return "step-failure";
  }
  return "unknown";
}

Trajectory integrate(const DesingField& field, const Vec& start, double tau_end,
                     const IntegrateOptions& opts,
                     const std::vector<HorizonEquilibrium>* targets) {
  const CompactScheme& sc = field.scheme;
  const int n = sc.dim();
  const int k = field.time_exponent;
  const double sign = opts.backward ? -1.0 : 1.0;
  const bool global = field.chart == DesingField::Chart::Global;
  const double inv2c = 1.0 / (2.0 * sc.c);

  Trajectory traj;
  traj.chart = field.chart;

  // starts on the horizon stay there: evolve the radially projected state
  // and freeze the radial/time slots (t never advances at infinity)
  const bool horizon_start = global && GlobalPoint{start}.on_horizon(sc);

  // augmented state: chart coords + (global only: log q) + physical time
  Vec y(start.begin(), start.end());
  if (global) {
    double q = 1.0 - p2c(sc, start);
    y.push_back(horizon_start ? -1e300 : std::log(std::max(q, 0.0)));
  }
  y.push_back(0.0);  // t

  auto project = [&](Vec x) {
    double p = p_functional(sc, x);
    for (int i = 0; i < n; ++i) x[i] /= std::pow(p, sc.alpha[i]);
    return x;
  };

  Dopri5::Rhs rhs = [&](double, const Vec& z, Vec& dz) {
    Vec x(z.begin(), z.begin() + n);
    if (horizon_start) {
      Vec g = field.eval(project(std::move(x)));
      for (int i = 0; i < n; ++i) dz[i] = sign * g[i];
      dz[n] = 0.0;
      dz[n + 1] = 0.0;
      return;
    }
    Vec g = field.eval(x);
    for (int i = 0; i < n; ++i) dz[i] = sign * g[i];
    if (global) {
      dz[n] = -sign * 2.0 * radial_correction(field, x);
      dz[n + 1] = std::exp(k * z[n] * inv2c);  // kappa^{-k}
    } else {
      dz[n] = std::pow(std::abs(z[0]), k);  // s^k
    }
  };

  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.h_max = tau_end;
  Dopri5 solver(rhs, oo);

  auto record = [&](double tau, const Vec& z) {
    TrajectorySample smp;
    smp.tau = tau;
    smp.state.assign(z.begin(), z.begin() + n);
    smp.t = z.back();
    if (global) {
      smp.log_kappa = -z[n] * inv2c;
      smp.dt_dtau = std::exp(k * z[n] * inv2c);
    } else {
      double s = std::abs(z[0]);
      smp.log_kappa = s > 0.0 ? -std::log(s) : std::numeric_limits<double>::infinity();
      smp.dt_dtau = std::pow(s, k);
    }
    traj.samples.push_back(std::move(smp));
  };

  record(0.0, y);
  bool left_domain = false;
  int hit_target = -1;
  auto observer = [&](double tau, const Vec& z) {
    record(tau, z);
    if (global) {
      if (p2c(sc, Vec(z.begin(), z.begin() + n)) > 1.0 + 1e-6) {
        left_domain = true;
        return false;
      }
    } else if (z[0] < -1e-9) {
      left_domain = true;
      return false;
    }
    // chart fields: stop once an equilibrium is reached, since past this
    // point the chart radius bottoms out at rounding noise.  The global
    // chart keeps going -- its radial motion lives in the log q slot and
    // decays cleanly however close the state is to the equilibrium.
    if (targets && !global) {
      Vec state(z.begin(), z.begin() + n);
      for (size_t i = 0; i < targets->size(); ++i) {
        const Vec& loc = global ? (*targets)[i].x : (*targets)[i].chart_state;
        if (!loc.empty() && dist(state, loc, n) < opts.eps_converge) {
          hit_target = static_cast<int>(i);
          return false;
        }
      }
    }
    return true;
  };

  bool failed = false;
  try {
    auto res = solver.integrate(0.0, tau_end, y, observer);
    failed = res.step_failed;
  } catch (const domain_error&) {
    left_domain = true;
  }

  if (left_domain)
    traj.termination = Termination::LeftDomain;
  else if (hit_target >= 0) {
    traj.termination = Termination::ConvergedEquilibrium;
    traj.target_id = hit_target;
  } else if (failed)
    traj.termination = Termination::StepFailure;
  else {
    traj.termination = Termination::TauLimit;
    const Vec& fin = traj.samples.back().state;
    if (targets) {
      for (size_t i = 0; i < targets->size(); ++i) {
        const auto& eq = (*targets)[i];
        const Vec& loc = global ? eq.x : eq.chart_state;
        if (!loc.empty() && dist(fin, loc, n) < opts.eps_converge) {
          traj.termination = Termination::ConvergedEquilibrium;
          traj.target_id = static_cast<int>(i);
          break;
        }
      }
    }
    if (traj.termination == Termination::TauLimit && opts.horizon_cycle_target) {
      // horizon proximity: s below the radius in charts, kappa large globally
      if (!global && std::abs(fin[0]) < opts.cycle_radius)
        traj.termination = Termination::ConvergedCycle;
      if (global && traj.samples.back().log_kappa > 10.0)
        traj.termination = Termination::ConvergedCycle;
    }
  }
  return traj;
}

BlowUpEstimate estimate_tmax(const DesingField& field, const Trajectory& traj,
                             const HorizonEquilibrium* target, bool envelope) {
  if (traj.termination != Termination::ConvergedEquilibrium &&
      traj.termination != Termination::ConvergedCycle)
    throw unsupported_error("estimate_tmax: trajectory did not converge to a target");
  if (target &&
      target->classification.cls == StabilityClass::Nonhyperbolic)
    throw unsupported_error("estimate_tmax: target not hyperbolic");

  const auto& s = traj.samples;
  const size_t N = s.size();
  if (N < 32) throw numeric_error("estimate_tmax: too few samples");

  // fit the decay rate of dt/dtau over the trailing quarter of tau
  const double tau_lo = s.back().tau - 0.25 * (s.back().tau - s.front().tau);
  std::vector<double> xs, ys;
  for (const auto& smp : s) {
    if (smp.tau < tau_lo || smp.dt_dtau <= 0.0) continue;
    xs.push_back(smp.tau);
    ys.push_back(std::log(smp.dt_dtau));
  }
  if (envelope) envelope_filter(xs, ys);
  LinFit fit = linear_fit(xs, ys);
  if (!fit.ok || fit.slope >= -1e-12)
    throw numeric_error("estimate_tmax: dt/dtau does not decay along the tail");

  BlowUpEstimate est;
  est.lambda_tail = -fit.slope;
  const double dt_end = s.back().dt_dtau;
  const double tail = dt_end / est.lambda_tail;
  est.t_max = s.back().t + tail;

  double rel = fit.rms / std::max(1.0, std::abs(ys.front() - ys.back()));
  if (target && !target->eigenvalues.empty()) {
    // predicted rate: global chart  (k/c) G(x*),  chart fields  -k mu_s
    const int k = field.time_exponent;
    if (field.chart == DesingField::Chart::Global) {
      est.lambda_predicted =
          k / static_cast<double>(field.scheme.c) * radial_correction(field, target->x);
    } else {
      est.lambda_predicted = -k * target->jacobian(0, 0);
    }
    if (est.lambda_predicted > 0.0)
      rel = std::max(rel, std::abs(est.lambda_tail - est.lambda_predicted) /
                              est.lambda_predicted);
  }
  est.tail_bound = std::abs(tail) * rel;
  est.target = traj.target_id;
  return est;
}

void fit_blowup_rate(const DesingField& field, const Trajectory& traj,
                     BlowUpEstimate& est, bool envelope) {
  const CompactScheme& sc = field.scheme;
  const int n = sc.dim();
  const bool global = field.chart == DesingField::Chart::Global;

  std::vector<const TrajectorySample*> win;
  for (const auto& smp : traj.samples) {
    const double gap = est.t_max - smp.t;
    if (gap >= 1e-8 && gap <= 1e-2) win.push_back(&smp);
  }
  if (win.size() < 30)
    throw numeric_error("fit_blowup_rate: too few samples in the fitting window");
  const double span = (est.t_max - win.front()->t) / (est.t_max - win.back()->t);
  if (span < 100.0)
    throw numeric_error("fit_blowup_rate: window spans fewer than two decades");

  auto fit_series = [&](auto&& value) {
    std::vector<double> xs, ys;
    for (const auto* smp : win) {
      double v = value(*smp);
      if (!std::isfinite(v)) continue;
      xs.push_back(std::log(est.t_max - smp->t));
      ys.push_back(v);
    }
    if (envelope) envelope_filter(xs, ys);
    return linear_fit(xs, ys);
  };

  // log p(y) = log p(x) + log kappa (global); log p(y) -> log kappa in charts
  LinFit norm = fit_series([&](const TrajectorySample& smp) {
    if (global) {
      double px = p_functional(sc, smp.state);
      return std::log(px) + smp.log_kappa;
    }
    return smp.log_kappa;
  });
  if (!norm.ok) throw numeric_error("fit_blowup_rate: degenerate norm fit");
  est.fitted_norm_exponent = norm.slope;
  est.fit_residual = norm.rms;

  // |y_i| = |x_i| kappa^{alpha_i}; per-component fits are a global-chart
  // feature (chart states do not expose the original components directly)
  est.fitted_component_exponents.assign(n, std::nullopt);
  if (!global) return;
  for (int i = 0; i < n; ++i) {
    LinFit comp = fit_series([&](const TrajectorySample& smp) {
      double h = smp.state[i];
      if (std::abs(h) < 1e-14) return std::numeric_limits<double>::quiet_NaN();
      return std::log(std::abs(h)) + sc.alpha[i] * smp.log_kappa;
    });
    if (comp.ok) est.fitted_component_exponents[i] = comp.slope;
  }
}

std::vector<SweepRow> sweep_portrait(const DesingField& field,
                                     const std::vector<Vec>& grid, double tau_end,
                                     const std::vector<HorizonEquilibrium>& targets,
                                     const IntegrateOptions& opts, int jobs) {
  std::vector<SweepRow> rows(grid.size());
  auto work = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) {
      SweepRow row;
      row.start = grid[i];
      try {
        Trajectory tr = integrate(field, grid[i], tau_end, opts, &targets);
        row.termination = tr.termination;
        row.target_id = tr.target_id;
        row.final_t = tr.samples.back().t;
      } catch (const std::exception&) {
        row.termination = Termination::StepFailure;
      }
      rows[i] = std::move(row);
    }
  };
  jobs = std::max(1, jobs);
  if (jobs == 1 || grid.size() < 2) {
    work(0, grid.size());
  } else {
    std::vector<std::thread> pool;
    size_t chunk = (grid.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      size_t lo = w * chunk, hi = std::min(grid.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace qhblow
