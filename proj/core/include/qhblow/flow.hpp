#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhblow/desing.hpp"
#include "qhblow/infinity.hpp"

namespace qhblow {

enum class Termination {
  TauLimit,
  ConvergedEquilibrium,
  ConvergedCycle,
  LeftDomain,
  StepFailure,
};

struct TrajectorySample {
  double tau = 0.0;
  Vec state;              // chart coordinates
  double t = 0.0;         // accumulated physical time
  double log_kappa = 0.0; // log of the compactification gauge (-> infinity scale)
  double dt_dtau = 1.0;
};

struct Trajectory {
  DesingField::Chart chart = DesingField::Chart::Global;
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::TauLimit;
  int target_id = -1;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  bool backward = false;       // integrate the negated field; t still accumulates forward
  double eps_converge = 1e-9;  // proximity that tags convergence to a target
  double cycle_radius = 1e-9;  // s/r level that tags convergence to a horizon cycle
  bool horizon_cycle_target = false;
};

// Adaptive integration of the desingularized field with the physical time
// dt/dtau carried as quadrature. In the global chart log(1 - p^{2c}) is
// integrated via the radial evolution law as an extra state, which keeps
// dt/dtau accurate far beyond the point where 1 - p(x)^{2c} underflows.
Trajectory integrate(const DesingField& field, const Vec& start, double tau_end,
                     const IntegrateOptions& opts = {},
                     const std::vector<HorizonEquilibrium>* targets = nullptr);

struct BlowUpEstimate {
  double t_max = 0.0;
  double tail_bound = 0.0;
  double lambda_tail = 0.0;          // fitted decay rate of dt/dtau
  double lambda_predicted = 0.0;     // from the target's linearization (0 if n/a)
  double fitted_norm_exponent = 0.0;
  std::vector<std::optional<double>> fitted_component_exponents;
  double fit_residual = 0.0;  // RMS in log-log
  int target = -1;
};

// t_max = t(tau_N) + (dt/dtau)(tau_N) / lambda, with lambda the decay rate of
// dt/dtau over the trajectory tail (envelope-filtered for cycle targets).
BlowUpEstimate estimate_tmax(const DesingField& field, const Trajectory& traj,
                             const HorizonEquilibrium* target = nullptr,
                             bool envelope = false);

// Least-squares slopes of log p(y(t)) and log|y_i(t)| against
// log(t_max - t) over the window 1e-8 <= t_max - t <= 1e-2.
void fit_blowup_rate(const DesingField& field, const Trajectory& traj,
                     BlowUpEstimate& est, bool envelope = false);

struct SweepRow {
  Vec start;
  Termination termination = Termination::TauLimit;
  int target_id = -1;
  double final_t = 0.0;
};

std::vector<SweepRow> sweep_portrait(const DesingField& field,
                                     const std::vector<Vec>& grid, double tau_end,
                                     const std::vector<HorizonEquilibrium>& targets,
                                     const IntegrateOptions& opts = {}, int jobs = 1);

const char* termination_name(Termination t);

}  // namespace qhblow
