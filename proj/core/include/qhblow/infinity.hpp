#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qhblow/desing.hpp"

namespace qhblow {

enum class StabilityClass { Sink, Source, Saddle, Nonhyperbolic };

struct Classification {
  StabilityClass cls = StabilityClass::Nonhyperbolic;
  int n_stable = 0;
  int n_unstable = 0;
};

Classification classify(const std::vector<std::complex<double>>& eigenvalues,
                        double margin = 1e-6);

struct HorizonEquilibrium {
  Vec x;               // global-chart location (empty if not representable)
  Vec chart_state;     // (s, theta...) for directional / quasi-polar fields
  Eigen::MatrixXd jacobian;
  std::vector<std::complex<double>> eigenvalues;
  Classification classification;
  std::vector<std::optional<double>> blowup_exponents;  // -alpha_i/k per component
  double norm_exponent = 0.0;                           // -1/k
};

// Jacobian of the chart's field at the given state: a registered closed-form
// Jacobian wins, exactly quasi-homogeneous global sources use the analytic
// polynomial derivative, everything else falls back to finite differences.
Eigen::MatrixXd linearize(const DesingField& field, const Vec& state);

// Newton least-squares on {g(x) = 0, p(x)^{2c} = 1} from a seed grid on the
// horizon (global chart), or on the theta-subsystem at s = 0 (directional and
// quasi-polar charts). Results are deduplicated, closed under iota_alpha
// (global chart), classified, and deterministically ordered.
std::vector<HorizonEquilibrium> find_horizon_equilibria(
    const DesingField& field, const std::vector<Vec>& seeds = {},
    unsigned shuffle_seed = 0);

// attaches -alpha_i/k exponents where the location component is nonzero;
// throws unsupported_error when the equilibrium is not hyperbolic
void predict_blowup_exponents(const CompactScheme& scheme, HorizonEquilibrium& eq);

enum class CycleClass { Attracting, Repelling, Nonhyperbolic };

struct HorizonCycle {
  double period = 0.0;       // theta-period of the coefficient functions
  double alpha_T = 0.0;      // log of the formal return-map multiplier
  double multiplier = 1.0;   // e^{alpha(T)}
  int orientation = 1;       // sign of dtheta/dtau on the cycle
  CycleClass cls = CycleClass::Nonhyperbolic;
  double quadrature_error = 0.0;
};

// Floquet analysis of the invariant horizon cycle {r = 0} of an n = 2
// quasi-polar field with nonvanishing theta-motion. A negative orientation
// reverses the attracting/repelling reading of the multiplier.
HorizonCycle horizon_cycle_analysis(const DesingField& polar_field,
                                    double section_theta = 0.0);

}  // namespace qhblow
