#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qhblow/poly.hpp"
#include "qhblow/quasitrig.hpp"
#include "qhblow/scheme.hpp"

namespace qhblow {

// An evaluatable desingularized field. Polynomial sources are evaluated
// through the per-monomial kappa bookkeeping below; scenarios may register
// closed-form fields (and Jacobians) instead, which takes precedence.
struct DesingField {
  enum class Chart { Global, Directional, QuasiPolar };

  CompactScheme scheme;
  Chart chart = Chart::Global;
  int chart_index = 0;  // directional charts
  int chart_sign = 1;

  std::optional<QHSignature> sig;
  std::function<Vec(const Vec&)> explicit_field;
  std::function<Eigen::MatrixXd(const Vec&)> explicit_jacobian;

  std::shared_ptr<QuasiTrigTable> trig;  // quasi-polar charts
  int polar_l = 0;

  int time_exponent = 0;  // k: dtau = kappa^k dt (global), dtau_d = s^{-k} dt

  // state layout: global chart = x; directional/quasi-polar = (s, theta...)
  Vec eval(const Vec& state) const;
};

DesingField make_global_field(const CompactScheme& scheme, const QHSignature& sig);
DesingField make_directional_field(const CompactScheme& scheme, const QHSignature& sig,
                                   int chart_index, int chart_sign);

// f~_j(x) = kappa^{-(k+alpha_j)} f_j(kappa^{alpha_1} x_1, ...), evaluated
// per monomial as coeff * q^{gamma/2c} * x^e with gamma = (k+alpha_j) - w >= 0
// and q = 1 - sum a_j x_j^{2 beta_j}. Finite on the closed disc.
Vec f_tilde(const CompactScheme& scheme, const QHSignature& sig, const Vec& x);

Vec g_global(const DesingField& field, const Vec& x);
Vec g_directional(const DesingField& field, const DirectionalPoint& dp);

// G(x) = sum_{j in I} beta_j a_j x_j^{2 beta_j - 1} f~_j(x); the radial law
// reads d(1 - p^{2c})/dtau = -2 G * (1 - p^{2c}).
double radial_correction(const DesingField& field, const Vec& x);
double radial_derivative(const DesingField& field, const Vec& x);

// the field on the horizon, i.e. g with f~ replaced by the principal part
Vec horizon_field(const DesingField& field, const Vec& x);

// dt/dtau at the given state (kappa^{-k} in the global chart, s^k otherwise)
double time_rescale_factor(const DesingField& field, const Vec& state);

// closed-form polynomial g for exactly quasi-homogeneous sources (all
// kappa exponents vanish); throws unsupported_error otherwise
PolyVectorField g_global_poly(const CompactScheme& scheme, const QHSignature& sig);

// Richardson-extrapolated central-difference Jacobian of field.eval
Eigen::MatrixXd jacobian_fd(const DesingField& field, const Vec& state);

}  // namespace qhblow
