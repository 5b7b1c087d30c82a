#include "qhblow/desing.hpp"

#include <cmath>

namespace qhblow {

namespace {

constexpr double domain_slack = 1e-9;

double radicand(const CompactScheme& sc, const Vec& x) {
  double q = 1.0 - p2c(sc, x);
  if (q < -domain_slack)
    throw domain_error("evaluation outside the closed disc");
  return q > 0.0 ? q : 0.0;
}

Vec f_tilde_of(const CompactScheme& sc, const QHSignature& sig,
               const PolyVectorField& principal, const PolyVectorField& residual,
               const Vec& x) {
  // q is only needed by terms with a positive kappa deficit, so exactly
  // quasi-homogeneous fields stay polynomial (and probe-safe slightly
  // outside the disc, which finite-difference Jacobians rely on).
  const double q_raw = 1.0 - p2c(sc, x);
  const double inv2c = 1.0 / (2.0 * sc.c);
  Vec out(sc.dim(), 0.0);
  for (int j = 0; j < sc.dim(); ++j) {
    for (const auto* part : {&principal, &residual}) {
      for (const auto& m : part->components[j]) {
        double v = m.coefficient;
        for (int i = 0; i < sc.dim(); ++i)
          for (int e = 0; e < m.exponents[i]; ++e) v *= x[i];
        const long gamma = (sig.k + sig.alpha[j]) - weight(m, sig.alpha);
        if (gamma > 0) {
          if (q_raw < -domain_slack)
            throw domain_error("evaluation outside the closed disc");
          v *= std::pow(q_raw > 0.0 ? q_raw : 0.0, gamma * inv2c);  // kappa^{-gamma}
        }
        out[j] += v;
      }
    }
  }
  return out;
}

Vec g_from_ftilde(const CompactScheme& sc, const Vec& ft, const Vec& x) {
  double G = 0.0;
  for (int j : sc.index_set) {
    double xp = 1.0;
    for (int e = 0; e < 2 * sc.beta[j] - 1; ++e) xp *= x[j];
    G += sc.beta[j] * sc.a[j] * xp * ft[j];
  }
  Vec g(sc.dim());
  for (int i = 0; i < sc.dim(); ++i) {
    // the correction vanishes identically off the index set (alpha_i = 0)
    g[i] = sc.beta[i] > 0 ? ft[i] - G * x[i] / sc.beta[i] : ft[i];
  }
  return g;
}

}  // namespace

Vec f_tilde(const CompactScheme& scheme, const QHSignature& sig, const Vec& x) {
  return f_tilde_of(scheme, sig, sig.principal, sig.residual, x);
}

Vec g_global(const DesingField& field, const Vec& x) {
  if (field.explicit_field) return field.explicit_field(x);
  if (!field.sig) throw unsupported_error("g_global: no field source registered");
  const Vec ft = f_tilde(field.scheme, *field.sig, x);
  return g_from_ftilde(field.scheme, ft, x);
}

Vec g_directional(const DesingField& field, const DirectionalPoint& dp) {
  const CompactScheme& sc = field.scheme;
  const int n = sc.dim();
  Vec state(n);
  state[0] = dp.s;
  for (int j = 0; j + 1 < n; ++j) state[j + 1] = dp.theta[j];
  if (field.explicit_field) return field.explicit_field(state);
  if (!field.sig) throw unsupported_error("g_directional: no field source registered");
  const QHSignature& sig = *field.sig;

  const Vec h = chart_h(sc, dp);
  // f^_j = s^{(k+alpha_j) - w} * (monomial in h); exponents are nonnegative
  Eigen::VectorXd fhat = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    for (const auto* part : {&sig.principal, &sig.residual}) {
      for (const auto& m : part->components[j]) {
        double v = m.coefficient;
        for (int i = 0; i < n; ++i)
          for (int e = 0; e < m.exponents[i]; ++e) v *= h[i];
        const long gamma = (sig.k + sig.alpha[j]) - weight(m, sig.alpha);
        for (long e = 0; e < gamma; ++e) v *= dp.s;
        fhat[j] += v;
      }
    }
  }

  // A from the chart definition: first column alpha_l h_l, remaining columns
  // the identity rows of the hyperplane parameterization
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int l = 0; l < n; ++l) A(l, 0) = sc.alpha[l] * h[l];
  {
    int col = 1;
    for (int l = 0; l < n; ++l) {
      if (l == dp.chart_index) continue;
      A(l, col++) = 1.0;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw chart_error("g_directional: singular chart matrix");
  Eigen::VectorXd sol = lu.solve(fhat);

  Vec g(n);
  g[0] = -dp.s * sol[0];
  for (int j = 1; j < n; ++j) g[j] = sol[j];
  return g;
}

double radial_correction(const DesingField& field, const Vec& x) {
  if (!field.sig) throw unsupported_error("radial_correction: polynomial source required");
  const CompactScheme& sc = field.scheme;
  const Vec ft = f_tilde(sc, *field.sig, x);
  double G = 0.0;
  for (int j : sc.index_set) {
    double xp = 1.0;
    for (int e = 0; e < 2 * sc.beta[j] - 1; ++e) xp *= x[j];
    G += sc.beta[j] * sc.a[j] * xp * ft[j];
  }
  return G;
}

double radial_derivative(const DesingField& field, const Vec& x) {
  const double q = 1.0 - p2c(field.scheme, x);
  return -2.0 * radial_correction(field, x) * q;
}

Vec horizon_field(const DesingField& field, const Vec& x) {
  if (!field.sig) throw unsupported_error("horizon_field: polynomial source required");
  if (std::abs(p_functional(field.scheme, x) - 1.0) > 1e-8)
    throw domain_error("horizon_field: point not on the horizon");
  PolyVectorField empty(field.scheme.dim());
  const Vec ft = f_tilde_of(field.scheme, *field.sig, field.sig->principal, empty, x);
  return g_from_ftilde(field.scheme, ft, x);
}

double time_rescale_factor(const DesingField& field, const Vec& state) {
  const int k = field.time_exponent;
  if (field.chart == DesingField::Chart::Global) {
    const double q = radicand(field.scheme, state);
    return std::pow(q, k / (2.0 * field.scheme.c));  // kappa^{-k}
  }
  return std::pow(state[0], k);  // s^k
}

Vec DesingField::eval(const Vec& state) const {
  if (explicit_field) return explicit_field(state);
  switch (chart) {
    case Chart::Global:
      return g_global(*this, state);
    case Chart::Directional: {
      DirectionalPoint dp;
      dp.chart_index = chart_index;
      dp.chart_sign = chart_sign;
      dp.s = state[0];
      dp.theta.assign(state.begin() + 1, state.end());
      return g_directional(*this, dp);
    }
    case Chart::QuasiPolar:
      throw unsupported_error("quasi-polar charts require a registered closed form");
  }
  throw unsupported_error("unknown chart");
}

DesingField make_global_field(const CompactScheme& scheme, const QHSignature& sig) {
  DesingField f;
  f.scheme = scheme;
  f.chart = DesingField::Chart::Global;
  f.sig = sig;
  f.time_exponent = scheme.k;
  return f;
}

DesingField make_directional_field(const CompactScheme& scheme, const QHSignature& sig,
                                   int chart_index, int chart_sign) {
  if (scheme.alpha[chart_index] <= 0)
    throw chart_error("make_directional_field: chart index outside I_alpha");
  DesingField f;
  f.scheme = scheme;
  f.chart = DesingField::Chart::Directional;
  f.chart_index = chart_index;
  f.chart_sign = chart_sign;
  f.sig = sig;
  f.time_exponent = scheme.k;
  return f;
}

PolyVectorField g_global_poly(const CompactScheme& scheme, const QHSignature& sig) {
  if (!sig.residual.is_zero())
    throw unsupported_error("g_global_poly: source must be exactly quasi-homogeneous");
  const int n = scheme.dim();
  // G = sum_j beta_j a_j x_j^{2 beta_j - 1} f_j as a polynomial
  std::vector<Monomial> G;
  for (int j : scheme.index_set) {
    Monomial xm;
    xm.exponents.assign(n, 0);
    xm.exponents[j] = 2 * scheme.beta[j] - 1;
    xm.coefficient = scheme.beta[j] * scheme.a[j];
    G = poly_add(G, poly_mul({xm}, sig.principal.components[j]));
  }
  PolyVectorField g(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Monomial> gi = sig.principal.components[i];
    if (scheme.beta[i] > 0) {
      Monomial xi;
      xi.exponents.assign(n, 0);
      xi.exponents[i] = 1;
      xi.coefficient = -1.0 / scheme.beta[i];
      gi = poly_add(gi, poly_mul({xi}, G));
    }
    for (const auto& m : gi) g.add_term(i, m.exponents, m.coefficient);
  }
  return g;
}

Eigen::MatrixXd jacobian_fd(const DesingField& field, const Vec& state) {
  const int n = static_cast<int>(state.size());
  Eigen::MatrixXd J(n, n);
  for (int j = 0; j < n; ++j) {
    const double h = 1e-4 * (1.0 + std::abs(state[j]));
    auto central = [&](double step) {
      Vec xp = state, xm = state;
      xp[j] += step;
      xm[j] -= step;
      Vec fp = field.eval(xp), fm = field.eval(xm);
      Eigen::VectorXd d(n);
      for (int i = 0; i < n; ++i) d[i] = (fp[i] - fm[i]) / (2.0 * step);
      return d;
    };
    Eigen::VectorXd d1 = central(h), d2 = central(h / 2.0);
    J.col(j) = (4.0 * d2 - d1) / 3.0;
  }
  return J;
}

}  // namespace qhblow
