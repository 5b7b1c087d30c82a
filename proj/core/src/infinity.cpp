#include "qhblow/infinity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qhblow {

namespace {

constexpr double dedup_radius = 1e-8;
constexpr double residual_tol = 1e-12;

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double dist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// augmented residual (g(x), p^{2c}(x) - 1) for the global-chart search
Eigen::VectorXd augmented(const DesingField& field, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd F(n + 1);
  Vec g = g_global(field, x);
  for (int i = 0; i < n; ++i) F[i] = g[i];
  F[n] = p2c(field.scheme, x) - 1.0;
  return F;
}

bool newton_horizon(const DesingField& field, Vec& x) {
  const int n = static_cast<int>(x.size());
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd F;
    try {
      F = augmented(field, x);
    } catch (const domain_error&) {
      return false;
    }
    if (F.lpNorm<Eigen::Infinity>() < residual_tol) return true;

    Eigen::MatrixXd J(n + 1, n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(x[j]));
      Vec xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      try {
        J.col(j) = (augmented(field, xp) - augmented(field, xm)) / (2.0 * h);
      } catch (const domain_error&) {
        return false;
      }
    }
    Eigen::VectorXd dx = J.colPivHouseholderQr().solve(-F);
    double lambda = 1.0;
    const double f0 = F.norm();
    bool moved = false;
    for (int half = 0; half < 25; ++half) {
      Vec trial = x;
      for (int j = 0; j < n; ++j) trial[j] += lambda * dx[j];
      try {
        if (augmented(field, trial).norm() < f0) {
          x = trial;
          moved = true;
          break;
        }
      } catch (const domain_error&) {
      }
      lambda *= 0.5;
    }
    if (!moved) return false;
  }
  return false;
}

// theta-subsystem Newton at s = 0 for directional / quasi-polar fields
bool newton_chart(const DesingField& field, Vec& theta) {
  const int m = static_cast<int>(theta.size());
  auto resid = [&](const Vec& th) {
    Vec state(m + 1, 0.0);
    for (int j = 0; j < m; ++j) state[j + 1] = th[j];
    Vec g = field.eval(state);
    Eigen::VectorXd F(m);
    for (int j = 0; j < m; ++j) F[j] = g[j + 1];
    return F;
  };
  for (int it = 0; it < 100; ++it) {
    Eigen::VectorXd F;
    try {
      F = resid(theta);
    } catch (const std::exception&) {
      return false;
    }
    if (F.lpNorm<Eigen::Infinity>() < residual_tol) return true;
    Eigen::MatrixXd J(m, m);
    for (int j = 0; j < m; ++j) {
      const double h = 1e-7 * (1.0 + std::abs(theta[j]));
      Vec tp = theta, tm = theta;
      tp[j] += h;
      tm[j] -= h;
      try {
        J.col(j) = (resid(tp) - resid(tm)) / (2.0 * h);
      } catch (const std::exception&) {
        return false;
      }
    }
    Eigen::VectorXd dth = J.colPivHouseholderQr().solve(-F);
    double lambda = 1.0;
    const double f0 = F.norm();
    bool moved = false;
    for (int half = 0; half < 25; ++half) {
      Vec trial = theta;
      for (int j = 0; j < m; ++j) trial[j] += lambda * dth[j];
      try {
        if (resid(trial).norm() < f0) {
          theta = trial;
          moved = true;
          break;
        }
      } catch (const std::exception&) {
      }
      lambda *= 0.5;
    }
    if (!moved) return false;
  }
  return false;
}

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& J) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(J);
  std::vector<std::complex<double>> ev(J.rows());
  for (int i = 0; i < J.rows(); ++i) ev[i] = es.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

Vec polar_to_global(const DesingField& field, double theta) {
  const CompactScheme& sc = field.scheme;
  auto [c, s] = field.trig->cs_sn(theta);
  Vec h{c, s};
  double H = 0.0;
  for (int i : sc.index_set) {
    double hb = 1.0;
    for (int e = 0; e < sc.beta[i]; ++e) hb *= h[i];
    H += sc.a[i] * hb * hb;
  }
  Vec x(2);
  for (int i = 0; i < 2; ++i) x[i] = h[i] * std::pow(H, -sc.alpha[i] / (2.0 * sc.c));
  return x;
}

void finish_equilibrium(const DesingField& field, HorizonEquilibrium& eq) {
  const Vec& state = field.chart == DesingField::Chart::Global ? eq.x : eq.chart_state;
  eq.jacobian = linearize(field, state);
  eq.eigenvalues = sorted_eigenvalues(eq.jacobian);
  eq.classification = classify(eq.eigenvalues);
  if (eq.classification.cls != StabilityClass::Nonhyperbolic && !eq.x.empty())
    predict_blowup_exponents(field.scheme, eq);
}

}  // namespace

Classification classify(const std::vector<std::complex<double>>& eigenvalues,
                        double margin) {
  if (margin <= 0.0) throw input_error("classify: margin must be positive");
  Classification c;
  for (const auto& ev : eigenvalues) {
    if (std::abs(ev.real()) <= margin) {
      c.cls = StabilityClass::Nonhyperbolic;
      return c;
    }
    (ev.real() < 0.0 ? c.n_stable : c.n_unstable)++;
  }
  if (c.n_unstable == 0)
    c.cls = StabilityClass::Sink;
  else if (c.n_stable == 0)
    c.cls = StabilityClass::Source;
  else
    c.cls = StabilityClass::Saddle;
  return c;
}

Eigen::MatrixXd linearize(const DesingField& field, const Vec& state) {
  if (field.explicit_jacobian) return field.explicit_jacobian(state);
  if (field.chart == DesingField::Chart::Global && field.sig &&
      field.sig->residual.is_zero()) {
    PolyVectorField g = g_global_poly(field.scheme, *field.sig);
    const int n = g.dimension;
    Eigen::MatrixXd J(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        J(i, j) = poly_eval(poly_derivative(g.components[i], j), state);
    return J;
  }
  return jacobian_fd(field, state);
}

void predict_blowup_exponents(const CompactScheme& scheme, HorizonEquilibrium& eq) {
  if (eq.classification.cls == StabilityClass::Nonhyperbolic)
    throw unsupported_error("predict_blowup_exponents: equilibrium not hyperbolic");
  if (scheme.k <= 0)
    throw unsupported_error("predict_blowup_exponents: order offset k must be positive");
  eq.blowup_exponents.assign(scheme.dim(), std::nullopt);
  for (int i : scheme.index_set)
    if (std::abs(eq.x[i]) > 1e-8)
      eq.blowup_exponents[i] = -static_cast<double>(scheme.alpha[i]) / scheme.k;
  eq.norm_exponent = -1.0 / scheme.k;
}

std::vector<HorizonEquilibrium> find_horizon_equilibria(const DesingField& field,
                                                        const std::vector<Vec>& seeds,
                                                        unsigned shuffle_seed) {
  const CompactScheme& sc = field.scheme;
  const int n = sc.dim();
  std::vector<HorizonEquilibrium> found;

  if (field.chart == DesingField::Chart::Global) {
    std::vector<Vec> pool = seeds;
    if (pool.empty()) {
      // radial projection x_i = v_i / p(v)^{alpha_i} lands seeds on the horizon
      auto project = [&](Vec v) -> std::optional<Vec> {
        double p = p_functional(sc, v);
        if (p < 1e-6) return std::nullopt;
        for (int i = 0; i < n; ++i) v[i] /= std::pow(p, sc.alpha[i]);
        return v;
      };
      if (n == 2) {
        for (int i = 0; i < 256; ++i) {
          double phi = 2.0 * M_PI * i / 256.0;
          if (auto x = project({std::cos(phi), std::sin(phi)})) pool.push_back(*x);
        }
      } else {
        std::mt19937 rng(0x9e3779b9);
        std::uniform_real_distribution<double> dist01(-1.0, 1.0);
        for (int i = 0; i < 512; ++i) {
          Vec v(n);
          for (int j = 0; j < n; ++j) v[j] = dist01(rng);
          if (auto x = project(std::move(v))) pool.push_back(*x);
        }
      }
    }
    std::mt19937 rng(shuffle_seed);
    std::shuffle(pool.begin(), pool.end(), rng);

    std::vector<Vec> roots;
    auto push_root = [&](Vec x) {
      for (const auto& r : roots)
        if (dist(r, x) < dedup_radius) return;
      roots.push_back(std::move(x));
    };
    for (const auto& seed : pool) {
      Vec x = seed;
      if (newton_horizon(field, x)) push_root(x);
    }
    // close the root set under the iota_alpha symmetry
    for (size_t i = 0; i < roots.size(); ++i) {
      Vec mirror = iota_symmetry(sc, roots[i]);
      if (newton_horizon(field, mirror)) push_root(mirror);
    }
    std::sort(roots.begin(), roots.end());
    // re-polish from a rounded canonical seed so the reported coordinates do
    // not depend on which shuffled seed happened to find each root first
    for (auto& r : roots) {
      Vec canon(n);
      for (int i = 0; i < n; ++i) canon[i] = std::round(r[i] * 1e6) / 1e6;
      if (newton_horizon(field, canon) && dist(canon, r) < dedup_radius) r = canon;
    }
    for (auto& r : roots) {
      HorizonEquilibrium eq;
      eq.x = std::move(r);
      finish_equilibrium(field, eq);
      found.push_back(std::move(eq));
    }
    return found;
  }

  // directional / quasi-polar: solve the theta-subsystem on {s = 0}
  std::vector<Vec> pool;
  for (const auto& s : seeds)
    pool.push_back(Vec(s.begin() + 1, s.end()));  // seeds given as chart states
  if (pool.empty()) {
    if (field.chart == DesingField::Chart::QuasiPolar) {
      if (!field.trig) throw unsupported_error("quasi-polar field without trig table");
      for (int i = 0; i < 256; ++i)
        pool.push_back({field.trig->period * i / 256.0});
    } else {
      for (int i = 0; i < 128; ++i)
        pool.push_back(Vec(n - 1, -4.0 + 8.0 * i / 127.0));
    }
  }
  const double wrap =
      field.chart == DesingField::Chart::QuasiPolar ? field.trig->period : 0.0;
  std::vector<Vec> roots;
  auto push_root = [&](Vec th) {
    if (wrap > 0.0) {
      th[0] = std::fmod(th[0], wrap);
      if (th[0] < 0.0) th[0] += wrap;
    }
    for (const auto& r : roots) {
      double d = dist(r, th);
      if (wrap > 0.0)
        d = std::min(d, std::abs(wrap - std::abs(r[0] - th[0])));
      if (d < dedup_radius) return;
    }
    roots.push_back(std::move(th));
  };
  for (const auto& seed : pool) {
    Vec th = seed;
    if (newton_chart(field, th)) push_root(th);
  }
  std::sort(roots.begin(), roots.end());
  for (auto& r : roots) {
    HorizonEquilibrium eq;
    eq.chart_state.assign(n, 0.0);
    for (int j = 0; j + 1 < n; ++j) eq.chart_state[j + 1] = r[j];
    if (field.chart == DesingField::Chart::QuasiPolar)
      eq.x = polar_to_global(field, r[0]);
    else {
      DirectionalPoint dp;
      dp.chart_index = field.chart_index;
      dp.chart_sign = field.chart_sign;
      dp.s = 0.0;
      dp.theta = r;
      eq.x = chart_to_global(sc, dp);
    }
    finish_equilibrium(field, eq);
    found.push_back(std::move(eq));
  }
  return found;
}

HorizonCycle horizon_cycle_analysis(const DesingField& polar_field,
                                    double section_theta) {
  if (polar_field.chart != DesingField::Chart::QuasiPolar || !polar_field.trig)
    throw unsupported_error("horizon_cycle_analysis: quasi-polar field required");
  const double T = polar_field.trig->period;

  auto w = [&](double th) { return polar_field.eval({0.0, th})[1]; };
  auto rho = [&](double th) { return linearize(polar_field, {0.0, th})(0, 0); };

  int orientation = 0;
  for (int i = 0; i < 512; ++i) {
    double wi = w(section_theta + T * i / 512.0);
    if (std::abs(wi) < 1e-8)
      throw unsupported_error("horizon_cycle_analysis: theta-motion vanishes");
    int s = wi > 0.0 ? 1 : -1;
    if (orientation == 0) orientation = s;
    if (s != orientation)
      throw unsupported_error("horizon_cycle_analysis: theta-motion changes sign");
  }

  auto integrand = [&](double th) { return rho(th) / w(th); };
  // composite Simpson with doubling until two refinements agree
  auto simpson = [&](int N) {
    double h = T / N;
    double sum = integrand(section_theta) + integrand(section_theta + T);
    for (int i = 1; i < N; ++i)
      sum += (i % 2 ? 4.0 : 2.0) * integrand(section_theta + i * h);
    return sum * h / 3.0;
  };
  double prev = simpson(64), cur = prev, err = 1.0;
  for (int N = 128; N <= 1 << 16; N *= 2) {
    cur = simpson(N);
    err = std::abs(cur - prev);
    prev = cur;
    if (err < 1e-11) break;
  }

  HorizonCycle cyc;
  cyc.period = T;
  cyc.alpha_T = cur;
  cyc.multiplier = std::exp(cur);
  cyc.orientation = orientation;
  cyc.quadrature_error = err;
  if (std::abs(cur) < 1e-8)
    cyc.cls = CycleClass::Nonhyperbolic;
  else {
    bool contracting = cur < 0.0;
    // a negative theta-orientation reverses the stability reading
    if (orientation < 0) contracting = !contracting;
    cyc.cls = contracting ? CycleClass::Attracting : CycleClass::Repelling;
  }
  return cyc;
}

}  // namespace qhblow
