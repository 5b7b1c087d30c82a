#include "qhblow/scheme.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace qhblow {

CompactScheme make_scheme(const std::vector<int>& alpha, const Vec& a, int k) {
  if (alpha.empty()) throw input_error("make_scheme: empty type vector");
  if (a.size() != alpha.size()) throw input_error("make_scheme: alpha/a length mismatch");
  if (k < 0) throw input_error("make_scheme: negative order offset");

  CompactScheme sc;
  sc.alpha = alpha;
  sc.a = a;
  sc.k = k;
  int c = 1;
  for (int i = 0; i < sc.dim(); ++i) {
    if (alpha[i] < 0) throw input_error("make_scheme: negative type entry");
    if (alpha[i] > 0) {
      sc.index_set.push_back(i);
      c = std::lcm(c, alpha[i]);
      if (a[i] < 1.0) throw input_error("make_scheme: a_i < 1 on the index set");
    }
  }
  if (sc.index_set.empty()) throw input_error("make_scheme: all-zero type vector");
  sc.c = c;
  sc.beta.assign(sc.dim(), 0);
  for (int i : sc.index_set) sc.beta[i] = c / alpha[i];
  return sc;
}

double p2c(const CompactScheme& sc, const Vec& y) {
  double sum = 0.0;
  for (int i : sc.index_set) {
    double yb = 1.0;
    for (int e = 0; e < sc.beta[i]; ++e) yb *= y[i];
    sum += sc.a[i] * yb * yb;
  }
  return sum;
}

double p_functional(const CompactScheme& sc, const Vec& y) {
  return std::pow(p2c(sc, y), 1.0 / (2.0 * sc.c));
}

double kappa(const CompactScheme& sc, const Vec& y) {
  return std::pow(1.0 + p2c(sc, y), 1.0 / (2.0 * sc.c));
}

Vec grad_kappa(const CompactScheme& sc, const Vec& y) {
  // d kappa / d y_i = a_i beta_i y_i^{2 beta_i - 1} / (c kappa^{2c-1})
  const double kap = kappa(sc, y);
  Vec g(y.size(), 0.0);
  const double denom = sc.c * std::pow(kap, 2.0 * sc.c - 1.0);
  for (int i : sc.index_set) {
    double yp = 1.0;
    for (int e = 0; e < 2 * sc.beta[i] - 1; ++e) yp *= y[i];
    g[i] = sc.a[i] * sc.beta[i] * yp / denom;
  }
  return g;
}

bool GlobalPoint::on_horizon(const CompactScheme& sc, double tol) const {
  return std::abs(p_functional(sc, x) - 1.0) <= tol;
}

Vec compactify(const CompactScheme& sc, const Vec& y) {
  if (static_cast<int>(y.size()) != sc.dim())
    throw input_error("compactify: dimension mismatch");
  const double kap = kappa(sc, y);
  Vec x(y.size());
  for (int i = 0; i < sc.dim(); ++i) x[i] = y[i] / std::pow(kap, sc.alpha[i]);
  return x;
}

Vec decompactify(const CompactScheme& sc, const Vec& x) {
  if (static_cast<int>(x.size()) != sc.dim())
    throw input_error("decompactify: dimension mismatch");
  const double q = 1.0 - p2c(sc, x);
  if (q <= horizon_tol)
    throw horizon_error("decompactify: point on or beyond the horizon");
  // kappa(y) = q^{-1/2c} in the compactified coordinates
  const double kap = std::pow(q, -1.0 / (2.0 * sc.c));
  Vec y(x.size());
  for (int i = 0; i < sc.dim(); ++i) y[i] = x[i] * std::pow(kap, sc.alpha[i]);
  return y;
}

DirectionalPoint dir_compactify(const CompactScheme& sc, int i, int sign, const Vec& y) {
  if (static_cast<int>(y.size()) != sc.dim())
    throw input_error("dir_compactify: dimension mismatch");
  if (sc.alpha[i] <= 0) throw chart_error("dir_compactify: chart index outside I_alpha");
  const double w = sign * y[i];
  if (w <= 0.0) throw chart_error("dir_compactify: point outside chart domain");
  DirectionalPoint dp;
  dp.chart_index = i;
  dp.chart_sign = sign;
  dp.s = std::pow(w, -1.0 / sc.alpha[i]);
  dp.theta.reserve(y.size() - 1);
  for (int j = 0; j < sc.dim(); ++j) {
    if (j == i) continue;
    dp.theta.push_back(y[j] * std::pow(dp.s, sc.alpha[j]));
  }
  return dp;
}

Vec chart_h(const CompactScheme& sc, const DirectionalPoint& dp) {
  Vec h(sc.dim());
  int t = 0;
  for (int j = 0; j < sc.dim(); ++j)
    h[j] = (j == dp.chart_index) ? static_cast<double>(dp.chart_sign) : dp.theta[t++];
  return h;
}

Vec dir_decompactify(const CompactScheme& sc, const DirectionalPoint& dp) {
  if (dp.s <= 0.0) throw horizon_error("dir_decompactify: point at infinity");
  const Vec h = chart_h(sc, dp);
  Vec y(sc.dim());
  for (int j = 0; j < sc.dim(); ++j) y[j] = h[j] * std::pow(dp.s, -sc.alpha[j]);
  return y;
}

Vec chart_to_global(const CompactScheme& sc, const DirectionalPoint& dp) {
  const Vec h = chart_h(sc, dp);
  double H = 0.0;
  for (int i : sc.index_set) {
    double hb = 1.0;
    for (int e = 0; e < sc.beta[i]; ++e) hb *= h[i];
    H += sc.a[i] * hb * hb;
  }
  const double base = std::pow(dp.s, 2.0 * sc.c) + H;
  Vec x(sc.dim());
  for (int j = 0; j < sc.dim(); ++j)
    x[j] = h[j] * std::pow(base, -sc.alpha[j] / (2.0 * sc.c));
  return x;
}

DirectionalPoint global_to_chart(const CompactScheme& sc, const Vec& x, int i, int sign) {
  if (sc.alpha[i] <= 0) throw chart_error("global_to_chart: chart index outside I_alpha");
  const double w = sign * x[i];
  if (w <= 0.0) throw chart_error("global_to_chart: point outside chart domain");
  const double q = 1.0 - p2c(sc, x);
  DirectionalPoint dp;
  dp.chart_index = i;
  dp.chart_sign = sign;
  // s = q^{1/2c} (sign x_i)^{-1/alpha_i}; q <= 0 (at or past the horizon) maps to s = 0
  dp.s = q > 0.0 ? std::pow(q, 1.0 / (2.0 * sc.c)) * std::pow(w, -1.0 / sc.alpha[i]) : 0.0;
  dp.theta.reserve(x.size() - 1);
  const double wi = std::pow(w, 1.0 / sc.alpha[i]);
  for (int j = 0; j < sc.dim(); ++j) {
    if (j == i) continue;
    dp.theta.push_back(x[j] * std::pow(wi, -sc.alpha[j]));
  }
  return dp;
}

Vec iota_symmetry(const CompactScheme& sc, const Vec& x) {
  Vec z(x);
  for (int i = 0; i < sc.dim(); ++i)
    if (sc.alpha[i] % 2 != 0) z[i] = -z[i];
  return z;
}

}  // namespace qhblow
