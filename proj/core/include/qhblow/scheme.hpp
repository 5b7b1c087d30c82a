#pragma once

#include <vector>

#include "qhblow/errors.hpp"

namespace qhblow {

using Vec = std::vector<double>;

// The tuple (alpha, a, beta, c, I_alpha, k) that fixes the functionals
//   p(y) = (sum_{i in I} a_i y_i^{2 beta_i})^{1/2c},  kappa = (1 + p^{2c})^{1/2c}
// and the compactification x_i = y_i / kappa^{alpha_i}.
struct CompactScheme {
  std::vector<int> alpha;
  Vec a;
  std::vector<int> beta;  // beta_i = c/alpha_i on I_alpha, 0 elsewhere
  int c = 1;
  int k = 0;
  std::vector<int> index_set;  // I_alpha = { i : alpha_i > 0 }

  int dim() const { return static_cast<int>(alpha.size()); }
};

// c = lcm{alpha_i : alpha_i > 0}; throws input_error on an all-zero alpha
// or a_i < 1 on the index set.
CompactScheme make_scheme(const std::vector<int>& alpha, const Vec& a, int k);

// p(y)^{2c} = sum a_i y_i^{2 beta_i}; even powers computed by squaring
// y_i^{beta_i} so the value is exactly even in each coordinate.
double p2c(const CompactScheme& sc, const Vec& y);
double p_functional(const CompactScheme& sc, const Vec& y);
double kappa(const CompactScheme& sc, const Vec& y);

// gradient of kappa at y (closed form)
Vec grad_kappa(const CompactScheme& sc, const Vec& y);

struct GlobalPoint {
  Vec x;
  bool on_horizon(const CompactScheme& sc, double tol = 1e-12) const;
};

inline constexpr double horizon_tol = 1e-12;

Vec compactify(const CompactScheme& sc, const Vec& y);
// throws horizon_error when p(x) >= 1 (no finite preimage)
Vec decompactify(const CompactScheme& sc, const Vec& x);

// Hyperplane chart around direction i (sign = +-1):
//   y_i = sign / s^{alpha_i},  y_j = theta_j / s^{alpha_j} (j != i).
// theta stores the n-1 remaining coordinates in index order.
struct DirectionalPoint {
  int chart_index = 0;
  int chart_sign = 1;
  double s = 0.0;
  Vec theta;
};

DirectionalPoint dir_compactify(const CompactScheme& sc, int i, int sign, const Vec& y);
Vec dir_decompactify(const CompactScheme& sc, const DirectionalPoint& dp);

// full coordinate vector (h_i = sign, h_j = theta_j) of a chart point
Vec chart_h(const CompactScheme& sc, const DirectionalPoint& dp);

// x_l = h_l (s^{2c} + H)^{-alpha_l/2c}, H = sum a_j h_j^{2 beta_j};
// valid for s >= 0, lands on the horizon exactly when s = 0.
Vec chart_to_global(const CompactScheme& sc, const DirectionalPoint& dp);
// inverse of chart_to_global, valid up to and including the horizon;
// requires sign*x_i > 0.
DirectionalPoint global_to_chart(const CompactScheme& sc, const Vec& x, int i, int sign);

// componentwise sign flip by parity of alpha_i (an involution)
Vec iota_symmetry(const CompactScheme& sc, const Vec& x);

}  // namespace qhblow
