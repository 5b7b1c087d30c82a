#include "qhblow/scenarios.hpp"

#include <cmath>
#include <memory>

namespace qhblow {

namespace {

std::shared_ptr<QuasiTrigTable> shared_table(int l) {
  return std::make_shared<QuasiTrigTable>(build_table(l));
}

DesingField polar_field_from(const CompactScheme& scheme, int l,
                             std::function<Vec(const QuasiTrigTable&, const Vec&)> f,
                             std::function<Eigen::MatrixXd(const QuasiTrigTable&, const Vec&)> jac) {
  DesingField fld;
  fld.scheme = scheme;
  fld.chart = DesingField::Chart::QuasiPolar;
  fld.polar_l = l;
  fld.trig = shared_table(l);
  fld.time_exponent = scheme.k;
  auto table = fld.trig;
  fld.explicit_field = [table, f](const Vec& state) { return f(*table, state); };
  fld.explicit_jacobian = [table, jac](const Vec& state) { return jac(*table, state); };
  return fld;
}

}  // namespace

const DesingField& Scenario::analysis_field() const {
  if (global_field) return *global_field;
  if (directional_field) return *directional_field;
  if (polar_field) return *polar_field;
  throw unsupported_error("scenario has no registered field");
}

std::optional<double> Scenario::reference(const std::string& key) const {
  for (const auto& r : references)
    if (r.name == key) return r.value;
  return std::nullopt;
}

Scenario lienard(int n) {
  if (n < 1) throw input_error("lienard: n must be >= 1");
  Scenario sc;
  sc.name = "lienard";
  sc.description =
      "y1' = y2, y2' = -y1^(2n+1) - y1^n y2; horizon is a periodic orbit for "
      "even n. The global chart uses the figure weights a = (1,3).";

  PolyVectorField F(2);
  F.add_term(0, {0, 1}, 1.0);
  F.add_term(1, {2 * n + 1, 0}, -1.0);
  F.add_term(1, {n, 1}, -1.0);
  sc.source = F;

  sc.scheme = make_scheme({1, n + 1}, {1.0, 1.0}, n);
  sc.alt_scheme = make_scheme({1, n + 1}, {1.0, 3.0}, n);

  QHSignature sig = decompose(F, {1, n + 1}, n);
  sc.global_field = make_global_field(*sc.alt_scheme, sig);

  // dr/dtau = r Cs^n Sn^2, dtheta/dtau = -(1 + Cs^{n+1} Sn); state (r, theta)
  const int l = n + 1;
  sc.polar_field = polar_field_from(
      sc.scheme, l,
      [n](const QuasiTrigTable& trig, const Vec& st) -> Vec {
        auto [C, S] = trig.cs_sn(st[1]);
        double Cn = std::pow(C, n);
        return {st[0] * Cn * S * S, -(1.0 + Cn * C * S)};
      },
      [n, l](const QuasiTrigTable& trig, const Vec& st) -> Eigen::MatrixXd {
        auto [C, S] = trig.cs_sn(st[1]);
        const double Cn = std::pow(C, n);
        Eigen::MatrixXd J(2, 2);
        J(0, 0) = Cn * S * S;
        // d/dtheta (Cs^n Sn^2) with Cs' = -Sn, Sn' = Cs^{2l-1}
        J(0, 1) = st[0] * (-n * std::pow(C, n - 1) * S * S * S +
                           2.0 * Cn * std::pow(C, 2 * l - 1) * S);
        J(1, 0) = 0.0;
        // -d/dtheta (Cs^{n+1} Sn)
        J(1, 1) = (n + 1) * Cn * S * S - Cn * C * std::pow(C, 2 * l - 1);
        return J;
      });

  sc.references = {
      {"t_max_backward", 20.785, "regression baseline (approximate)"},
      {"x0_1", 0.1, "start for the backward blow-up run"},
      {"x0_2", 0.1, "start for the backward blow-up run"},
  };
  return sc;
}

Scenario keyfitz_kranzer() {
  Scenario sc;
  sc.name = "kk";
  sc.description = "u' = u^2 - v, v' = u^3/3; type (1,2), weights a = (1,2).";

  PolyVectorField F(2);
  F.add_term(0, {2, 0}, 1.0);
  F.add_term(0, {0, 1}, -1.0);
  F.add_term(1, {3, 0}, 1.0 / 3.0);
  sc.source = F;
  sc.scheme = make_scheme({1, 2}, {1.0, 2.0}, 1);

  QHSignature sig = decompose(F, {1, 2}, 1);
  sc.global_field = make_global_field(sc.scheme, sig);

  // dr/dtau = -r (Cs^5 - (2/3) Cs^3 Sn)
  // dtheta/dtau = -2 Cs^2 Sn + 2 Sn^2 + (1/3) Cs^4;  state (r, theta), l = 2
  sc.polar_field = polar_field_from(
      sc.scheme, 2,
      [](const QuasiTrigTable& trig, const Vec& st) -> Vec {
        auto [C, S] = trig.cs_sn(st[1]);
        double C2 = C * C, C3 = C2 * C, C4 = C3 * C, C5 = C4 * C;
        return {-st[0] * (C5 - 2.0 / 3.0 * C3 * S),
                -2.0 * C2 * S + 2.0 * S * S + C4 / 3.0};
      },
      [](const QuasiTrigTable& trig, const Vec& st) -> Eigen::MatrixXd {
        auto [C, S] = trig.cs_sn(st[1]);
        double C2 = C * C, C3 = C2 * C, C4 = C3 * C, C5 = C4 * C, C6 = C5 * C;
        Eigen::MatrixXd J(2, 2);
        J(0, 0) = -(C5 - 2.0 / 3.0 * C3 * S);
        // -r d/dtheta (Cs^5 - (2/3) Cs^3 Sn), using Cs' = -Sn, Sn' = Cs^3
        J(0, 1) = -st[0] * (-5.0 * C4 * S + 2.0 * C2 * S * S - 2.0 / 3.0 * C6);
        J(1, 0) = 0.0;
        J(1, 1) = 4.0 * C * S * S - 2.0 * C5 + 8.0 / 3.0 * C3 * S;
        return J;
      });

  const double r3 = std::sqrt(3.0);
  const double A = (15.0 + 3.0 * r3) / 22.0, B = (7.0 - 3.0 * r3) / 44.0;
  const double C = (15.0 - 3.0 * r3) / 22.0, D = (7.0 + 3.0 * r3) / 44.0;
  sc.references = {
      {"x1_p1", std::pow(A, 0.25), "closed form"},
      {"x2_p1", std::sqrt(B), "closed form"},
      {"x1_p2", std::pow(C, 0.25), "closed form"},
      {"x2_p2", std::sqrt(D), "closed form"},
      {"x2_p1_decimal", 0.20247601301, "published decimals"},
      {"x2_p2_decimal", 0.52648388611, "published decimals"},
      {"x1_p1_decimal", 0.97883950723, "published decimals"},
      {"x1_p2_decimal", 0.81704027943, "published decimals"},
      {"mu_r_p1", -std::pow(A, 0.75) * (std::sqrt(A) - 2.0 / 3.0 * std::sqrt(B)),
       "closed form"},
      {"mu_theta_p1",
       2.0 * std::pow(A, 0.25) * ((-4.0 - 3.0 * r3) / 11.0 + 4.0 / 3.0 * std::sqrt(A * B)),
       "closed form"},
      {"mu_r_p2", -std::pow(C, 0.75) * (std::sqrt(C) - 2.0 / 3.0 * std::sqrt(D)),
       "closed form"},
      {"mu_theta_p2",
       2.0 * std::pow(C, 0.25) * ((-4.0 + 3.0 * r3) / 11.0 + 4.0 / 3.0 * std::sqrt(C * D)),
       "closed form"},
      {"mu_r_p1_decimal", -0.7719863801113, "published decimals"},
      {"mu_theta_p1_decimal", -1.130266505985, "published decimals"},
      {"mu_r_p2_decimal", -0.1726609270826, "published decimals"},
      {"mu_theta_p2_decimal", 0.9434368505431, "published decimals"},
  };
  return sc;
}

TwoFluidConstants two_fluid_constants(const TwoFluidBoundary& bc) {
  auto B1 = [&](double b) { return (b - bc.rho1) * (b - bc.rho2) / b; };
  auto B2 = [&](double b) { return (b * b - bc.rho1 * bc.rho2) / (2.0 * b * b); };
  const double bL = bc.xL[0], bR = bc.xR[0];
  const double vL = 1.0 / bc.xL[1], vR = 1.0 / bc.xR[1];
  TwoFluidConstants k;
  k.c = (vR * B1(bR) - vL * B1(bL)) / (bR - bL);
  k.c1L = vL * B1(bL) - k.c * bL;
  k.c2L = vL * vL * B2(bL) - k.c * vL;
  k.c1R = vR * B1(bR) - k.c * bR;
  k.c2R = vR * vR * B2(bR) - k.c * vR;
  return k;
}

Scenario two_fluid(const TwoFluidBoundary& bc) {
  if (!(0.0 < bc.rho1 && bc.rho1 < bc.rho2))
    throw input_error("two_fluid: need 0 < rho1 < rho2");
  for (const Vec* x : {&bc.xL, &bc.xR}) {
    if (x->size() != 2 || (*x)[1] <= 0.0)
      throw input_error("two_fluid: boundary states must be (beta, r) with r > 0");
    if ((*x)[0] < bc.rho1 || (*x)[0] > bc.rho2)
      throw input_error("two_fluid: beta outside the physical range [rho1, rho2]");
  }

  Scenario sc;
  sc.name = "two-fluid";
  sc.description =
      "rational traveling-wave field; directional chart (r, x1) with r = 1/v, "
      "horizon {r = 0}.";
  sc.scheme = make_scheme({0, 1}, {1.0, 1.0}, 1);

  const TwoFluidConstants ks = two_fluid_constants(bc);
  const double rho1 = bc.rho1, rho2 = bc.rho2;

  auto branch_field = [&](double c1, double c2) {
    DesingField fld;
    fld.scheme = sc.scheme;
    fld.chart = DesingField::Chart::Directional;
    fld.chart_index = 1;
    fld.chart_sign = 1;
    fld.time_exponent = 1;
    const double c = ks.c;
    fld.explicit_field = [=](const Vec& st) -> Vec {
      const double r = st[0], b = st[1];
      const double B1 = (b - rho1) * (b - rho2) / b;
      const double B2 = (b * b - rho1 * rho2) / (2.0 * b * b);
      return {-r * (B2 - c * r - c2 * r * r), B1 - c * b * r - c1 * r};
    };
    fld.explicit_jacobian = [=](const Vec& st) -> Eigen::MatrixXd {
      const double r = st[0], b = st[1];
      const double B1p = 1.0 - rho1 * rho2 / (b * b);
      const double B2 = (b * b - rho1 * rho2) / (2.0 * b * b);
      const double B2p = rho1 * rho2 / (b * b * b);
      Eigen::MatrixXd J(2, 2);
      J(0, 0) = -(B2 - c * r - c2 * r * r) - r * (-c - 2.0 * c2 * r);
      J(0, 1) = -r * B2p;
      J(1, 0) = -c * b - c1;
      J(1, 1) = B1p - c * r;
      return J;
    };
    return fld;
  };
  sc.directional_field = branch_field(ks.c1L, ks.c2L);
  sc.directional_field_alt = branch_field(ks.c1R, ks.c2R);
  sc.horizon_seeds = {{0.0, rho1}, {0.0, rho2}};

  sc.references = {
      {"wave_speed_c", ks.c, "derived from the boundary data"},
      {"mu1_p1", 2.0 - (rho1 + rho2) / rho1, "closed form"},
      {"mu2_p1", -0.5 * (1.0 - rho2 / rho1), "closed form"},
      {"mu1_p2", 2.0 - (rho1 + rho2) / rho2, "closed form"},
      {"mu2_p2", -0.5 * (1.0 - rho1 / rho2), "closed form"},
  };
  return sc;
}

Scenario riccati() {
  Scenario sc;
  sc.name = "riccati";
  sc.description = "scalar y' = y^2 with the exact blow-up time t_max = 1/y(0)";
  PolyVectorField F(1);
  F.add_term(0, {2}, 1.0);
  sc.source = F;
  sc.scheme = make_scheme({1}, {1.0}, 1);
  QHSignature sig = decompose(F, {1}, 1);
  sc.global_field = make_global_field(sc.scheme, sig);
  sc.references = {{"t_max_from_1", 1.0, "exact solution y(t) = 1/(1 - t)"}};
  return sc;
}

std::vector<std::string> scenario_names() {
  return {"kk", "lienard", "two-fluid", "riccati"};
}

Scenario make_scenario(const std::string& name, const ScenarioParams& params) {
  Scenario sc;
  if (name == "kk")
    sc = keyfitz_kranzer();
  else if (name == "lienard")
    sc = lienard(params.n);
  else if (name == "two-fluid" || name == "two_fluid")
    sc = two_fluid(params.two_fluid);
  else if (name == "riccati")
    sc = riccati();
  else
    throw input_error("unknown scenario: " + name);

  if (params.scheme_a && sc.source) {
    sc.scheme = make_scheme(sc.scheme.alpha, *params.scheme_a, sc.scheme.k);
    QHSignature sig = decompose(*sc.source, sc.scheme.alpha, sc.scheme.k);
    sc.global_field = make_global_field(sc.scheme, sig);
  }
  return sc;
}

}  // namespace qhblow
