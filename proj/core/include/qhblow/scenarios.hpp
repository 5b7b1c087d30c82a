#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhblow/desing.hpp"

namespace qhblow {

struct ReferenceValue {
  std::string name;
  double value = 0.0;
  std::string provenance;
};

// A registered demonstration model: source field, compactification scheme,
// evaluatable charts, and named reference constants for regression tests.
struct Scenario {
  std::string name;
  std::string description;

  std::optional<PolyVectorField> source;
  CompactScheme scheme;
  std::optional<CompactScheme> alt_scheme;  // e.g. figure-reproduction weights

  std::optional<DesingField> global_field;
  std::optional<DesingField> polar_field;
  std::optional<DesingField> directional_field;      // two-fluid: left branch
  std::optional<DesingField> directional_field_alt;  // two-fluid: right branch

  std::vector<ReferenceValue> references;
  std::vector<Vec> horizon_seeds;  // chart-state seeds for the equilibrium search

  const DesingField& analysis_field() const;
  std::optional<double> reference(const std::string& key) const;
};

// y1' = y2, y2' = -y1^{2n+1} - y1^n y2; type (1, n+1), k = n; quasi-polar
// chart with l = n+1; alternate global scheme with a = (1, 3) for n = 2.
Scenario lienard(int n);

// u' = u^2 - v, v' = u^3/3; type (1,2) with a = (1,2), k = 1; global chart
// plus the quasi-polar chart used for eigenvalue computations.
Scenario keyfitz_kranzer();

struct TwoFluidBoundary {
  double rho1 = 1.0;
  double rho2 = 2.0;
  Vec xL{1.9, 0.25};  // (beta, r) with r = 1/v
  Vec xR{1.5, 0.2};
};

// Rational traveling-wave field; type (0,1), k = 1, directional chart in the
// v-direction is mandatory. The desingularized field is registered in closed
// form with state (r, x1).
Scenario two_fluid(const TwoFluidBoundary& bc = {});

// scalar y' = y^2; type (1), k = 1 (exact blow-up oracle)
Scenario riccati();

struct TwoFluidConstants {
  double c = 0.0, c1L = 0.0, c2L = 0.0, c1R = 0.0, c2R = 0.0;
};
TwoFluidConstants two_fluid_constants(const TwoFluidBoundary& bc);

std::vector<std::string> scenario_names();

struct ScenarioParams {
  int n = 2;
  TwoFluidBoundary two_fluid;
  std::optional<Vec> scheme_a;
};

// throws input_error for unknown names or invalid parameters
Scenario make_scenario(const std::string& name, const ScenarioParams& params = {});

}  // namespace qhblow
