#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhblow/scheme.hpp"

namespace qhblow {

struct Monomial {
  std::vector<int> exponents;
  double coefficient = 0.0;
};

// Sparse polynomial vector field f = (f_1, ..., f_n). Duplicate exponent
// vectors are merged on insertion and exact zeros dropped.
struct PolyVectorField {
  int dimension = 0;
  std::vector<std::vector<Monomial>> components;

  explicit PolyVectorField(int n = 0) : dimension(n), components(n) {}
  void add_term(int component, std::vector<int> exponents, double coefficient);
  bool is_zero() const;
};

Vec eval_field(const PolyVectorField& F, const Vec& y);

long weight(const Monomial& m, const std::vector<int>& alpha);

// The unique k with max_monomial(weight - alpha_j) == k in every nonempty
// component (and hence no monomial above k + alpha_j); nullopt when the
// component maxima disagree, k < 0, or the field is zero.
std::optional<int> validate_signature(const PolyVectorField& F,
                                      const std::vector<int>& alpha);

// All alpha with entries in [0, alpha_max], gcd of nonzero entries 1,
// nonempty index set and a valid signature with k >= 1; sorted by
// (k, lexicographic alpha).
std::vector<std::pair<std::vector<int>, int>> detect_signatures(
    const PolyVectorField& F, int alpha_max);

struct QHSignature {
  std::vector<int> alpha;
  int k = 0;
  std::vector<int> index_set;
  PolyVectorField principal;  // monomials of weight exactly k + alpha_j
  PolyVectorField residual;   // everything below
};

QHSignature decompose(const PolyVectorField& F, const std::vector<int>& alpha, int k);

struct C1Violation {
  int component = 0;
  Monomial monomial;
  int deficit = 0;  // (k + alpha_j) - weight
};

struct C1Report {
  bool ok = true;
  std::vector<C1Violation> violations;
};

// The compactified field extends C1 to the closed disc iff no monomial has
// deficit in {1, ..., 2c-1}.
C1Report check_c1_extension(const QHSignature& sig, const CompactScheme& scheme);

// --- small polynomial algebra (used to build the desingularized field in
// --- closed form for exactly quasi-homogeneous sources) ---
std::vector<Monomial> poly_add(const std::vector<Monomial>& p, const std::vector<Monomial>& q);
std::vector<Monomial> poly_mul(const std::vector<Monomial>& p, const std::vector<Monomial>& q);
std::vector<Monomial> poly_scale(const std::vector<Monomial>& p, double s);
std::vector<Monomial> poly_derivative(const std::vector<Monomial>& p, int var);
double poly_eval(const std::vector<Monomial>& p, const Vec& y);

// JSON model fragment:
// {"dimension": n, "components": [[{"exponents":[...],"coefficient":r},...],...]}
PolyVectorField parse_field_json(const std::string& text);

}  // namespace qhblow
