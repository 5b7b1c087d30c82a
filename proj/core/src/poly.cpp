#include "qhblow/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

namespace qhblow {

void PolyVectorField::add_term(int component, std::vector<int> exponents,
                               double coefficient) {
  if (component < 0 || component >= dimension)
    throw input_error("add_term: component index out of range");
  if (static_cast<int>(exponents.size()) != dimension)
    throw input_error("add_term: exponent vector length mismatch");
  for (int e : exponents)
    if (e < 0) throw input_error("add_term: negative exponent");
  auto& terms = components[component];
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (it->exponents == exponents) {
      it->coefficient += coefficient;
      if (it->coefficient == 0.0) terms.erase(it);
      return;
    }
  }
  if (coefficient != 0.0) terms.push_back({std::move(exponents), coefficient});
}

bool PolyVectorField::is_zero() const {
  for (const auto& comp : components)
    if (!comp.empty()) return false;
  return true;
}

static double eval_monomial(const Monomial& m, const Vec& y) {
  double v = m.coefficient;
  for (size_t i = 0; i < y.size(); ++i)
    for (int e = 0; e < m.exponents[i]; ++e) v *= y[i];
  return v;
}

Vec eval_field(const PolyVectorField& F, const Vec& y) {
  if (static_cast<int>(y.size()) != F.dimension)
    throw input_error("eval_field: dimension mismatch");
  Vec out(F.dimension, 0.0);
  for (int j = 0; j < F.dimension; ++j)
    for (const auto& m : F.components[j]) out[j] += eval_monomial(m, y);
  return out;
}

long weight(const Monomial& m, const std::vector<int>& alpha) {
  if (m.exponents.size() != alpha.size())
    throw input_error("weight: length mismatch");
  long w = 0;
  for (size_t i = 0; i < alpha.size(); ++i)
    w += static_cast<long>(alpha[i]) * m.exponents[i];
  return w;
}

std::optional<int> validate_signature(const PolyVectorField& F,
                                      const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != F.dimension)
    throw input_error("validate_signature: alpha length mismatch");
  bool all_zero = true;
  for (int a : alpha) {
    if (a < 0) throw input_error("validate_signature: negative type entry");
    if (a > 0) all_zero = false;
  }
  if (all_zero) throw input_error("validate_signature: all-zero type vector");

  std::optional<long> k;
  for (int j = 0; j < F.dimension; ++j) {
    if (F.components[j].empty()) continue;
    long top = std::numeric_limits<long>::min();
    for (const auto& m : F.components[j])
      top = std::max(top, weight(m, alpha) - alpha[j]);
    if (!k)
      k = top;
    else if (*k != top)
      return std::nullopt;
  }
  if (!k || *k < 0) return std::nullopt;
  return static_cast<int>(*k);
}

std::vector<std::pair<std::vector<int>, int>> detect_signatures(
    const PolyVectorField& F, int alpha_max) {
  if (alpha_max < 1) throw input_error("detect_signatures: alpha_max < 1");
  std::vector<std::pair<std::vector<int>, int>> found;
  std::vector<int> alpha(F.dimension, 0);
  // odometer over {0..alpha_max}^n
  while (true) {
    bool nonzero = false;
    int g = 0;
    for (int a : alpha) {
      if (a > 0) {
        nonzero = true;
        g = std::gcd(g, a);
      }
    }
    if (nonzero && g == 1) {
      auto k = validate_signature(F, alpha);
      if (k && *k >= 1) found.emplace_back(alpha, *k);
    }
    int i = F.dimension - 1;
    while (i >= 0 && alpha[i] == alpha_max) alpha[i--] = 0;
    if (i < 0) break;
    ++alpha[i];
  }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) {
    return l.second != r.second ? l.second < r.second : l.first < r.first;
  });
  return found;
}

QHSignature decompose(const PolyVectorField& F, const std::vector<int>& alpha, int k) {
  auto valid = validate_signature(F, alpha);
  if (!valid || *valid != k)
    throw input_error("decompose: signature does not match the field");
  QHSignature sig;
  sig.alpha = alpha;
  sig.k = k;
  for (size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) sig.index_set.push_back(static_cast<int>(i));
  sig.principal = PolyVectorField(F.dimension);
  sig.residual = PolyVectorField(F.dimension);
  for (int j = 0; j < F.dimension; ++j) {
    for (const auto& m : F.components[j]) {
      auto& dst = (weight(m, alpha) == k + alpha[j]) ? sig.principal : sig.residual;
      dst.add_term(j, m.exponents, m.coefficient);
    }
  }
  return sig;
}

C1Report check_c1_extension(const QHSignature& sig, const CompactScheme& scheme) {
  C1Report rep;
  for (int j = 0; j < sig.principal.dimension; ++j) {
    for (const auto* field : {&sig.principal, &sig.residual}) {
      for (const auto& m : field->components[j]) {
        long deficit = (sig.k + sig.alpha[j]) - weight(m, sig.alpha);
        if (deficit >= 1 && deficit <= 2L * scheme.c - 1) {
          rep.ok = false;
          rep.violations.push_back({j, m, static_cast<int>(deficit)});
        }
      }
    }
  }
  return rep;
}

std::vector<Monomial> poly_add(const std::vector<Monomial>& p,
                               const std::vector<Monomial>& q) {
  std::vector<Monomial> out = p;
  for (const auto& m : q) {
    bool merged = false;
    for (auto it = out.begin(); it != out.end(); ++it) {
      if (it->exponents == m.exponents) {
        it->coefficient += m.coefficient;
        if (it->coefficient == 0.0) out.erase(it);
        merged = true;
        break;
      }
    }
    if (!merged && m.coefficient != 0.0) out.push_back(m);
  }
  return out;
}

std::vector<Monomial> poly_mul(const std::vector<Monomial>& p,
                               const std::vector<Monomial>& q) {
  std::vector<Monomial> out;
  for (const auto& a : p) {
    for (const auto& b : q) {
      Monomial m;
      m.exponents.resize(a.exponents.size());
      for (size_t i = 0; i < m.exponents.size(); ++i)
        m.exponents[i] = a.exponents[i] + b.exponents[i];
      m.coefficient = a.coefficient * b.coefficient;
      out = poly_add(out, {m});
    }
  }
  return out;
}

std::vector<Monomial> poly_scale(const std::vector<Monomial>& p, double s) {
  std::vector<Monomial> out;
  if (s == 0.0) return out;
  out = p;
  for (auto& m : out) m.coefficient *= s;
  return out;
}

std::vector<Monomial> poly_derivative(const std::vector<Monomial>& p, int var) {
  std::vector<Monomial> out;
  for (const auto& m : p) {
    if (m.exponents[var] == 0) continue;
    Monomial d = m;
    d.coefficient *= d.exponents[var];
    d.exponents[var] -= 1;
    out = poly_add(out, {d});
  }
  return out;
}

double poly_eval(const std::vector<Monomial>& p, const Vec& y) {
  double v = 0.0;
  for (const auto& m : p) v += eval_monomial(m, y);
  return v;
}

PolyVectorField parse_field_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(std::string("model JSON parse error: ") + e.what());
  }
  try {
    int n = doc.at("dimension").get<int>();
    if (n < 1) throw input_error("model: dimension must be positive");
    PolyVectorField F(n);
    const auto& comps = doc.at("components");
    if (static_cast<int>(comps.size()) != n)
      throw input_error("model: component count does not match dimension");
    for (int j = 0; j < n; ++j) {
      for (const auto& term : comps.at(j)) {
        auto exps = term.at("exponents").get<std::vector<int>>();
        double coeff = term.at("coefficient").get<double>();
        F.add_term(j, std::move(exps), coeff);
      }
    }
    return F;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("model JSON structure error: ") + e.what());
  }
}

}  // namespace qhblow
