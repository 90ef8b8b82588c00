#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace alex {

// Bivariate polynomial in x, y with exact rational coefficients, kept as a
// sparse exponent map with no zero entries.
class AffinePoly {
 public:
  using Key = std::pair<int, int>;  // (x exponent, y exponent)

  AffinePoly() = default;
  static AffinePoly constant(const mpq_class& c);

  const std::map<Key, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;  // -1 for the zero polynomial

  AffinePoly& add_term(int ex, int ey, const mpq_class& c);
  AffinePoly operator+(const AffinePoly&) const;
  AffinePoly operator-(const AffinePoly&) const;
  AffinePoly scaled(const mpq_class& c) const;

  AffinePoly nonconstant_part() const;
  mpq_class constant_term() const;
  // Coefficient of the lexicographically-leading monomial (x before y).
  mpq_class leading_coefficient() const;

  friend bool operator==(const AffinePoly&, const AffinePoly&) = default;

 private:
  std::map<Key, mpq_class> terms_;
};

// Parses e.g. "y^2 - x^3 - 1" or "2*x*y + 1/2". Throws
// std::invalid_argument on malformed input or negative exponents.
AffinePoly parse_affine(const std::string& text);
std::string print_affine(const AffinePoly& p);

struct PencilVerdict {
  bool pencil = false;
  std::string reason;               // set when not a pencil
  AffinePoly witness;               // normalized common nonconstant part f
  std::vector<mpq_class> lambdas;   // one per component: f_i = c_i (f + l_i)
};

// Decides whether the components all have the form c_i (f + lambda_i) for a
// single nonconstant f: requires s >= 2, equal total degrees, and pairwise
// proportional nonconstant parts (checked by cross-multiplication with the
// leading coefficients; no division). Throws std::invalid_argument on
// constant input or duplicate (associate) components.
PencilVerdict pencil_check(const std::vector<AffinePoly>& components);

}  // namespace alex
