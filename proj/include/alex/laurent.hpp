#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace alex {

using Rational = mpq_class;
using Exponent = std::vector<int>;  // one entry per variable

// Multivariate Laurent polynomial with exact rational coefficients.
// Terms are kept in lexicographic exponent order with no zero coefficients.
class LaurentPoly {
 public:
  explicit LaurentPoly(int nvars = 1);
  static LaurentPoly zero(int nvars);
  static LaurentPoly constant(int nvars, const Rational& c);
  static LaurentPoly monomial(const Exponent& e, const Rational& c);
  static LaurentPoly variable(int nvars, int var, int power = 1);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool integral() const;  // all coefficients integers
  int term_count() const { return static_cast<int>(terms_.size()); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  // Lexicographically largest term (throws on zero).
  std::pair<Exponent, Rational> leading_term() const;
  Rational coefficient(const Exponent& e) const;

  LaurentPoly operator+(const LaurentPoly&) const;
  LaurentPoly operator-(const LaurentPoly&) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly&) const;
  LaurentPoly scaled(const Rational& c) const;
  LaurentPoly pow(int k) const;  // k >= 0

  LaurentPoly& add_term(const Exponent& e, const Rational& c);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Per-variable minimum/maximum exponents over the support (zero poly: error).
  Exponent min_exponents() const;
  Exponent max_exponents() const;

  // Multiplies by the monomial t^shift.
  LaurentPoly shifted(const Exponent& shift) const;

 private:
  int nvars_;
  std::map<Exponent, Rational> terms_;
};

// Canonical associate: every variable's minimum exponent shifted to zero and
// the lexicographically leading coefficient positive. Does not touch integer
// content. Zero maps to zero.
LaurentPoly canonicalize(const LaurentPoly& p);
bool is_canonical(const LaurentPoly& p);

// Divides by the rational content so coefficients become coprime integers,
// then canonicalizes. Zero maps to zero.
LaurentPoly rational_primitive(const LaurentPoly& p);

// Gcd in the integral Laurent ring, including integer content; the result is
// canonical. Both inputs must have integer coefficients.
LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b);

// Exact division over the rationals: returns a/b when b divides a in the
// Laurent ring, nullopt otherwise. b must be nonzero.
std::optional<LaurentPoly> laurent_divide(const LaurentPoly& a,
                                          const LaurentPoly& b);
bool laurent_divides(const LaurentPoly& divisor, const LaurentPoly& dividend);

// max <e, dir> - min <e, dir> over the support; throws on zero input.
long degree_spread(const LaurentPoly& p, const std::vector<long>& direction);

// Substitutes t_i -> t^{weights[i]}, producing a one-variable poly.
LaurentPoly specialize_weights(const LaurentPoly& p,
                               const std::vector<long>& weights);

// Text form: terms in descending lex order, "t" for one variable and
// "t1".."ts" otherwise, e.g. "t1^2*t2^-1 - 3*t1 + 1".
std::string print_laurent(const LaurentPoly& p);
LaurentPoly parse_laurent(const std::string& text, int nvars);

}  // namespace alex
