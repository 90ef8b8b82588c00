#include "alex/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace alex {

namespace {

void check_same_vars(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) {
    throw std::invalid_argument("variable count mismatch");
  }
}

}  // namespace

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw std::invalid_argument("need at least one variable");
}

LaurentPoly LaurentPoly::zero(int nvars) { return LaurentPoly(nvars); }

LaurentPoly LaurentPoly::constant(int nvars, const Rational& c) {
  LaurentPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Rational& c) {
  LaurentPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(int nvars, int var, int power) {
  if (var < 0 || var >= nvars) throw std::out_of_range("variable index");
  Exponent e(nvars, 0);
  e[var] = power;
  return monomial(e, 1);
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == Exponent(nvars_, 0);
}

bool LaurentPoly::integral() const {
  for (const auto& [e, c] : terms_) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

std::pair<Exponent, Rational> LaurentPoly::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero");
  auto it = std::prev(terms_.end());
  return {it->first, it->second};
}

Rational LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

LaurentPoly& LaurentPoly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw std::invalid_argument("exponent size mismatch");
  }
  if (c == 0) return *this;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
  check_same_vars(*this, rhs);
  LaurentPoly out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const {
  check_same_vars(*this, rhs);
  LaurentPoly out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out(nvars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
  check_same_vars(*this, rhs);
  LaurentPoly out(nvars_);
  Exponent sum(nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : rhs.terms_) {
      for (int i = 0; i < nvars_; ++i) sum[i] = e1[i] + e2[i];
      out.add_term(sum, c1 * c2);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
  LaurentPoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [e, k] : terms_) out.terms_[e] = k * c;
  return out;
}

LaurentPoly LaurentPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  LaurentPoly acc = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

Exponent LaurentPoly::min_exponents() const {
  if (terms_.empty()) throw std::logic_error("min_exponents of zero");
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

Exponent LaurentPoly::max_exponents() const {
  if (terms_.empty()) throw std::logic_error("max_exponents of zero");
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) m[i] = std::max(m[i], e[i]);
  }
  return m;
}

LaurentPoly LaurentPoly::shifted(const Exponent& shift) const {
  if (static_cast<int>(shift.size()) != nvars_) {
    throw std::invalid_argument("shift size mismatch");
  }
  LaurentPoly out(nvars_);
  Exponent e2(nvars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) e2[i] = e[i] + shift[i];
    out.terms_[e2] = c;
  }
  return out;
}

LaurentPoly canonicalize(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  Exponent m = p.min_exponents();
  for (int& v : m) v = -v;
  LaurentPoly q = p.shifted(m);
  if (q.leading_term().second < 0) q = -q;
  return q;
}

bool is_canonical(const LaurentPoly& p) { return p == canonicalize(p); }

LaurentPoly rational_primitive(const LaurentPoly& p) {
  if (p.is_zero()) return p;
  // content = gcd of numerators / lcm of denominators
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  content.canonicalize();
  return canonicalize(p.scaled(1 / content));
}

namespace {

// --- polynomial gcd over the integers (exponents all >= 0) ---

int degree_in(const LaurentPoly& p, int var) {
  int d = 0;
  for (const auto& [e, c] : p.terms()) d = std::max(d, e[var]);
  return d;
}

// Coefficient of var^k, as a polynomial with the var-exponent zeroed.
LaurentPoly coeff_of(const LaurentPoly& p, int var, int k) {
  LaurentPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == k) {
      Exponent e2 = e;
      e2[var] = 0;
      out.add_term(e2, c);
    }
  }
  return out;
}

bool is_one_like(const LaurentPoly& p) {
  return p.is_constant() && !p.is_zero() &&
         (p.leading_term().second == 1 || p.leading_term().second == -1);
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly exact_quotient(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = laurent_divide(a, b);
  if (!q) throw std::logic_error("internal gcd error: division not exact");
  return *q;
}

// Content of p viewed as a polynomial in `var` (gcd of its coefficients).
LaurentPoly content_in(const LaurentPoly& p, int var) {
  LaurentPoly c = LaurentPoly::zero(p.nvars());
  int d = degree_in(p, var);
  for (int k = 0; k <= d && !is_one_like(c); ++k) {
    LaurentPoly ck = coeff_of(p, var, k);
    if (!ck.is_zero()) c = poly_gcd(c, ck);
  }
  return c;
}

// lc(Q)^k * P mod Q with respect to `var` (pseudo-remainder).
LaurentPoly pseudo_rem(const LaurentPoly& P, const LaurentPoly& Q, int var) {
  int dq = degree_in(Q, var);
  LaurentPoly lq = coeff_of(Q, var, dq);
  LaurentPoly R = P;
  while (!R.is_zero()) {
    int dr = degree_in(R, var);
    if (dr < dq) break;
    LaurentPoly lr = coeff_of(R, var, dr);
    Exponent shift(static_cast<size_t>(R.nvars()), 0);
    shift[var] = dr - dq;
    R = R * lq - Q.shifted(shift) * lr;
  }
  return R;
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;

  // Main variable: highest index where either polynomial is nonconstant.
  int var = -1;
  for (int v = a.nvars() - 1; v >= 0; --v) {
    if (degree_in(a, v) > 0 || degree_in(b, v) > 0) {
      var = v;
      break;
    }
  }
  if (var < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.leading_term().second.get_num().get_mpz_t(),
            b.leading_term().second.get_num().get_mpz_t());
    return LaurentPoly::constant(a.nvars(), Rational(g));
  }

  LaurentPoly ca = content_in(a, var);
  LaurentPoly cb = content_in(b, var);
  LaurentPoly pa = exact_quotient(a, ca);
  LaurentPoly pb = exact_quotient(b, cb);
  LaurentPoly cg = poly_gcd(ca, cb);

  // Primitive pseudo-remainder sequence in `var`.
  LaurentPoly P = pa, Q = pb;
  if (degree_in(P, var) < degree_in(Q, var)) std::swap(P, Q);
  while (!Q.is_zero()) {
    LaurentPoly R = pseudo_rem(P, Q, var);
    P = Q;
    if (R.is_zero()) {
      Q = R;
    } else {
      Q = exact_quotient(R, content_in(R, var));
    }
  }
  LaurentPoly head = exact_quotient(P, content_in(P, var));
  return cg * head;
}

}  // namespace

LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_vars(a, b);
  if (!a.integral() || !b.integral()) {
    throw std::invalid_argument("laurent_gcd needs integer coefficients");
  }
  if (a.is_zero()) return canonicalize(b);
  if (b.is_zero()) return canonicalize(a);
  return canonicalize(poly_gcd(canonicalize(a), canonicalize(b)));
}

std::optional<LaurentPoly> laurent_divide(const LaurentPoly& a,
                                          const LaurentPoly& b) {
  check_same_vars(a, b);
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  if (a.is_zero()) return LaurentPoly::zero(a.nvars());

  // Shift both to have per-variable minimum exponent zero; the quotient of
  // the shifted polynomials is then an ordinary polynomial, and the net
  // monomial shift is reapplied at the end.
  Exponent ma = a.min_exponents(), mb = b.min_exponents();
  Exponent unshift_a = ma, unshift_b = mb, net(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) {
    unshift_a[i] = -ma[i];
    unshift_b[i] = -mb[i];
    net[i] = ma[i] - mb[i];
  }
  LaurentPoly r = a.shifted(unshift_a);
  const LaurentPoly d = b.shifted(unshift_b);
  const auto [eb, cb] = d.leading_term();

  LaurentPoly q(a.nvars());
  Exponent diff(a.nvars());
  while (!r.is_zero()) {
    auto [er, cr] = r.leading_term();
    for (int i = 0; i < a.nvars(); ++i) {
      diff[i] = er[i] - eb[i];
      if (diff[i] < 0) return std::nullopt;
    }
    LaurentPoly t = LaurentPoly::monomial(diff, cr / cb);
    q = q + t;
    r = r - t * d;
  }
  return q.shifted(net);
}

bool laurent_divides(const LaurentPoly& divisor, const LaurentPoly& dividend) {
  if (divisor.is_zero()) return dividend.is_zero();
  return laurent_divide(dividend, divisor).has_value();
}

long degree_spread(const LaurentPoly& p, const std::vector<long>& direction) {
  if (p.is_zero()) throw std::invalid_argument("degree_spread of zero");
  if (static_cast<int>(direction.size()) != p.nvars()) {
    throw std::invalid_argument("direction size mismatch");
  }
  bool first = true;
  long lo = 0, hi = 0;
  for (const auto& [e, c] : p.terms()) {
    long dot = 0;
    for (int i = 0; i < p.nvars(); ++i) dot += direction[i] * e[i];
    if (first) {
      lo = hi = dot;
      first = false;
    } else {
      lo = std::min(lo, dot);
      hi = std::max(hi, dot);
    }
  }
  return hi - lo;
}

LaurentPoly specialize_weights(const LaurentPoly& p,
                               const std::vector<long>& weights) {
  if (static_cast<int>(weights.size()) != p.nvars()) {
    throw std::invalid_argument("weights size mismatch");
  }
  LaurentPoly out(1);
  for (const auto& [e, c] : p.terms()) {
    long dot = 0;
    for (int i = 0; i < p.nvars(); ++i) dot += weights[i] * e[i];
    out.add_term({static_cast<int>(dot)}, c);
  }
  return out;
}

namespace {

std::string var_name(int nvars, int i) {
  return nvars == 1 ? "t" : "t" + std::to_string(i + 1);
}

std::string rational_str(const Rational& c) { return c.get_str(); }

}  // namespace

std::string print_laurent(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // Descending lexicographic order.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational ac = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_name(p.nvars(), i);
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += rational_str(ac);
    } else if (ac == 1) {
      out += mono;
    } else {
      out += rational_str(ac) + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyLexer {
 public:
  explicit PolyLexer(const std::string& s) : s_(s) {}
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char take() {
    skip_ws();
    if (pos_ >= s_.size()) throw std::invalid_argument("unexpected end of polynomial");
    return s_[pos_++];
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::string d;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      d += s_[pos_++];
    }
    if (d.empty()) throw std::invalid_argument("expected digits in polynomial");
    return d;
  }
  long integer() {
    bool neg = accept('-');
    if (!neg) accept('+');
    long v = std::stol(digits());
    return neg ? -v : v;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, int nvars) {
  PolyLexer lex(text);
  LaurentPoly out(nvars);
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    if (lex.accept('+')) {
      sign = 1;
    } else if (lex.accept('-')) {
      sign = -1;
    } else if (!first) {
      throw std::invalid_argument("expected + or - between terms");
    }
    first = false;

    Rational coeff(sign);
    Exponent expo(nvars, 0);
    bool any_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class num(lex.digits());
        Rational r(num);
        if (lex.accept('/')) {
          mpz_class den(lex.digits());
          if (den == 0) throw std::invalid_argument("zero denominator");
          r /= Rational(den);
        }
        coeff *= r;
        any_factor = true;
      } else if (c == 't') {
        lex.take();
        int var = 0;
        if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
          var = static_cast<int>(std::stol(lex.digits())) - 1;
        } else if (nvars != 1) {
          throw std::invalid_argument("bare 't' needs a variable index here");
        }
        if (var < 0 || var >= nvars) {
          throw std::invalid_argument("variable index out of range");
        }
        int power = 1;
        if (lex.accept('^')) power = static_cast<int>(lex.integer());
        expo[var] += power;
        any_factor = true;
      } else {
        throw std::invalid_argument(std::string("unexpected character '") + c +
                                    "' in polynomial");
      }
      expect_factor = lex.accept('*');
    }
    if (!any_factor) throw std::invalid_argument("empty term in polynomial");
    out.add_term(expo, coeff);
  }
  if (first) throw std::invalid_argument("empty polynomial text");
  return out;
}

}  // namespace alex
