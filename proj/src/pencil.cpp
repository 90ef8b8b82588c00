#include "alex/pencil.hpp"

#include <cctype>
#include <stdexcept>

namespace alex {

AffinePoly AffinePoly::constant(const mpq_class& c) {
  AffinePoly p;
  p.add_term(0, 0, c);
  return p;
}

bool AffinePoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
}

int AffinePoly::total_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, key.first + key.second);
  return d;
}

AffinePoly& AffinePoly::add_term(int ex, int ey, const mpq_class& c) {
  if (ex < 0 || ey < 0) {
    throw std::invalid_argument("affine polynomial: negative exponent");
  }
  if (c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace({ex, ey}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

AffinePoly AffinePoly::operator+(const AffinePoly& rhs) const {
  AffinePoly out = *this;
  for (const auto& [key, c] : rhs.terms_) out.add_term(key.first, key.second, c);
  return out;
}

AffinePoly AffinePoly::operator-(const AffinePoly& rhs) const {
  AffinePoly out = *this;
  for (const auto& [key, c] : rhs.terms_) {
    out.add_term(key.first, key.second, -c);
  }
  return out;
}

AffinePoly AffinePoly::scaled(const mpq_class& c) const {
  AffinePoly out;
  if (c == 0) return out;
  for (const auto& [key, coeff] : terms_) {
    out.terms_.emplace(key, coeff * c);
  }
  return out;
}

AffinePoly AffinePoly::nonconstant_part() const {
  AffinePoly out = *this;
  out.terms_.erase(Key{0, 0});
  return out;
}

mpq_class AffinePoly::constant_term() const {
  auto it = terms_.find(Key{0, 0});
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class AffinePoly::leading_coefficient() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->second;
}

namespace {

struct AffineLexer {
  const std::string& text;
  size_t pos = 0;

  explicit AffineLexer(const std::string& t) : text(t) {}

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek(char c) {
    skip_space();
    return pos < text.size() && text[pos] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  long integer() {
    skip_space();
    bool neg = eat('-');
    skip_space();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw std::invalid_argument("affine polynomial: expected integer near '" +
                                  text.substr(pos) + "'");
    }
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }
};

}  // namespace

AffinePoly parse_affine(const std::string& text) {
  AffinePoly out;
  AffineLexer lx(text);
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.eat('+')) {
      sign = 1;
    } else if (lx.eat('-')) {
      sign = -1;
    } else if (!first) {
      throw std::invalid_argument("affine polynomial: expected '+' or '-' near '" +
                                  text.substr(lx.pos) + "'");
    }
    first = false;

    mpq_class coeff(sign);
    int ex = 0;
    int ey = 0;
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      lx.skip_space();
      if (lx.pos < lx.text.size() &&
          std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
        long num = lx.integer();
        if (lx.eat('/')) {
          long den = lx.integer();
          if (den == 0) throw std::invalid_argument("affine polynomial: zero denominator");
          coeff *= mpq_class(num) / mpq_class(den);
        } else {
          coeff *= num;
        }
        saw_factor = true;
      } else if (lx.peek('x') || lx.peek('y')) {
        char v = lx.text[lx.pos++];
        long e = 1;
        if (lx.eat('^')) e = lx.integer();
        if (e < 0) throw std::invalid_argument("affine polynomial: negative exponent");
        if (v == 'x') ex += static_cast<int>(e);
        else ey += static_cast<int>(e);
        saw_factor = true;
      } else {
        throw std::invalid_argument("affine polynomial: expected term near '" +
                                    lx.text.substr(lx.pos) + "'");
      }
      expect_factor = lx.eat('*');
      if (!expect_factor) {
        // Juxtaposition ("x y", "2x") also continues the term.
        lx.skip_space();
        if (lx.pos < lx.text.size()) {
          char c = lx.text[lx.pos];
          expect_factor = c == 'x' || c == 'y' ||
                          std::isdigit(static_cast<unsigned char>(c));
        }
      }
    }
    if (!saw_factor) {
      throw std::invalid_argument("affine polynomial: empty term");
    }
    out.add_term(ex, ey, coeff);
  }
  if (first) throw std::invalid_argument("affine polynomial: empty input");
  return out;
}

std::string print_affine(const AffinePoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  // Descending lexicographic order, matching the leading-coefficient choice.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [key, coeff] = *it;
    mpq_class c = coeff;
    if (out.empty()) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    std::string vars;
    if (key.first > 0) {
      vars = "x";
      if (key.first > 1) vars += "^" + std::to_string(key.first);
    }
    if (key.second > 0) {
      if (!vars.empty()) vars += "*";
      vars += "y";
      if (key.second > 1) vars += "^" + std::to_string(key.second);
    }
    if (vars.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += vars;
    }
  }
  return out;
}

PencilVerdict pencil_check(const std::vector<AffinePoly>& components) {
  const int s = static_cast<int>(components.size());
  for (const AffinePoly& f : components) {
    if (f.is_constant()) {
      throw std::invalid_argument("pencil_check: constant component");
    }
  }
  // Associate components describe the same curve: reject as duplicates.
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      const mpq_class ci = components[i].leading_coefficient();
      const mpq_class cj = components[j].leading_coefficient();
      if (components[i].scaled(cj) == components[j].scaled(ci)) {
        throw std::invalid_argument(
            "pencil_check: duplicate components (" + std::to_string(i + 1) +
            " and " + std::to_string(j + 1) + " are proportional)");
      }
    }
  }

  PencilVerdict v;
  if (s < 2) {
    v.reason = "at least two components required";
    return v;
  }
  const int d = components[0].total_degree();
  for (int i = 1; i < s; ++i) {
    if (components[i].total_degree() != d) {
      v.reason = "total degrees differ (" + std::to_string(d) + " vs " +
                 std::to_string(components[i].total_degree()) + ")";
      return v;
    }
  }
  std::vector<AffinePoly> parts;
  parts.reserve(s);
  for (const AffinePoly& f : components) parts.push_back(f.nonconstant_part());
  const AffinePoly& g0 = parts[0];
  const mpq_class lc0 = g0.leading_coefficient();
  for (int i = 1; i < s; ++i) {
    if (g0.scaled(parts[i].leading_coefficient()) != parts[i].scaled(lc0)) {
      v.reason = "nonconstant parts are not proportional (component " +
                 std::to_string(i + 1) + ")";
      return v;
    }
  }

  v.pencil = true;
  v.witness = g0.scaled(mpq_class(1) / lc0);
  v.lambdas.reserve(s);
  for (int i = 0; i < s; ++i) {
    // f_i = c_i (f + lambda_i) with c_i the leading coefficient of g_i.
    const mpq_class ci = parts[i].leading_coefficient();
    v.lambdas.push_back(components[i].constant_term() / ci);
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      if (v.lambdas[i] == v.lambdas[j]) {
        throw std::invalid_argument("pencil_check: components " +
                                    std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) +
                                    " define the same curve");
      }
    }
  }
  return v;
}

}  // namespace alex
