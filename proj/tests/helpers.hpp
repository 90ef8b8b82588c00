#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alex/laurent.hpp"
#include "alex/words.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(ALEX_FIXTURE_DIR) + "/" + name;
}

// Uniformly random freely reduced word over generators 0..alphabet-1.
inline alex::Word random_word(std::mt19937& rng, int alphabet, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, alphabet - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<alex::Letter> letters;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    letters.emplace_back(gen(rng), sgn(rng) == 0 ? 1 : -1);
  }
  return alex::word_reduce(letters, alphabet);
}

// Random Laurent polynomial with small integer coefficients; may be zero.
inline alex::LaurentPoly random_poly(std::mt19937& rng, int nvars,
                                     int max_terms, int max_abs_exp) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<int> ex(-max_abs_exp, max_abs_exp);
  std::uniform_int_distribution<int> cf(-5, 5);
  alex::LaurentPoly p(nvars);
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    alex::Exponent e(nvars);
    for (int v = 0; v < nvars; ++v) e[v] = ex(rng);
    int c = cf(rng);
    if (c != 0) p.add_term(e, c);
  }
  return p;
}

inline alex::LaurentPoly random_nonzero_poly(std::mt19937& rng, int nvars,
                                             int max_terms, int max_abs_exp) {
  for (;;) {
    alex::LaurentPoly p = random_poly(rng, nvars, max_terms, max_abs_exp);
    if (!p.is_zero()) return p;
  }
}

}  // namespace testutil
