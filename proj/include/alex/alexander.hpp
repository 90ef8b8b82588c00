#pragma once

#include <string>
#include <vector>

#include "alex/laurent.hpp"
#include "alex/presentations.hpp"
#include "alex/words.hpp"

namespace alex {

// Matrix of involuted Fox derivatives: rows indexed by generators, columns
// by relators; entry(i,j) = involute(d r_j / d a_i).
struct FoxMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<RingElement>> entries;  // entries[i][j]

  const RingElement& entry(int i, int j) const { return entries[i][j]; }
};

// Image of a FoxMatrix under the component abelianization: every word
// becomes the monomial t^{ab(word)} in s variables.
struct AbelianMatrix {
  int rows = 0;
  int cols = 0;
  int nvars = 1;
  std::vector<std::vector<LaurentPoly>> entries;

  const LaurentPoly& entry(int i, int j) const { return entries[i][j]; }
};

FoxMatrix fox_matrix(const WeightedPresentation& p);
AbelianMatrix b0_matrix(const WeightedPresentation& p);

// Monomial image of a group-ring element under the component abelianization.
LaurentPoly abelianize(const RingElement& e, const WeightedPresentation& p);

// Determinant of the square submatrix on `rows` x `cols` (ascending index
// lists of equal size), by memoized cofactor expansion.
LaurentPoly minor_det(const AbelianMatrix& a, const std::vector<int>& rows,
                      const std::vector<int>& cols);

// Canonical gcd of all k x k minors. The gcd of an empty minor set is 0 and
// the unique 0 x 0 minor is 1. Both kernels return identical canonical
// output; the parallel one distributes determinant work across OpenMP
// threads and folds in a fixed order.
LaurentPoly minor_gcd(const AbelianMatrix& a, int k);
LaurentPoly minor_gcd_parallel(const AbelianMatrix& a, int k);

// Canonical gcd of the (m-1)x(m-1) minors of B(0); zero when no minors
// exist (l < m-1) or all of them vanish.
LaurentPoly multi_alexander(const WeightedPresentation& p);

// The same minor gcd computed after specializing t_c -> t^{w_c} with the
// per-component weights, reported rational-primitive (the canonical
// generator over Q[t^{±1}]). Throws std::invalid_argument when every
// component weight is zero.
LaurentPoly uni_alexander(const WeightedPresentation& p);

struct Delta0 {
  bool infinite = false;
  long value = 0;

  friend bool operator==(const Delta0&, const Delta0&) = default;
};

// Degree spread of multi_alexander in direction (1,...,1); infinite exactly
// when multi_alexander vanishes.
Delta0 delta0(const WeightedPresentation& p);

struct InvariantRecord {
  int m = 0;
  int l = 0;
  int s = 0;
  LaurentPoly multi;  // canonical, integer coefficients
  LaurentPoly uni;    // canonical, rational-primitive
  Delta0 d0;
};

InvariantRecord invariant_record(const WeightedPresentation& p);

}  // namespace alex
