#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alex/words.hpp"

namespace alex {

// Generator of a weighted presentation. `ab` is the image in Z^s under
// abelianization to the free abelian group on the curve components; for a
// meridian generator of component c it is the c-th basis vector, and derived
// generators may carry arbitrary integer vectors (the zero vector marks an
// auxiliary generator).
struct PresGenerator {
  std::string name;
  long psi = 0;              // total-winding weight
  std::vector<long> ab;      // length = component count

  // Component index (1-based) when `ab` is a standard basis vector,
  // 0 when `ab` is zero, -1 otherwise.
  int color() const;
};

// Bookkeeping for presentations built as products: the generator/relator
// split between the two factors (commutator relators come last).
struct ProductInfo {
  int left_gens = 0;
  int right_gens = 0;
  int left_relators = 0;
  int right_relators = 0;
  int left_components = 0;
};

struct WeightedPresentation {
  std::vector<PresGenerator> gens;
  std::vector<Word> relators;
  int components = 0;                    // s
  std::vector<long> component_weights;   // length s
  std::vector<long> degrees;             // optional, length s (0 = unknown)
  bool meridian = true;  // all generators are meridians (basis ab vectors)
  std::optional<ProductInfo> product;

  int gen_count() const { return static_cast<int>(gens.size()); }
  int relator_count() const { return static_cast<int>(relators.size()); }
  Alphabet alphabet() const;

  std::vector<long> ab_image(const Word& w) const;  // image in Z^s
  long psi_image(const Word& w) const;
};

// Structural checks; returns human-readable violations (empty = valid):
//  - array sizes consistent, ab vectors of length s;
//  - every relator abelianizes to zero;
//  - psi weights match <ab, component_weights>;
//  - meridian presentations use basis/zero ab vectors only.
std::vector<std::string> validate(const WeightedPresentation& p);

// Text format (line oriented, '#' comments):
//   gens a1 a2 g
//   weights 1 1 0
//   colors 1 2 0
//   degrees 3 3          (optional)
//   cweights 1 1         (optional, per-component psi weights)
//   flags derived        (optional)
//   rel g a2 G A2
// Errors carry 1-based line numbers.
WeightedPresentation parse_presentation(const std::string& text);
std::string print_presentation(const WeightedPresentation& p);

// Presentation of the product group: generators of `left` then `right`
// (right-hand names that collide get an "_r" suffix), relators of `left`,
// then of `right`, then commutators [a_i, b_j] = a_i b_j a_i^-1 b_j^-1 in
// i-major order. Component indices of `right` are shifted by
// left.components.
WeightedPresentation product_presentation(const WeightedPresentation& left,
                                          const WeightedPresentation& right);

enum class ChangeScheme { MIXED, SPLIT };

// Result of a generator change on a product presentation; `substitution`
// expresses each new generator as a word in the old ones.
struct ChangedPresentation {
  WeightedPresentation pres;
  std::vector<Word> substitution;
};

// Rewrites a product presentation in the generators
//   MIXED: x1 = a1, xi = ai a1^-1 (i >= 2), yj = bj a1^-1 (all j)
//   SPLIT: x1 = a1, xi = ai a1^-1 (i >= 2), y1 = b1, yj = bj b1^-1 (j >= 2)
// Relator order: transformed commutators, then left relators, then right
// relators. Throws std::invalid_argument on non-product presentations.
ChangedPresentation change_generators(const WeightedPresentation& p,
                                      ChangeScheme scheme);

// Built-in example presentations:
//   cuspidal-cubic, conic, line, parallel-lines:k, ffm1, trefoil-x-line
struct CorpusEntry {
  std::string name;
  std::string summary;
  WeightedPresentation pres;
  // Known invariant classes for union predictions (see unions.hpp for the
  // encoding); UNKNOWN entries are left to flags.
  bool irreducible = false;
  int delta0_class = 0;      // 0 unknown, 1 zero, 2 finite nonzero, 3 infinite
  int higher_class = 0;      // 0 unknown, 1 finite at every level, 2 infinite
  int pencil_class = 0;      // 0 unknown, 1 yes, 2 no
};

std::vector<std::string> corpus_names();
std::optional<CorpusEntry> corpus_lookup(const std::string& name);

}  // namespace alex
