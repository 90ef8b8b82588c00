#pragma once

#include <map>
#include <string>
#include <vector>

#include "alex/alexander.hpp"
#include "alex/presentations.hpp"

namespace alex {

enum class Delta0Class { ZERO, FINITE_NONZERO, INFINITE, UNKNOWN };
enum class PencilType { YES, NO, UNKNOWN };
enum class Finiteness { FINITE, INFINITE, UNKNOWN };

// Declared facts about one transversal piece of a union. `higher` records
// finiteness of the degree-n invariant for n >= 1; the key 0 declares a
// uniform flag for every n >= 1.
struct ComponentMeta {
  bool irreducible = false;
  Delta0Class delta0_class = Delta0Class::UNKNOWN;
  PencilType pencil_type = PencilType::UNKNOWN;
  long degree = 0;     // total degree m (0 = unknown)
  int components = 1;  // s
  std::map<int, Finiteness> higher;
};

// Consistency requirements; returns human-readable violations (empty = ok):
//  - pencil type YES/NO must match delta0 class INFINITE/finite when both
//    are declared;
//  - an irreducible piece never has infinite invariants at any level.
std::vector<std::string> validate_meta(const ComponentMeta& m);

// Collapsed finiteness of the degree-n invariants over all n >= 1.
Finiteness higher_uniform(const ComponentMeta& m);

enum class PredictedValue { ZERO, FINITE_NONZERO, FINITE, CONDITIONAL };

struct LevelPrediction {
  PredictedValue value = PredictedValue::CONDITIONAL;
  std::string rule;    // stable identifier of the decision rule applied
  std::string detail;  // statement of the rule / missing condition
};

enum class MultiClass { NONZERO_CONSTANT, T_MINUS_ONE_POWER, CONDITIONAL };

struct MultiClassification {
  MultiClass kind = MultiClass::CONDITIONAL;
  int max_power = 0;  // k bound for the (t-1)^k form, when applicable
  std::string rule;
  std::string detail;
};

struct PredictionReport {
  LevelPrediction level0;
  LevelPrediction higher;  // any n >= 1
  bool finite_all = true;  // invariants finite at every level
  std::string finite_rule;
  MultiClassification multi;
};

// Predicts the invariant degrees of a transversal union from declared
// component metadata. Sides are normalized so the irreducible piece (if
// exactly one) plays the primed role; unknown inputs yield CONDITIONAL
// values. Never predicts INFINITE. Throws std::invalid_argument on
// inconsistent metadata.
PredictionReport predict_union(const ComponentMeta& left,
                               const ComponentMeta& right);

// Classifies the multivariate polynomial of the union: always nonzero;
// constant in the same-class cases; in the mixed case constant exactly when
// the reducible piece is not of pencil type, else of the form (t-1)^k with
// 1 <= k <= m''-1 in the meridian variable of the irreducible piece.
MultiClassification classify_multi(const ComponentMeta& left,
                                   const ComponentMeta& right);

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CrosscheckReport {
  PredictionReport predicted;
  InvariantRecord computed;  // of the product presentation
  std::vector<CheckItem> checks;
  bool all_pass = false;
};

// Builds the product presentation, computes its level-0 invariants, and
// checks them against the predictions plus the divisibility bound
// multi | (t-1)^(m''-1). Throws on invalid presentations or metadata.
CrosscheckReport crosscheck(const WeightedPresentation& left,
                            const WeightedPresentation& right,
                            const ComponentMeta& left_meta,
                            const ComponentMeta& right_meta);

std::string to_string(Delta0Class c);
std::string to_string(PencilType p);
std::string to_string(Finiteness f);
std::string to_string(PredictedValue v);
std::string to_string(MultiClass m);

}  // namespace alex
