#include "alex/unions.hpp"

#include <stdexcept>

namespace alex {

std::string to_string(Delta0Class c) {
  switch (c) {
    case Delta0Class::ZERO: return "zero";
    case Delta0Class::FINITE_NONZERO: return "finite-nonzero";
    case Delta0Class::INFINITE: return "infinite";
    case Delta0Class::UNKNOWN: return "unknown";
  }
  return "unknown";
}

std::string to_string(PencilType p) {
  switch (p) {
    case PencilType::YES: return "yes";
    case PencilType::NO: return "no";
    case PencilType::UNKNOWN: return "unknown";
  }
  return "unknown";
}

std::string to_string(Finiteness f) {
  switch (f) {
    case Finiteness::FINITE: return "finite";
    case Finiteness::INFINITE: return "infinite";
    case Finiteness::UNKNOWN: return "unknown";
  }
  return "unknown";
}

std::string to_string(PredictedValue v) {
  switch (v) {
    case PredictedValue::ZERO: return "zero";
    case PredictedValue::FINITE_NONZERO: return "finite-nonzero";
    case PredictedValue::FINITE: return "finite";
    case PredictedValue::CONDITIONAL: return "conditional";
  }
  return "conditional";
}

std::string to_string(MultiClass m) {
  switch (m) {
    case MultiClass::NONZERO_CONSTANT: return "nonzero-constant";
    case MultiClass::T_MINUS_ONE_POWER: return "(t-1)^k";
    case MultiClass::CONDITIONAL: return "conditional";
  }
  return "conditional";
}

std::vector<std::string> validate_meta(const ComponentMeta& m) {
  std::vector<std::string> bad;
  if (m.components < 1) bad.push_back("component count must be at least 1");
  if (m.degree < 0) bad.push_back("degree must be nonnegative");
  if (m.pencil_type == PencilType::YES &&
      (m.delta0_class == Delta0Class::ZERO ||
       m.delta0_class == Delta0Class::FINITE_NONZERO)) {
    bad.push_back("pencil type forces an infinite degree-0 invariant");
  }
  if (m.pencil_type == PencilType::NO &&
      m.delta0_class == Delta0Class::INFINITE) {
    bad.push_back("infinite degree-0 invariant forces pencil type");
  }
  if (m.irreducible) {
    if (m.components != 1) {
      bad.push_back("an irreducible piece has exactly one component");
    }
    if (m.delta0_class == Delta0Class::INFINITE) {
      bad.push_back("an irreducible piece has a finite degree-0 invariant");
    }
    if (m.pencil_type == PencilType::YES) {
      bad.push_back("an irreducible piece is never of pencil type");
    }
    for (const auto& [n, f] : m.higher) {
      if (f == Finiteness::INFINITE) {
        bad.push_back("an irreducible piece has finite invariants at level " +
                      std::to_string(n));
      }
    }
  }
  return bad;
}

Finiteness higher_uniform(const ComponentMeta& m) {
  if (m.irreducible) return Finiteness::FINITE;
  if (auto it = m.higher.find(0); it != m.higher.end()) return it->second;
  if (m.higher.empty()) return Finiteness::UNKNOWN;
  Finiteness f = m.higher.begin()->second;
  for (const auto& [n, g] : m.higher) {
    if (g != f) return Finiteness::UNKNOWN;
  }
  return f;
}

namespace {

void require_valid(const ComponentMeta& m, const char* side) {
  auto bad = validate_meta(m);
  if (!bad.empty()) {
    std::string msg = std::string("inconsistent ") + side + " metadata:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw std::invalid_argument(msg);
  }
}

}  // namespace

MultiClassification classify_multi(const ComponentMeta& left,
                                   const ComponentMeta& right) {
  require_valid(left, "left");
  require_valid(right, "right");
  MultiClassification out;
  if (left.irreducible == right.irreducible) {
    out.kind = MultiClass::NONZERO_CONSTANT;
    out.rule = "multi-same-class";
    out.detail =
        "both pieces irreducible or both reducible: the multivariate "
        "polynomial of the union is a nonzero constant";
    return out;
  }
  const ComponentMeta& dprime = left.irreducible ? right : left;
  switch (dprime.pencil_type) {
    case PencilType::NO:
      out.kind = MultiClass::NONZERO_CONSTANT;
      out.rule = "multi-mixed-nonpencil";
      out.detail =
          "reducible piece not of pencil type: the polynomial is a nonzero "
          "constant";
      break;
    case PencilType::YES:
      out.kind = MultiClass::T_MINUS_ONE_POWER;
      out.max_power = dprime.components >= 2
                          ? static_cast<int>(dprime.components - 1)
                          : 0;
      out.rule = "multi-mixed-pencil";
      out.detail =
          "reducible piece of pencil type: the polynomial is (t-1)^k in the "
          "meridian variable of the irreducible piece, with 1 <= k <= " +
          (out.max_power > 0 ? std::to_string(out.max_power)
                             : std::string("m''-1"));
      break;
    case PencilType::UNKNOWN:
      out.kind = MultiClass::CONDITIONAL;
      out.rule = "multi-conditional";
      out.detail =
          "condition: is the reducible piece of pencil type? (constant if "
          "not, (t-1)^k if so)";
      break;
  }
  return out;
}

PredictionReport predict_union(const ComponentMeta& left,
                               const ComponentMeta& right) {
  require_valid(left, "left");
  require_valid(right, "right");
  PredictionReport rep;
  rep.finite_all = true;
  rep.finite_rule = "union-always-finite";
  rep.multi = classify_multi(left, right);

  if (left.irreducible == right.irreducible) {
    rep.level0 = {PredictedValue::ZERO, "union-same-class",
                  "both pieces irreducible or both reducible: every "
                  "invariant degree vanishes"};
    rep.higher = rep.level0;
    return rep;
  }

  const ComponentMeta& prime = left.irreducible ? left : right;
  const ComponentMeta& dprime = left.irreducible ? right : left;

  // Level 0: the union degree vanishes exactly when the reducible piece has
  // a finite degree-0 invariant (and is nonzero, still finite, otherwise).
  switch (dprime.delta0_class) {
    case Delta0Class::ZERO:
    case Delta0Class::FINITE_NONZERO:
      rep.level0 = {PredictedValue::ZERO, "union-mixed-level0",
                    "reducible piece has a finite degree-0 invariant, so the "
                    "union degree-0 invariant vanishes"};
      break;
    case Delta0Class::INFINITE:
      rep.level0 = {PredictedValue::FINITE_NONZERO, "union-mixed-level0",
                    "reducible piece has an infinite degree-0 invariant, so "
                    "the union degree-0 invariant is nonzero (yet finite)"};
      break;
    case Delta0Class::UNKNOWN:
      rep.level0 = {PredictedValue::CONDITIONAL, "union-mixed-level0",
                    "condition: is the degree-0 invariant of the reducible "
                    "piece finite? (vanishes iff finite)"};
      break;
  }

  // Levels n >= 1 split on the degree-0 class of the irreducible piece.
  switch (prime.delta0_class) {
    case Delta0Class::FINITE_NONZERO:
      rep.higher = {PredictedValue::ZERO, "union-mixed-higher-nonzero",
                    "irreducible piece has a nonzero degree-0 invariant: all "
                    "higher invariant degrees of the union vanish"};
      break;
    case Delta0Class::ZERO:
      switch (higher_uniform(dprime)) {
        case Finiteness::FINITE:
          rep.higher = {PredictedValue::ZERO, "union-mixed-higher-zero",
                        "irreducible piece has vanishing degree-0 invariant "
                        "and the reducible piece has finite higher "
                        "invariants: the union degrees vanish"};
          break;
        case Finiteness::INFINITE:
          rep.higher = {PredictedValue::FINITE_NONZERO,
                        "union-mixed-higher-zero",
                        "irreducible piece has vanishing degree-0 invariant "
                        "and the reducible piece has infinite higher "
                        "invariants: the union degrees are nonzero (yet "
                        "finite)"};
          break;
        case Finiteness::UNKNOWN:
          rep.higher = {PredictedValue::CONDITIONAL,
                        "union-mixed-higher-zero",
                        "condition: are the degree-n invariants (n >= 1) of "
                        "the reducible piece finite? (the union degrees "
                        "vanish iff they are)"};
          break;
      }
      break;
    case Delta0Class::INFINITE:   // excluded by validation
    case Delta0Class::UNKNOWN:
      rep.higher = {PredictedValue::CONDITIONAL, "union-mixed-higher",
                    "condition: degree-0 class of the irreducible piece "
                    "(nonzero gives unconditional vanishing; zero defers to "
                    "the reducible piece's higher finiteness)"};
      break;
  }
  return rep;
}

namespace {

bool is_nonzero_constant(const LaurentPoly& p) {
  return !p.is_zero() && p.is_constant();
}

// True when p involves no variable other than `var`.
bool single_variable(const LaurentPoly& p, int var) {
  if (p.is_zero()) return true;
  const Exponent lo = p.min_exponents();
  const Exponent hi = p.max_exponents();
  for (int i = 0; i < p.nvars(); ++i) {
    if (i == var) continue;
    if (lo[i] != 0 || hi[i] != 0) return false;
  }
  return true;
}

LaurentPoly t_minus_one_power(int nvars, int var, int k) {
  LaurentPoly base =
      LaurentPoly::variable(nvars, var) - LaurentPoly::constant(nvars, 1);
  return canonicalize(base.pow(k));
}

}  // namespace

CrosscheckReport crosscheck(const WeightedPresentation& left,
                            const WeightedPresentation& right,
                            const ComponentMeta& left_meta,
                            const ComponentMeta& right_meta) {
  for (const WeightedPresentation* side : {&left, &right}) {
    auto bad = validate(*side);
    if (!bad.empty()) {
      std::string msg = "invalid presentation:";
      for (const auto& b : bad) msg += " " + b + ";";
      throw std::invalid_argument(msg);
    }
  }
  if (left.components != left_meta.components ||
      right.components != right_meta.components) {
    throw std::invalid_argument(
        "metadata component counts do not match the presentations");
  }

  CrosscheckReport rep;
  rep.predicted = predict_union(left_meta, right_meta);
  WeightedPresentation prod = product_presentation(left, right);
  rep.computed = invariant_record(prod);

  auto add = [&rep](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  add("multi-nonzero", !rep.computed.multi.is_zero(),
      "the union polynomial must never vanish");
  add("delta0-finite", !rep.computed.d0.infinite,
      "the union degree-0 invariant must be finite");

  switch (rep.predicted.level0.value) {
    case PredictedValue::ZERO:
      add("delta0-matches-prediction",
          !rep.computed.d0.infinite && rep.computed.d0.value == 0,
          "predicted zero; computed " +
              (rep.computed.d0.infinite
                   ? std::string("infinite")
                   : std::to_string(rep.computed.d0.value)));
      break;
    case PredictedValue::FINITE_NONZERO:
      add("delta0-matches-prediction",
          !rep.computed.d0.infinite && rep.computed.d0.value >= 1,
          "predicted finite nonzero; computed " +
              (rep.computed.d0.infinite
                   ? std::string("infinite")
                   : std::to_string(rep.computed.d0.value)));
      break;
    case PredictedValue::FINITE:
      add("delta0-matches-prediction", !rep.computed.d0.infinite,
          "predicted finite");
      break;
    case PredictedValue::CONDITIONAL:
      add("delta0-matches-prediction", true,
          "prediction conditional on undeclared metadata; computed value " +
              (rep.computed.d0.infinite
                   ? std::string("infinite")
                   : std::to_string(rep.computed.d0.value)) +
              " recorded without comparison");
      break;
  }

  // Variable index of the irreducible ("primed") piece inside the product,
  // whose components are ordered left block then right block.
  const bool mixcase = left_meta.irreducible != right_meta.irreducible;
  const int prime_var =
      !mixcase || left_meta.irreducible ? 0 : left.components;
  const ComponentMeta& dprime_meta =
      left_meta.irreducible ? right_meta : left_meta;

  switch (rep.predicted.multi.kind) {
    case MultiClass::NONZERO_CONSTANT:
      add("multi-form", is_nonzero_constant(rep.computed.multi),
          "predicted nonzero constant; computed " +
              print_laurent(rep.computed.multi));
      break;
    case MultiClass::T_MINUS_ONE_POWER: {
      LaurentPoly prim = rational_primitive(rep.computed.multi);
      bool ok = single_variable(prim, prime_var);
      bool matched = false;
      const int bound = rep.predicted.multi.max_power;
      for (int k = 1; ok && k <= bound && !matched; ++k) {
        matched = prim == t_minus_one_power(prim.nvars(), prime_var, k);
      }
      add("multi-form", ok && matched,
          "predicted (t-1)^k, 1 <= k <= " + std::to_string(bound) +
              ", in the irreducible piece's variable; computed " +
              print_laurent(prim));
      break;
    }
    case MultiClass::CONDITIONAL:
      add("multi-form", true,
          "classification conditional on undeclared metadata; computed " +
              print_laurent(rep.computed.multi) + " recorded");
      break;
  }

  if (mixcase) {
    const int e = static_cast<int>(dprime_meta.components - 1);
    LaurentPoly prim = rational_primitive(rep.computed.multi);
    LaurentPoly bound =
        e == 0 ? LaurentPoly::constant(prim.nvars(), 1)
               : t_minus_one_power(prim.nvars(), prime_var, e);
    add("multi-divides-bound",
        !prim.is_zero() && laurent_divides(prim, bound),
        "primitive union polynomial must divide (t-1)^" + std::to_string(e) +
            " in the irreducible piece's variable");
  } else {
    add("multi-divides-bound", true,
        "bound applies to mixed unions only; skipped");
  }

  rep.all_pass = true;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

}  // namespace alex
