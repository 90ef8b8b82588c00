#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "alex/unions.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace alex;

namespace {

ComponentMeta irreducible_piece(Delta0Class d0 = Delta0Class::FINITE_NONZERO) {
  ComponentMeta m;
  m.irreducible = true;
  m.delta0_class = d0;
  m.pencil_type = PencilType::NO;
  m.components = 1;
  return m;
}

ComponentMeta reducible_piece(Delta0Class d0, PencilType pencil,
                              Finiteness higher = Finiteness::UNKNOWN,
                              int components = 2) {
  ComponentMeta m;
  m.irreducible = false;
  m.delta0_class = d0;
  m.pencil_type = pencil;
  m.components = components;
  if (higher != Finiteness::UNKNOWN) m.higher[0] = higher;
  return m;
}

bool any_contains(const std::vector<std::string>& msgs,
                  const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
    return m.find(needle) != std::string::npos;
  });
}

const CheckItem& find_check(const CrosscheckReport& rep,
                            const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check item " + name);
}

WeightedPresentation corpus(const std::string& name) {
  auto e = corpus_lookup(name);
  REQUIRE(e.has_value());
  return e->pres;
}

}  // namespace

TEST_CASE("metadata validation") {
  CHECK(validate_meta(irreducible_piece()).empty());
  CHECK(validate_meta(
            reducible_piece(Delta0Class::INFINITE, PencilType::YES))
            .empty());

  ComponentMeta m = reducible_piece(Delta0Class::ZERO, PencilType::YES);
  CHECK(any_contains(validate_meta(m), "forces an infinite"));
  m = reducible_piece(Delta0Class::FINITE_NONZERO, PencilType::YES);
  CHECK(any_contains(validate_meta(m), "forces an infinite"));
  m = reducible_piece(Delta0Class::INFINITE, PencilType::NO);
  CHECK(any_contains(validate_meta(m), "forces pencil type"));

  m = irreducible_piece();
  m.components = 2;
  CHECK(any_contains(validate_meta(m), "exactly one component"));
  m = irreducible_piece();
  m.delta0_class = Delta0Class::INFINITE;
  CHECK(!validate_meta(m).empty());
  m = irreducible_piece();
  m.pencil_type = PencilType::YES;
  CHECK(any_contains(validate_meta(m), "never of pencil type"));
  m = irreducible_piece();
  m.higher[2] = Finiteness::INFINITE;
  CHECK(any_contains(validate_meta(m), "level 2"));

  m = reducible_piece(Delta0Class::UNKNOWN, PencilType::UNKNOWN);
  m.components = 0;
  CHECK(any_contains(validate_meta(m), "at least 1"));
  m = reducible_piece(Delta0Class::UNKNOWN, PencilType::UNKNOWN);
  m.degree = -1;
  CHECK(any_contains(validate_meta(m), "nonnegative"));
}

TEST_CASE("uniform higher finiteness") {
  CHECK(higher_uniform(irreducible_piece()) == Finiteness::FINITE);

  ComponentMeta m = reducible_piece(Delta0Class::UNKNOWN, PencilType::UNKNOWN);
  CHECK(higher_uniform(m) == Finiteness::UNKNOWN);
  m.higher[1] = Finiteness::FINITE;
  m.higher[2] = Finiteness::FINITE;
  CHECK(higher_uniform(m) == Finiteness::FINITE);
  m.higher[3] = Finiteness::INFINITE;
  CHECK(higher_uniform(m) == Finiteness::UNKNOWN);
  m.higher[0] = Finiteness::INFINITE;  // uniform declaration wins
  CHECK(higher_uniform(m) == Finiteness::INFINITE);
}

TEST_CASE("same-class unions vanish at every level") {
  for (bool irr : {true, false}) {
    ComponentMeta a = irr ? irreducible_piece()
                          : reducible_piece(Delta0Class::INFINITE,
                                            PencilType::YES);
    ComponentMeta b = irr ? irreducible_piece(Delta0Class::ZERO)
                          : reducible_piece(Delta0Class::UNKNOWN,
                                            PencilType::UNKNOWN);
    PredictionReport rep = predict_union(a, b);
    CHECK(rep.level0.value == PredictedValue::ZERO);
    CHECK(rep.level0.rule == "union-same-class");
    CHECK(rep.higher.value == PredictedValue::ZERO);
    CHECK(rep.finite_all);
    CHECK(rep.multi.kind == MultiClass::NONZERO_CONSTANT);
    CHECK(rep.multi.rule == "multi-same-class");
  }
}

TEST_CASE("mixed unions: full decision table") {
  const Delta0Class primes[] = {Delta0Class::ZERO, Delta0Class::FINITE_NONZERO,
                                Delta0Class::UNKNOWN};
  const Delta0Class dprimes[] = {Delta0Class::ZERO,
                                 Delta0Class::FINITE_NONZERO,
                                 Delta0Class::INFINITE, Delta0Class::UNKNOWN};
  const Finiteness highers[] = {Finiteness::FINITE, Finiteness::INFINITE,
                                Finiteness::UNKNOWN};
  for (Delta0Class pd : primes) {
    for (Delta0Class dd : dprimes) {
      for (Finiteness hf : highers) {
        ComponentMeta prime = irreducible_piece(pd);
        // Pencil type left undeclared so every delta0 class is consistent.
        ComponentMeta dprime = reducible_piece(dd, PencilType::UNKNOWN, hf);

        PredictionReport rep = predict_union(prime, dprime);

        PredictedValue want0 = PredictedValue::CONDITIONAL;
        if (dd == Delta0Class::ZERO || dd == Delta0Class::FINITE_NONZERO) {
          want0 = PredictedValue::ZERO;
        } else if (dd == Delta0Class::INFINITE) {
          want0 = PredictedValue::FINITE_NONZERO;
        }
        CHECK(rep.level0.value == want0);
        CHECK(rep.level0.rule == "union-mixed-level0");

        PredictedValue wantn = PredictedValue::CONDITIONAL;
        if (pd == Delta0Class::FINITE_NONZERO) {
          wantn = PredictedValue::ZERO;
        } else if (pd == Delta0Class::ZERO) {
          if (hf == Finiteness::FINITE) wantn = PredictedValue::ZERO;
          if (hf == Finiteness::INFINITE) wantn = PredictedValue::FINITE_NONZERO;
        }
        CHECK(rep.higher.value == wantn);

        // The union's invariants are finite at every level, never infinite.
        CHECK(rep.finite_all);
        CHECK(rep.multi.kind == MultiClass::CONDITIONAL);

        // Predictions cannot depend on which argument comes first.
        PredictionReport swapped = predict_union(dprime, prime);
        CHECK(swapped.level0.value == rep.level0.value);
        CHECK(swapped.level0.rule == rep.level0.rule);
        CHECK(swapped.higher.value == rep.higher.value);
        CHECK(swapped.multi.kind == rep.multi.kind);
      }
    }
  }
}

TEST_CASE("multivariate classification") {
  ComponentMeta prime = irreducible_piece();

  MultiClassification c = classify_multi(
      prime, reducible_piece(Delta0Class::ZERO, PencilType::NO));
  CHECK(c.kind == MultiClass::NONZERO_CONSTANT);
  CHECK(c.rule == "multi-mixed-nonpencil");

  c = classify_multi(prime, reducible_piece(Delta0Class::INFINITE,
                                            PencilType::YES,
                                            Finiteness::UNKNOWN, 4));
  CHECK(c.kind == MultiClass::T_MINUS_ONE_POWER);
  CHECK(c.max_power == 3);  // one less than the component count

  c = classify_multi(prime, reducible_piece(Delta0Class::INFINITE,
                                            PencilType::YES,
                                            Finiteness::UNKNOWN, 1));
  CHECK(c.max_power == 0);  // component count undeclared in effect

  c = classify_multi(prime, reducible_piece(Delta0Class::UNKNOWN,
                                            PencilType::UNKNOWN));
  CHECK(c.kind == MultiClass::CONDITIONAL);

  CHECK(classify_multi(prime, irreducible_piece(Delta0Class::ZERO)).kind ==
        MultiClass::NONZERO_CONSTANT);
}

TEST_CASE("inconsistent metadata is rejected") {
  ComponentMeta bad = reducible_piece(Delta0Class::ZERO, PencilType::YES);
  CHECK_THROWS_AS(predict_union(bad, irreducible_piece()),
                  std::invalid_argument);
  CHECK_THROWS_AS(classify_multi(irreducible_piece(), bad),
                  std::invalid_argument);
}

TEST_CASE("stable display names") {
  CHECK(to_string(Delta0Class::FINITE_NONZERO) == "finite-nonzero");
  CHECK(to_string(Delta0Class::INFINITE) == "infinite");
  CHECK(to_string(PencilType::YES) == "yes");
  CHECK(to_string(Finiteness::FINITE) == "finite");
  CHECK(to_string(PredictedValue::CONDITIONAL) == "conditional");
  CHECK(to_string(MultiClass::T_MINUS_ONE_POWER) == "(t-1)^k");
  CHECK(to_string(MultiClass::NONZERO_CONSTANT) == "nonzero-constant");
}

TEST_CASE("crosscheck: cubic with two parallel lines") {
  ComponentMeta cubic_meta = irreducible_piece(Delta0Class::FINITE_NONZERO);
  cubic_meta.degree = 3;
  ComponentMeta lines_meta = reducible_piece(
      Delta0Class::INFINITE, PencilType::YES, Finiteness::INFINITE, 2);
  lines_meta.degree = 2;

  CrosscheckReport rep = crosscheck(corpus("cuspidal-cubic"),
                                    corpus("parallel-lines:2"), cubic_meta,
                                    lines_meta);
  CHECK(rep.all_pass);
  CHECK(rep.checks.size() == 5);
  CHECK(rep.computed.d0 == Delta0{false, 1});
  CHECK(rational_primitive(rep.computed.multi) == parse_laurent("t1 - 1", 3));
  CHECK(find_check(rep, "multi-nonzero").pass);
  CHECK(find_check(rep, "delta0-finite").pass);
  CHECK(find_check(rep, "delta0-matches-prediction").pass);
  CHECK(find_check(rep, "multi-form").pass);
  CHECK(find_check(rep, "multi-divides-bound").pass);
}

TEST_CASE("crosscheck: two lines") {
  ComponentMeta line_meta = irreducible_piece(Delta0Class::ZERO);
  line_meta.degree = 1;
  CrosscheckReport rep =
      crosscheck(corpus("line"), corpus("line"), line_meta, line_meta);
  CHECK(rep.all_pass);
  CHECK(rep.computed.d0 == Delta0{false, 0});
  CHECK(rep.computed.multi.is_constant());
  CHECK(find_check(rep, "multi-divides-bound").detail.find("skipped") !=
        std::string::npos);
}

TEST_CASE("crosscheck flags declarations the computation contradicts") {
  ComponentMeta cubic_meta = irreducible_piece(Delta0Class::FINITE_NONZERO);
  // Consistent on its face, but wrong for two parallel lines: it declares a
  // finite invariant and no pencil structure.
  ComponentMeta wrong_lines = reducible_piece(
      Delta0Class::FINITE_NONZERO, PencilType::NO, Finiteness::FINITE, 2);

  CrosscheckReport rep = crosscheck(corpus("cuspidal-cubic"),
                                    corpus("parallel-lines:2"), cubic_meta,
                                    wrong_lines);
  CHECK(!rep.all_pass);
  CHECK(!find_check(rep, "delta0-matches-prediction").pass);  // 1, not 0
  CHECK(!find_check(rep, "multi-form").pass);  // t1 - 1 is not constant
  CHECK(find_check(rep, "multi-nonzero").pass);
  CHECK(find_check(rep, "delta0-finite").pass);
}

TEST_CASE("crosscheck input validation") {
  ComponentMeta meta = irreducible_piece();
  ComponentMeta meta3 = reducible_piece(Delta0Class::INFINITE,
                                        PencilType::YES, Finiteness::UNKNOWN,
                                        3);
  // Metadata component count disagrees with the presentation.
  CHECK_THROWS_AS(crosscheck(corpus("cuspidal-cubic"),
                             corpus("parallel-lines:2"), meta, meta3),
                  std::invalid_argument);

  WeightedPresentation broken = corpus("cuspidal-cubic");
  broken.gens[0].psi = 9;
  CHECK_THROWS_AS(
      crosscheck(broken, corpus("line"), meta, irreducible_piece()),
      std::invalid_argument);
}
