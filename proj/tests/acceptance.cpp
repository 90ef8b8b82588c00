// Acceptance gate: runs every contract criterion, printing one PASS/FAIL
// line per criterion with its wall time. Exits nonzero when any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alex/alexander.hpp"
#include "alex/laurent.hpp"
#include "alex/pencil.hpp"
#include "alex/presentations.hpp"
#include "alex/skew.hpp"
#include "alex/unions.hpp"
#include "alex/words.hpp"
#include "helpers.hpp"

using namespace alex;

namespace {

int g_failures = 0;

// Runs one criterion body; `body` returns pass/fail and may append detail to
// `note`. A positive `limit_seconds` is part of the contract.
void criterion(int num, const std::string& label, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string note;
  bool pass = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    pass = body(note);
  } catch (const std::exception& e) {
    pass = false;
    note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  bool in_time = limit_seconds <= 0 || secs <= limit_seconds;
  bool ok = pass && in_time;
  if (!ok) ++g_failures;
  std::printf("%s criterion %d: %s [%.2fs", ok ? "PASS" : "FAIL", num,
              label.c_str(), secs);
  if (limit_seconds > 0) {
    std::printf(" / limit %.0fs%s", limit_seconds,
                in_time ? "" : " EXCEEDED");
  }
  std::printf("]%s%s\n", note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
}

WeightedPresentation corpus(const std::string& name) {
  auto e = corpus_lookup(name);
  if (!e) throw std::runtime_error("missing corpus entry " + name);
  return e->pres;
}

ComponentMeta cubic_meta() {
  ComponentMeta m;
  m.irreducible = true;
  m.delta0_class = Delta0Class::FINITE_NONZERO;
  m.pencil_type = PencilType::NO;
  m.degree = 3;
  m.components = 1;
  return m;
}

ComponentMeta line_meta() {
  ComponentMeta m;
  m.irreducible = true;
  m.delta0_class = Delta0Class::ZERO;
  m.pencil_type = PencilType::NO;
  m.degree = 1;
  m.components = 1;
  return m;
}

ComponentMeta parallel_lines_meta(int k) {
  ComponentMeta m;
  m.irreducible = false;
  m.delta0_class = Delta0Class::INFINITE;
  m.pencil_type = PencilType::YES;
  m.degree = k;
  m.components = k;
  m.higher[0] = Finiteness::INFINITE;
  return m;
}

ComponentMeta ffm1_meta() {
  ComponentMeta m;
  m.irreducible = false;
  m.delta0_class = Delta0Class::INFINITE;
  m.pencil_type = PencilType::YES;
  m.degree = 6;
  m.components = 2;
  m.higher[0] = Finiteness::FINITE;
  return m;
}

bool check(bool cond, const std::string& what, std::string& note) {
  if (!cond && note.empty()) note = "failed: " + what;
  return cond;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& note) {
  InvariantRecord r = invariant_record(corpus("cuspidal-cubic"));
  bool ok = true;
  ok &= check(r.multi == parse_laurent("t^2 - t + 1", 1),
              "polynomial is t^2 - t + 1", note);
  ok &= check(r.d0 == Delta0{false, 2}, "degree-0 invariant equals 2", note);
  if (ok) note = "degree-0 invariant = 2, polynomial t^2 - t + 1";
  return ok;
}

bool criterion2(std::string& note) {
  bool ok = true;
  for (int k = 2; k <= 5; ++k) {
    InvariantRecord r =
        invariant_record(corpus("parallel-lines:" + std::to_string(k)));
    ok &= check(r.multi.is_zero(),
                "vanishing polynomial for " + std::to_string(k) + " lines",
                note);
    ok &= check(r.d0.infinite,
                "infinite degree-0 invariant for " + std::to_string(k) +
                    " lines",
                note);
    std::vector<AffinePoly> lines;
    for (int i = 0; i < k; ++i) {
      lines.push_back(parse_affine("x") - AffinePoly::constant(i));
    }
    ok &= check(pencil_check(lines).pencil,
                "pencil recognition for " + std::to_string(k) + " lines",
                note);
  }
  if (ok) note = "free groups on 2..5 meridians all infinite and of pencil type";
  return ok;
}

bool criterion3(std::string& note) {
  bool ok = true;
  std::string times;
  for (int k = 2; k <= 4; ++k) {
    auto t0 = std::chrono::steady_clock::now();
    CrosscheckReport rep =
        crosscheck(corpus("cuspidal-cubic"),
                   corpus("parallel-lines:" + std::to_string(k)), cubic_meta(),
                   parallel_lines_meta(k));
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const std::string tag = "k=" + std::to_string(k);
    ok &= check(rep.all_pass, "crosscheck all-pass for " + tag, note);
    ok &= check(rep.computed.d0 == Delta0{false, k - 1},
                "degree-0 invariant k-1 for " + tag, note);
    LaurentPoly tm1 = LaurentPoly::variable(1 + k, 0) -
                      LaurentPoly::constant(1 + k, 1);
    ok &= check(rational_primitive(rep.computed.multi) ==
                    canonicalize(tm1.pow(k - 1)),
                "polynomial associate to (t-1)^(k-1) for " + tag, note);
    ok &= check(secs <= 10.0, "time budget for " + tag, note);
    if (!times.empty()) times += ", ";
    times += tag + " " + std::to_string(secs).substr(0, 4) + "s";
  }
  if (ok) note = "all three unions match the predicted class (" + times + ")";
  return ok;
}

bool criterion4(std::string& note) {
  bool ok = true;
  PencilVerdict v =
      pencil_check({parse_affine("y^2 - x^3"), parse_affine("y^2 - x^3 - 1")});
  ok &= check(v.pencil, "the two cubic fibers form a pencil", note);

  ok &= check(delta0(corpus("ffm1")).infinite,
              "infinite degree-0 invariant for the fiber pair", note);

  WeightedPresentation joined =
      product_presentation(corpus("line"), corpus("ffm1"));
  InvariantRecord r = invariant_record(joined);
  ok &= check(rational_primitive(r.multi) == parse_laurent("t1 - 1", 3),
              "union polynomial associate to t - 1", note);
  ok &= check(r.d0 == Delta0{false, 1}, "union degree-0 invariant equals 1",
              note);

  CrosscheckReport rep =
      crosscheck(corpus("line"), corpus("ffm1"), line_meta(), ffm1_meta());
  ok &= check(rep.all_pass, "crosscheck all-pass for line with fiber pair",
              note);
  if (ok) note = "pencil recognized; union polynomial t - 1, degree 1";
  return ok;
}

bool criterion5(std::string& note) {
  WeightedPresentation p = corpus("ffm1");
  FactSet facts = parse_facts(
      testutil::read_file(testutil::fixture_path("ffm1.facts")), p.alphabet());
  std::string script =
      testutil::read_file(testutil::fixture_path("ffm1.script"));

  bool ok = true;
  ScriptResult hi = run_script(p, facts, 1, script);
  ok &= check(hi.ok, "script applies at levels n >= 1", note);
  ok &= check(hi.readout.has_value() && hi.readout->conclusive &&
                  hi.readout->delta == 0,
              "conclusive delta = 0 at levels n >= 1", note);
  ok &= check(hi.replay_identical, "ledger replay is bit-identical", note);

  ScriptResult lo = run_script(p, facts, 0, script);
  ok &= check(!lo.ok && lo.failed_move == 3,
              "third move rejected at level 0", note);
  ok &= check(lo.error.find("inverse") != std::string::npos &&
                  lo.error.find("zero at level 0") != std::string::npos,
              "rejection names the non-invertible expression", note);
  ok &= check(lo.replay_identical, "failing replay is bit-identical", note);
  if (ok) {
    note = "delta = 0 certified for every level n >= 1; the key inversion "
           "is rejected at level 0";
  }
  return ok;
}

bool criterion6(std::string& note) {
  bool ok = true;
  int clauses = 0;

  auto irr = [](Delta0Class d0) {
    ComponentMeta m;
    m.irreducible = true;
    m.delta0_class = d0;
    m.components = 1;
    return m;
  };
  auto red = [](Delta0Class d0, Finiteness hf) {
    ComponentMeta m;
    m.irreducible = false;
    m.delta0_class = d0;
    m.pencil_type = PencilType::UNKNOWN;
    m.components = 2;
    if (hf != Finiteness::UNKNOWN) m.higher[0] = hf;
    return m;
  };

  // Same-class clause: every invariant degree vanishes.
  for (bool both_irr : {true, false}) {
    ComponentMeta a = both_irr ? irr(Delta0Class::FINITE_NONZERO)
                               : red(Delta0Class::INFINITE, Finiteness::UNKNOWN);
    ComponentMeta b = both_irr ? irr(Delta0Class::ZERO)
                               : red(Delta0Class::UNKNOWN, Finiteness::UNKNOWN);
    PredictionReport rep = predict_union(a, b);
    ++clauses;
    ok &= check(rep.level0.value == PredictedValue::ZERO &&
                    rep.higher.value == PredictedValue::ZERO &&
                    rep.finite_all &&
                    rep.multi.kind == MultiClass::NONZERO_CONSTANT,
                "same-class clause", note);
  }

  // Mixed clauses, level 0: decided by the reducible piece's degree-0 class.
  const std::pair<Delta0Class, PredictedValue> level0_clauses[] = {
      {Delta0Class::ZERO, PredictedValue::ZERO},
      {Delta0Class::FINITE_NONZERO, PredictedValue::ZERO},
      {Delta0Class::INFINITE, PredictedValue::FINITE_NONZERO},
      {Delta0Class::UNKNOWN, PredictedValue::CONDITIONAL},
  };
  for (const auto& [dd, want] : level0_clauses) {
    PredictionReport rep = predict_union(
        irr(Delta0Class::FINITE_NONZERO), red(dd, Finiteness::UNKNOWN));
    ++clauses;
    ok &= check(rep.level0.value == want && rep.finite_all,
                "mixed level-0 clause " + to_string(dd), note);
  }

  // Mixed clauses, levels n >= 1: split on the irreducible piece, then on
  // the reducible piece's higher finiteness.
  struct HigherClause {
    Delta0Class prime;
    Finiteness dprime_higher;
    PredictedValue want;
  };
  const HigherClause higher_clauses[] = {
      {Delta0Class::FINITE_NONZERO, Finiteness::UNKNOWN, PredictedValue::ZERO},
      {Delta0Class::ZERO, Finiteness::FINITE, PredictedValue::ZERO},
      {Delta0Class::ZERO, Finiteness::INFINITE, PredictedValue::FINITE_NONZERO},
      {Delta0Class::ZERO, Finiteness::UNKNOWN, PredictedValue::CONDITIONAL},
      {Delta0Class::UNKNOWN, Finiteness::FINITE, PredictedValue::CONDITIONAL},
  };
  for (const auto& c : higher_clauses) {
    PredictionReport rep = predict_union(
        irr(c.prime), red(Delta0Class::INFINITE, c.dprime_higher));
    ++clauses;
    ok &= check(rep.higher.value == c.want && rep.finite_all,
                "mixed higher clause", note);
  }

  // Polynomial classification clauses.
  {
    ComponentMeta pencil_yes = red(Delta0Class::INFINITE, Finiteness::UNKNOWN);
    pencil_yes.pencil_type = PencilType::YES;
    pencil_yes.components = 3;
    ComponentMeta pencil_no = red(Delta0Class::ZERO, Finiteness::UNKNOWN);
    pencil_no.pencil_type = PencilType::NO;

    MultiClassification cls =
        classify_multi(irr(Delta0Class::FINITE_NONZERO), pencil_no);
    ++clauses;
    ok &= check(cls.kind == MultiClass::NONZERO_CONSTANT,
                "non-pencil constant clause", note);
    cls = classify_multi(irr(Delta0Class::FINITE_NONZERO), pencil_yes);
    ++clauses;
    ok &= check(cls.kind == MultiClass::T_MINUS_ONE_POWER && cls.max_power == 2,
                "pencil power clause", note);
    cls = classify_multi(irr(Delta0Class::FINITE_NONZERO),
                         red(Delta0Class::UNKNOWN, Finiteness::UNKNOWN));
    ++clauses;
    ok &= check(cls.kind == MultiClass::CONDITIONAL,
                "undetermined pencil clause", note);
  }

  // Argument order never matters.
  {
    PredictionReport a = predict_union(
        irr(Delta0Class::ZERO), red(Delta0Class::INFINITE, Finiteness::FINITE));
    PredictionReport b = predict_union(
        red(Delta0Class::INFINITE, Finiteness::FINITE), irr(Delta0Class::ZERO));
    ++clauses;
    ok &= check(a.level0.value == b.level0.value &&
                    a.higher.value == b.higher.value &&
                    a.multi.kind == b.multi.kind,
                "symmetry clause", note);
  }

  if (ok) note = std::to_string(clauses) + " clauses verified";
  return ok;
}

bool criterion7(std::string& note) {
  bool ok = true;

  // (a) Derivation rules on 1000 random word pairs.
  {
    std::mt19937 rng(2024);
    for (int i = 0; ok && i < 1000; ++i) {
      Word u = testutil::random_word(rng, 3, 12);
      Word v = testutil::random_word(rng, 3, 12);
      for (int g = 0; g < 3; ++g) {
        RingElement lhs = fox_derivative(u * v, g);
        RingElement rhs =
            fox_derivative(u, g) + RingElement(u, 1) * fox_derivative(v, g);
        ok &= check(lhs == rhs, "product rule", note);
      }
      RingElement total;
      for (int g = 0; g < 3; ++g) {
        total = total + fox_derivative(u, g) *
                            (RingElement(Word::generator(g), 1) -
                             RingElement::one());
      }
      ok &= check(total == RingElement(u, 1) - RingElement::one(),
                  "telescoping identity", note);
    }
  }

  // (b) Gcd and normalization laws on 1000 random pairs.
  {
    std::mt19937 rng(2025);
    std::uniform_int_distribution<int> ex(-3, 3);
    for (int i = 0; ok && i < 1000; ++i) {
      int nv = 1 + (i % 2);
      LaurentPoly a = testutil::random_poly(rng, nv, 4, 3);
      LaurentPoly b = testutil::random_poly(rng, nv, 4, 3);
      LaurentPoly g = laurent_gcd(a, b);
      ok &= check(laurent_gcd(b, a) == g, "gcd symmetry", note);
      if (a.is_zero() && b.is_zero()) {
        ok &= check(g.is_zero(), "gcd of zeros", note);
        continue;
      }
      ok &= check(!g.is_zero() && is_canonical(g), "gcd canonical", note);
      ok &= check(laurent_divides(g, a) && laurent_divides(g, b),
                  "gcd divides", note);
      if (!a.is_zero()) {
        Exponent e(nv);
        for (int vi = 0; vi < nv; ++vi) e[vi] = ex(rng);
        LaurentPoly unit = LaurentPoly::monomial(e, -1);
        ok &= check(canonicalize(a * unit) == canonicalize(a),
                    "canonical form ignores units", note);
      }
    }
  }

  // (c) Specialization divisibility and one-component equality, full corpus.
  {
    std::vector<WeightedPresentation> family;
    for (const std::string n :
         {"cuspidal-cubic", "conic", "line", "parallel-lines:2",
          "parallel-lines:3", "parallel-lines:4", "parallel-lines:5", "ffm1",
          "trefoil-x-line"}) {
      family.push_back(corpus(n));
    }
    family.push_back(product_presentation(corpus("line"), corpus("ffm1")));
    for (const WeightedPresentation& p : family) {
      LaurentPoly multi = multi_alexander(p);
      LaurentPoly uni = uni_alexander(p);
      if (multi.is_zero()) {
        ok &= check(uni.is_zero(), "zero specializes to zero", note);
      } else {
        LaurentPoly spec = specialize_weights(multi, p.component_weights);
        if (spec.is_zero()) {
          ok &= check(uni.is_zero(), "collapsed specialization", note);
        } else {
          ok &= check(laurent_divides(rational_primitive(spec), uni),
                      "specialized polynomial divides", note);
        }
      }
      if (p.components == 1) {
        ok &= check(multi == uni, "one-component equality", note);
      }
    }
  }

  // (d) Agreement of the session reduction with the minor computation at
  // level 0, wherever the automatic mode reaches a verdict.
  {
    int conclusive = 0;
    for (const std::string n :
         {"cuspidal-cubic", "conic", "line", "parallel-lines:2",
          "parallel-lines:3", "ffm1", "trefoil-x-line"}) {
      WeightedPresentation p = corpus(n);
      ScriptResult res = run_auto(p, FactSet{}, 0);
      if (!res.readout || !res.readout->conclusive) continue;
      ++conclusive;
      Delta0 d0 = delta0(p);
      ok &= check(!d0.infinite && res.readout->delta == d0.value,
                  "session agreement on " + n, note);
    }
    ok &= check(conclusive >= 3, "enough conclusive automatic runs", note);
  }

  if (ok) {
    note = "derivation rules (1000 pairs), gcd laws (1000 pairs), "
           "divisibility and session agreement across the corpus";
  }
  return ok;
}

bool criterion8(std::string& note) {
  note = "out of scope by contract: certified degree-n values for n >= 1 "
         "beyond the scripted reductions, and infinite-value certification "
         "at n >= 1; the session engine reports these as inconclusive "
         "rather than guessing";
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance gate\n");
  criterion(1, "cuspidal cubic: degree-0 invariant equals 2", 1.0, criterion1);
  criterion(2, "2..5 parallel lines: vanishing polynomial, infinite degree, "
               "pencil recognized",
            1.0, criterion2);
  criterion(3, "cubic with 2..4 parallel lines: degree k-1 and (t-1)^(k-1)",
            30.0, criterion3);
  criterion(4, "cubic fiber pencil; line with fiber pair gives t - 1", 10.0,
            criterion4);
  criterion(5, "scripted reduction: delta 0 for n >= 1, replayable, level-0 "
               "rejection",
            5.0, criterion5);
  criterion(6, "union prediction decision table", 1.0, criterion6);
  criterion(7, "property suites: derivation rules, gcd laws, divisibility, "
               "session agreement",
            0.0, criterion7);
  criterion(8, "higher-level certification beyond worked reductions", 0.0,
            criterion8);
  std::printf("acceptance: %d criteria, %d failed\n", 8, g_failures);
  return g_failures == 0 ? 0 : 1;
}
