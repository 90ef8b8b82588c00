#include "alex/skew.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "alex/alexander.hpp"

namespace alex {

using nlohmann::json;

// ===========================================================================
// Laurent helpers: psi levels
// ===========================================================================

namespace {

long term_level(const Exponent& e, const std::vector<long>& w) {
  long lv = 0;
  for (size_t i = 0; i < e.size(); ++i) lv += e[i] * w[i];
  return lv;
}

bool is_level_homogeneous(const LaurentPoly& p, const std::vector<long>& w) {
  bool first = true;
  long lv = 0;
  for (const auto& [e, c] : p.terms()) {
    long l = term_level(e, w);
    if (first) {
      lv = l;
      first = false;
    } else if (l != lv) {
      return false;
    }
  }
  return true;
}

LaurentPoly top_component(const LaurentPoly& p, const std::vector<long>& w) {
  LaurentPoly out(p.nvars());
  if (p.is_zero()) return out;
  long best = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    long l = term_level(e, w);
    if (first || l > best) best = l, first = false;
  }
  for (const auto& [e, c] : p.terms()) {
    if (term_level(e, w) == best) out.add_term(e, c);
  }
  return out;
}

}  // namespace

// ===========================================================================
// AbFrac (level-0 entries)
// ===========================================================================

namespace {

AbFrac frac_reduce(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw MoveError("zero denominator at level 0");
  if (num.is_zero()) return {num, LaurentPoly::constant(num.nvars(), 1)};
  // Normalize the denominator to canonical form, compensating in the
  // numerator (canonicalization only changes by a unit +-t^e).
  Exponent shift = den.min_exponents();
  for (int& s : shift) s = -s;
  den = den.shifted(shift);
  num = num.shifted(shift);
  if (den.leading_term().second < 0) {
    den = -den;
    num = -num;
  }
  LaurentPoly g = laurent_gcd(num, den);
  if (!g.is_zero() && !(g.is_constant() && g.terms().begin()->second == 1)) {
    if (auto qn = laurent_divide(num, g)) {
      if (auto qd = laurent_divide(den, g)) {
        num = *qn;
        den = *qd;
      }
    }
  }
  return {num, den};
}

AbFrac frac_add(const AbFrac& a, const AbFrac& b) {
  return frac_reduce(a.num * b.den + b.num * a.den, a.den * b.den);
}

AbFrac frac_mul(const AbFrac& a, const AbFrac& b) {
  return frac_reduce(a.num * b.num, a.den * b.den);
}

AbFrac frac_neg(const AbFrac& a) { return {-a.num, a.den}; }

std::string frac_display(const AbFrac& a) {
  std::string out = print_laurent(a.num);
  if (!(a.den.is_constant() && !a.den.is_zero() &&
        a.den.terms().begin()->second == 1)) {
    out = "(" + out + ") / (" + print_laurent(a.den) + ")";
  }
  return out;
}

}  // namespace

bool operator==(const AbFrac& a, const AbFrac& b) {
  return a.num * b.den == b.num * a.den;
}

// ===========================================================================
// SkewExpr basics
// ===========================================================================

void SkewExpr::add(const Mono& m, long long c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

namespace {

SkewExpr expr_neg(const SkewExpr& a) {
  SkewExpr out;
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, -c);
  return out;
}

SkewExpr expr_add(const SkewExpr& a, const SkewExpr& b) {
  SkewExpr out = a;
  for (const auto& [m, c] : b.terms) out.add(m, c);
  return out;
}

SkewExpr expr_scale(const SkewExpr& a, long long c) {
  SkewExpr out;
  if (c == 0) return out;
  for (const auto& [m, k] : a.terms) out.terms.emplace(m, k * c);
  return out;
}

// Raw concatenation product; callers normalize afterwards.
SkewExpr expr_concat(const SkewExpr& a, const SkewExpr& b) {
  SkewExpr out;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      Mono m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add(m, ca * cb);
    }
  }
  return out;
}

int mono_size(const Mono& m) {
  int n = 0;
  for (const Atom& a : m) n += a.kind == Atom::WORD ? a.word.length() : 1;
  return n + static_cast<int>(m.size());
}

int expr_size(const SkewExpr& e) {
  int n = 0;
  for (const auto& [m, c] : e.terms) n += mono_size(m);
  return n;
}

}  // namespace

// ===========================================================================
// Fact context: word canonicalization under declared facts
// ===========================================================================

namespace {

bool word_better(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a < b;
}

struct FactContext {
  const WeightedPresentation* pres = nullptr;
  Alphabet alph;
  int level = 0;

  struct EqRule {
    std::vector<Letter> from;
    std::vector<Letter> to;
  };
  std::vector<EqRule> eq_rules;
  // Commuting letter blocks, expanded with inverses.
  std::vector<std::pair<std::vector<Letter>, std::vector<Letter>>> comm;
  std::vector<Word> nontrivial;  // canonical forms
  std::vector<DeclaredFact> declared;

  void build(const WeightedPresentation& p, const FactSet& fs, int lvl) {
    pres = &p;
    alph = p.alphabet();
    level = lvl;
    declared = fs.facts;
    for (const DeclaredFact& f : fs.facts) {
      switch (f.kind) {
        case FactKind::GENERATOR_EQUALITY: {
          if (p.ab_image(f.lhs) != p.ab_image(f.rhs)) {
            throw std::invalid_argument(
                "equality fact '" + alph.print_word(f.lhs) + " = " +
                alph.print_word(f.rhs) + "' is refuted by abelianization");
          }
          if (f.lhs == f.rhs) break;
          const Word& from = word_better(f.lhs, f.rhs) ? f.rhs : f.lhs;
          const Word& to = word_better(f.lhs, f.rhs) ? f.lhs : f.rhs;
          eq_rules.push_back({from.letters(), to.letters()});
          break;
        }
        case FactKind::COMMUTATION: {
          Word a = f.lhs, b = f.rhs;
          for (const Word& x : {a, a.inverse()}) {
            for (const Word& y : {b, b.inverse()}) {
              if (!x.trivial() && !y.trivial()) {
                comm.push_back({x.letters(), y.letters()});
                comm.push_back({y.letters(), x.letters()});
              }
            }
          }
          break;
        }
        case FactKind::NONTRIVIAL:
          nontrivial.push_back(f.lhs);  // canonicalized below
          break;
        case FactKind::LEVEL:
          break;
      }
    }
    for (Word& w : nontrivial) w = canon(w);
  }

  static bool match_at(const std::vector<Letter>& hay, size_t pos,
                       const std::vector<Letter>& pat) {
    if (pos + pat.size() > hay.size()) return false;
    for (size_t i = 0; i < pat.size(); ++i) {
      if (!(hay[pos + i] == pat[i])) return false;
    }
    return true;
  }

  Word canon(const Word& w0) const {
    Word w = w0;
    const int alpha = alph.size();
    for (int guard = 0; guard < 400; ++guard) {
      bool changed = false;
      const std::vector<Letter>& ls = w.letters();
      for (const EqRule& r : eq_rules) {
        for (size_t i = 0; !changed && i + r.from.size() <= ls.size(); ++i) {
          if (match_at(ls, i, r.from)) {
            std::vector<Letter> next(ls.begin(), ls.begin() + i);
            next.insert(next.end(), r.to.begin(), r.to.end());
            next.insert(next.end(), ls.begin() + i + r.from.size(), ls.end());
            Word cand = word_reduce(next, alpha);
            // Rules are oriented worse-to-better, so a genuine rewrite
            // always improves (shorter, or equal length and lex-smaller);
            // accepting only improvements keeps the loop terminating.
            if (word_better(cand, w)) {
              w = cand;
              changed = true;
            }
          }
        }
        if (changed) break;
      }
      if (changed) continue;
      for (const auto& [p, q] : comm) {
        const std::vector<Letter>& cur = w.letters();
        for (size_t i = 0; !changed && i + p.size() + q.size() <= cur.size();
             ++i) {
          if (match_at(cur, i, p) && match_at(cur, i + p.size(), q)) {
            std::vector<Letter> next(cur.begin(), cur.begin() + i);
            next.insert(next.end(), q.begin(), q.end());
            next.insert(next.end(), p.begin(), p.end());
            next.insert(next.end(), cur.begin() + i + p.size() + q.size(),
                        cur.end());
            Word cand = word_reduce(next, alpha);
            if (word_better(cand, w)) {
              w = cand;
              changed = true;
            }
          }
        }
        if (changed) break;
      }
      if (!changed) break;
    }
    return w;
  }

  bool commutes(const Word& a, const Word& b) const {
    if (a.trivial() || b.trivial()) return true;
    return canon(a * b) == canon(b * a);
  }

  // Cyclically reduce, then compare against the declared nontrivial words.
  bool certified_nontrivial_word(const Word& q0) const {
    Word q = canon(q0);
    while (q.length() >= 2) {
      const auto& ls = q.letters();
      if (ls.front() == ls.back().inverse()) {
        std::vector<Letter> inner(ls.begin() + 1, ls.end() - 1);
        q = canon(word_reduce(inner, alph.size()));
      } else {
        break;
      }
    }
    if (q.trivial()) return false;
    for (const Word& d : nontrivial) {
      if (q == d || q == d.inverse()) return true;
    }
    return false;
  }
};

}  // namespace

// ===========================================================================
// Units table
// ===========================================================================

namespace {

struct UnitDef {
  std::string display;
  SkewExpr def;                   // normalized (level >= 1)
  bool certified = false;
  long level = 0;                 // psi level once certified homogeneous
  std::vector<Word> support;      // words appearing in def (recursively)
};

}  // namespace

// ===========================================================================
// Session implementation
// ===========================================================================

struct SkewSession::Impl {
  WeightedPresentation pres;
  FactContext ctx;
  FactSet facts;
  int level = 0;  // 0, or 1 meaning any n >= 1
  int m = 0;      // original generator count
  int deletions = 0;
  std::vector<std::vector<Entry>> mat;
  std::vector<UnitDef> units;
  std::map<std::string, int> unit_by_key;    // normalized display -> index
  std::map<std::string, int> unit_by_name;   // let name -> index
  std::map<std::string, Entry> lets;
  std::vector<std::string> sources;          // raw move lines, for replay
  json moves = json::array();
  std::optional<json> readout_json;

  int rows() const { return static_cast<int>(mat.size()); }
  int cols() const { return mat.empty() ? 0 : static_cast<int>(mat[0].size()); }

  // ---- normalization ------------------------------------------------------

  Word canon(const Word& w) const { return ctx.canon(w); }

  bool inv_commutes_word(int ref, const Word& w) const {
    for (const Word& s : units[ref].support) {
      if (!ctx.commutes(s, w)) return false;
    }
    return true;
  }

  Mono normalize_mono(const Mono& in) const {
    Mono out;
    for (const Atom& a : in) {
      if (a.kind == Atom::WORD) {
        Word w = canon(a.word);
        if (w.trivial()) continue;
        if (!out.empty() && out.back().kind == Atom::WORD) {
          Word merged = canon(out.back().word * w);
          out.pop_back();
          if (!merged.trivial()) out.push_back({Atom::WORD, merged, -1});
        } else {
          out.push_back({Atom::WORD, w, -1});
        }
      } else {
        out.push_back(a);
      }
    }
    // Bubble INV atoms to the left past commuting words.
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 200) {
      moved = false;
      for (size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].kind == Atom::WORD && out[i + 1].kind == Atom::INV &&
            inv_commutes_word(out[i + 1].ref, out[i].word)) {
          std::swap(out[i], out[i + 1]);
          moved = true;
        }
      }
    }
    // Re-merge words made adjacent by the moves.
    Mono merged;
    for (const Atom& a : out) {
      if (a.kind == Atom::WORD && !merged.empty() &&
          merged.back().kind == Atom::WORD) {
        Word w = canon(merged.back().word * a.word);
        merged.pop_back();
        if (!w.trivial()) merged.push_back({Atom::WORD, w, -1});
      } else {
        merged.push_back(a);
      }
    }
    return merged;
  }

  SkewExpr normalize_basic(const SkewExpr& e) const {
    SkewExpr out;
    for (const auto& [m, c] : e.terms) out.add(normalize_mono(m), c);
    return out;
  }

  // Greedy division with remainder: find T, R with E = D*T + R (left) or
  // E = T*D + R (right). The invariant E = D*T + R holds at every step by
  // construction; the best (fewest terms, then smallest) state is returned.
  struct DivResult {
    SkewExpr quotient;
    SkewExpr remainder;
  };

  static bool word_is_prefix(const Word& p, const Word& w, Word* rest) {
    Word r = p.inverse() * w;
    if (r.length() != w.length() - p.length()) return false;
    *rest = r;
    return true;
  }

  static bool word_is_suffix(const Word& s, const Word& w, Word* rest) {
    Word r = w * s.inverse();
    if (r.length() != w.length() - s.length()) return false;
    *rest = r;
    return true;
  }

  static bool strip_prefix(const Mono& d, const Mono& e, Mono* rest) {
    if (d.empty()) {
      *rest = e;
      return true;
    }
    if (e.size() < d.size()) return false;
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      if (!(d[i] == e[i])) return false;
    }
    const Atom& dl = d.back();
    const Atom& el = e[d.size() - 1];
    Mono out;
    if (dl.kind == Atom::INV) {
      if (!(dl == el)) return false;
    } else {
      if (el.kind != Atom::WORD) return false;
      Word r;
      if (!word_is_prefix(dl.word, el.word, &r)) return false;
      if (!r.trivial()) out.push_back({Atom::WORD, r, -1});
    }
    out.insert(out.end(), e.begin() + d.size(), e.end());
    *rest = out;
    return true;
  }

  static bool strip_suffix(const Mono& d, const Mono& e, Mono* rest) {
    if (d.empty()) {
      *rest = e;
      return true;
    }
    if (e.size() < d.size()) return false;
    for (size_t i = 0; i + 1 < d.size(); ++i) {
      if (!(d[d.size() - 1 - i] == e[e.size() - 1 - i])) return false;
    }
    const Atom& df = d.front();
    const Atom& ef = e[e.size() - d.size()];
    Mono out(e.begin(), e.end() - d.size());
    if (df.kind == Atom::INV) {
      if (!(df == ef)) return false;
    } else {
      if (ef.kind != Atom::WORD) return false;
      Word r;
      if (!word_is_suffix(df.word, ef.word, &r)) return false;
      if (!r.trivial()) out.push_back({Atom::WORD, r, -1});
    }
    *rest = out;
    return true;
  }

  DivResult divide(const SkewExpr& divisor, const SkewExpr& dividend,
                   bool left) const {
    DivResult best{{}, dividend};
    if (divisor.is_zero() || dividend.is_zero()) return best;
    // Distinguished divisor term: smallest monomial.
    Mono d0;
    long long c0 = 0;
    bool first = true;
    for (const auto& [m, c] : divisor.terms) {
      if (first || mono_size(m) < mono_size(d0)) {
        d0 = m;
        c0 = c;
        first = false;
      }
    }
    SkewExpr T;
    SkewExpr R = dividend;
    auto score = [](const SkewExpr& r) {
      return std::pair<int, int>(static_cast<int>(r.terms.size()),
                                 expr_size(r));
    };
    auto best_score = score(best.remainder);
    for (int step = 0; step < 64 && !R.is_zero(); ++step) {
      bool progressed = false;
      for (const auto& [e0, ce] : R.terms) {
        if (c0 == 0 || ce % c0 != 0) continue;
        Mono t;
        bool okm = left ? strip_prefix(d0, e0, &t) : strip_suffix(d0, e0, &t);
        if (!okm) continue;
        long long ct = ce / c0;
        SkewExpr piece;
        piece.add(t, ct);
        T = expr_add(T, piece);
        SkewExpr prod = left ? expr_concat(divisor, piece)
                             : expr_concat(piece, divisor);
        R = normalize_basic(expr_add(R, expr_neg(prod)));
        progressed = true;
        break;
      }
      if (!progressed) break;
      auto sc = score(R);
      if (sc < best_score) {
        best_score = sc;
        best = {T, R};
      }
      if (R.is_zero()) {
        best = {T, R};
        break;
      }
    }
    return best;
  }

  SkewExpr normalize(const SkewExpr& e0) const {
    SkewExpr e = normalize_basic(e0);
    for (int round = 0; round < 30; ++round) {
      bool changed = false;
      // Collect unit refs present.
      std::vector<int> refs;
      for (const auto& [m, c] : e.terms) {
        for (const Atom& a : m) {
          if (a.kind == Atom::INV &&
              std::find(refs.begin(), refs.end(), a.ref) == refs.end()) {
            refs.push_back(a.ref);
          }
        }
      }
      for (int k : refs) {
        // Left rule: group by the prefix ending at the LAST inv(k).
        {
          std::map<Mono, SkewExpr> groups;
          SkewExpr untouched;
          for (const auto& [m, c] : e.terms) {
            int last = -1;
            for (size_t i = 0; i < m.size(); ++i) {
              if (m[i].kind == Atom::INV && m[i].ref == k) {
                last = static_cast<int>(i);
              }
            }
            if (last < 0) {
              untouched.add(m, c);
              continue;
            }
            Mono prefix(m.begin(), m.begin() + last + 1);
            Mono suffix(m.begin() + last + 1, m.end());
            groups[prefix].add(suffix, c);
          }
          bool applied = false;
          SkewExpr rebuilt = untouched;
          for (auto& [prefix, E] : groups) {
            DivResult d = divide(units[k].def, E, /*left=*/true);
            bool win = !d.quotient.is_zero() &&
                       d.remainder.terms.size() < E.terms.size();
            if (!win) {
              rebuilt = expr_add(rebuilt, prefixed(prefix, E));
              continue;
            }
            applied = true;
            Mono shorter(prefix.begin(), prefix.end() - 1);
            rebuilt = expr_add(rebuilt, prefixed(shorter, d.quotient));
            rebuilt = expr_add(rebuilt, prefixed(prefix, d.remainder));
          }
          if (applied) {
            e = normalize_basic(rebuilt);
            changed = true;
          }
        }
        // Right rule: group by the suffix starting at the FIRST inv(k).
        {
          std::map<Mono, SkewExpr> groups;
          SkewExpr untouched;
          for (const auto& [m, c] : e.terms) {
            int first = -1;
            for (size_t i = 0; i < m.size(); ++i) {
              if (m[i].kind == Atom::INV && m[i].ref == k) {
                first = static_cast<int>(i);
                break;
              }
            }
            if (first < 0) {
              untouched.add(m, c);
              continue;
            }
            Mono prefix(m.begin(), m.begin() + first);
            Mono suffix(m.begin() + first, m.end());
            groups[suffix].add(prefix, c);
          }
          bool applied = false;
          SkewExpr rebuilt = untouched;
          for (auto& [suffix, D] : groups) {
            DivResult d = divide(units[k].def, D, /*left=*/false);
            bool win = !d.quotient.is_zero() &&
                       d.remainder.terms.size() < D.terms.size();
            if (!win) {
              rebuilt = expr_add(rebuilt, suffixed(D, suffix));
              continue;
            }
            applied = true;
            Mono shorter(suffix.begin() + 1, suffix.end());
            rebuilt = expr_add(rebuilt, suffixed(d.quotient, shorter));
            rebuilt = expr_add(rebuilt, suffixed(d.remainder, suffix));
          }
          if (applied) {
            e = normalize_basic(rebuilt);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    return e;
  }

  static SkewExpr prefixed(const Mono& p, const SkewExpr& e) {
    SkewExpr out;
    for (const auto& [m, c] : e.terms) {
      Mono t = p;
      t.insert(t.end(), m.begin(), m.end());
      out.add(t, c);
    }
    return out;
  }

  static SkewExpr suffixed(const SkewExpr& e, const Mono& s) {
    SkewExpr out;
    for (const auto& [m, c] : e.terms) {
      Mono t = m;
      t.insert(t.end(), s.begin(), s.end());
      out.add(t, c);
    }
    return out;
  }

  // ---- certificates -------------------------------------------------------

  long mono_level(const Mono& m) const {
    long lv = 0;
    for (const Atom& a : m) {
      lv += a.kind == Atom::WORD ? pres.psi_image(a.word)
                                 : -units[a.ref].level;
    }
    return lv;
  }

  bool expr_homogeneous(const SkewExpr& e, long* level_out) const {
    bool first = true;
    long lv = 0;
    for (const auto& [m, c] : e.terms) {
      long l = mono_level(m);
      if (first) {
        lv = l;
        first = false;
      } else if (l != lv) {
        return false;
      }
    }
    if (level_out) *level_out = lv;
    return true;
  }

  bool certify_nonzero(const SkewExpr& e, int depth = 0) const {
    if (e.is_zero()) return false;
    if (e.terms.size() == 1) return true;  // product of group elements/units
    if (depth >= 4) return false;
    bool has_inv = false;
    int ref = -1;
    bool word_only = true;
    for (const auto& [m, c] : e.terms) {
      for (const Atom& a : m) {
        if (a.kind == Atom::INV) {
          has_inv = true;
          ref = a.ref;
          word_only = false;
        }
      }
      if (m.size() > 1) word_only = false;
    }
    if (has_inv) {
      SkewExpr lm = normalize(expr_concat(units[ref].def, e));
      if (certify_nonzero(lm, depth + 1)) return true;
      SkewExpr rm = normalize(expr_concat(e, units[ref].def));
      return certify_nonzero(rm, depth + 1);
    }
    if (!word_only) return false;
    // Fibers over the abelianization: supports in distinct classes are
    // disjoint, so one nonzero fiber certifies the sum nonzero.
    std::map<std::vector<long>, std::vector<std::pair<Word, long long>>> fib;
    for (const auto& [m, c] : e.terms) {
      Word w = m.empty() ? Word{} : m[0].word;
      fib[pres.ab_image(w)].push_back({w, c});
    }
    for (const auto& [ab, terms] : fib) {
      long long sum = 0;
      for (const auto& [w, c] : terms) sum += c;
      if (sum != 0) return true;  // augmentation is nonzero
      bool all_distinct = true;
      for (size_t i = 0; i < terms.size() && all_distinct; ++i) {
        for (size_t j = i + 1; j < terms.size() && all_distinct; ++j) {
          Word q = terms[i].first.inverse() * terms[j].first;
          if (!ctx.certified_nontrivial_word(q)) all_distinct = false;
        }
      }
      if (all_distinct && terms.size() > 1) return true;
    }
    return false;
  }

  struct UnitCheck {
    bool ok = false;
    long level = 0;
    std::string why;
  };

  UnitCheck certify_unit_ge1(const SkewExpr& e) const {
    UnitCheck u;
    if (e.is_zero()) {
      u.why = "it is zero";
      return u;
    }
    if (!expr_homogeneous(e, &u.level)) {
      u.why = "it is not level-homogeneous";
      return u;
    }
    if (!certify_nonzero(e)) {
      u.why =
          "its nonvanishing cannot be certified from the declared facts";
      return u;
    }
    u.ok = true;
    return u;
  }

  UnitCheck certify_unit_l0(const AbFrac& f) const {
    UnitCheck u;
    if (f.num.is_zero()) {
      u.why = "it is zero at level 0";
      return u;
    }
    if (!is_level_homogeneous(f.num, pres.component_weights)) {
      u.why = "it is not level-homogeneous at level 0";
      return u;
    }
    u.ok = true;
    return u;
  }

  // ---- displays -----------------------------------------------------------

  std::string word_str(const Word& w) const { return ctx.alph.print_word(w); }

  std::string mono_str(const Mono& m) const {
    if (m.empty()) return "1";
    std::string out;
    for (const Atom& a : m) {
      if (!out.empty()) out += " * ";
      if (a.kind == Atom::WORD) {
        out += word_str(a.word);
      } else {
        out += "inv(" + units[a.ref].display + ")";
      }
    }
    return out;
  }

  std::string expr_str(const SkewExpr& e) const {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms) {
      long long a = c;
      if (out.empty()) {
        if (a < 0) {
          out += "-";
          a = -a;
        }
      } else {
        out += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      if (m.empty()) {
        out += std::to_string(a);
      } else {
        if (a != 1) out += std::to_string(a) + "*";
        out += mono_str(m);
      }
    }
    return out;
  }

  std::string entry_str(const Entry& e) const {
    if (const SkewExpr* s = std::get_if<SkewExpr>(&e)) return expr_str(*s);
    return frac_display(std::get<AbFrac>(e));
  }

  json state_json() const {
    json st = json::array();
    for (const auto& row : mat) {
      json r = json::array();
      for (const Entry& e : row) r.push_back(entry_str(e));
      st.push_back(r);
    }
    return st;
  }

  // ---- expression parsing and evaluation ----------------------------------

  struct ExprNode {
    enum K { INT, WORD, NAME, VAR, NEG, ADD, SUB, MUL, INV } k = INT;
    long long i = 0;
    Word w;
    std::string name;
    int var = 0;
    std::vector<ExprNode> kids;
  };

  struct Lexer {
    std::string s;
    size_t p = 0;

    void skip() {
      while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) {
        ++p;
      }
    }
    bool done() {
      skip();
      return p >= s.size();
    }
    char peek() {
      skip();
      return p < s.size() ? s[p] : '\0';
    }
    bool eat(char c) {
      if (peek() != c) return false;
      ++p;
      return true;
    }
    long long integer() {
      skip();
      bool neg = eat('-');
      skip();
      if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p]))) {
        throw MoveError("expected integer in expression near '" +
                        s.substr(p) + "'");
      }
      long long v = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) {
        v = v * 10 + (s[p++] - '0');
      }
      return neg ? -v : v;
    }
    std::string ident() {
      skip();
      std::string out;
      while (p < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) {
        out += s[p++];
      }
      return out;
    }
  };

  ExprNode parse_expr_text(const std::string& text) const {
    Lexer lx{text, 0};
    ExprNode e = parse_sum(lx);
    if (!lx.done()) {
      throw MoveError("unexpected trailing input in expression: '" +
                      lx.s.substr(lx.p) + "'");
    }
    return e;
  }

  ExprNode parse_sum(Lexer& lx) const {
    ExprNode acc = parse_product(lx);
    while (true) {
      if (lx.eat('+')) {
        ExprNode n;
        n.k = ExprNode::ADD;
        n.kids = {acc, parse_product(lx)};
        acc = n;
      } else if (lx.eat('-')) {
        ExprNode n;
        n.k = ExprNode::SUB;
        n.kids = {acc, parse_product(lx)};
        acc = n;
      } else {
        break;
      }
    }
    return acc;
  }

  ExprNode parse_product(Lexer& lx) const {
    ExprNode acc = parse_factor(lx);
    while (lx.eat('*')) {
      ExprNode n;
      n.k = ExprNode::MUL;
      n.kids = {acc, parse_factor(lx)};
      acc = n;
    }
    return acc;
  }

  ExprNode parse_factor(Lexer& lx) const {
    if (lx.eat('-')) {
      ExprNode n;
      n.k = ExprNode::NEG;
      n.kids = {parse_factor(lx)};
      return n;
    }
    if (lx.eat('(')) {
      ExprNode inner = parse_sum(lx);
      if (!lx.eat(')')) throw MoveError("missing ')' in expression");
      if (lx.eat('^')) {
        long long e = lx.integer();
        if (e == 1) return inner;
        if (e != -1) {
          throw MoveError(
              "only exponent -1 is supported on parenthesized expressions");
        }
        ExprNode n;
        n.k = ExprNode::INV;
        n.kids = {inner};
        return n;
      }
      return inner;
    }
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      ExprNode n;
      n.k = ExprNode::INT;
      n.i = lx.integer();
      return n;
    }
    std::string id = lx.ident();
    if (id.empty()) {
      throw MoveError("unexpected character in expression: '" +
                      std::string(1, c) + "'");
    }
    if (id == "inv") {
      if (!lx.eat('(')) throw MoveError("expected '(' after inv");
      ExprNode inner = parse_sum(lx);
      if (!lx.eat(')')) throw MoveError("missing ')' after inv(...)");
      ExprNode n;
      n.k = ExprNode::INV;
      n.kids = {inner};
      return n;
    }
    long long expo = 1;
    bool has_expo = false;
    {
      Lexer save = lx;
      if (lx.eat('^')) {
        expo = lx.integer();
        has_expo = true;
      } else {
        lx = save;
      }
    }
    if (lets.count(id)) {
      ExprNode n;
      n.k = ExprNode::NAME;
      n.name = id;
      if (!has_expo || expo == 1) return n;
      if (expo == -1) {
        ExprNode inv;
        inv.k = ExprNode::INV;
        inv.kids = {n};
        return inv;
      }
      throw MoveError("exponents other than -1 are not supported on names");
    }
    // Word token over the alphabet.
    if (auto w = try_word_token(id)) {
      ExprNode n;
      n.k = ExprNode::WORD;
      n.w = has_expo ? w->pow(static_cast<int>(expo)) : *w;
      return n;
    }
    // Abelianized variable (level 0).
    if (level == 0 && !id.empty() && id[0] == 't') {
      int var = -1;
      if (id == "t" && pres.components == 1) var = 0;
      if (id.size() > 1 &&
          std::all_of(id.begin() + 1, id.end(), [](char ch) {
            return std::isdigit(static_cast<unsigned char>(ch));
          })) {
        var = std::stoi(id.substr(1)) - 1;
      }
      if (var >= 0 && var < pres.components) {
        ExprNode n;
        n.k = ExprNode::VAR;
        n.var = var;
        n.i = has_expo ? expo : 1;
        return n;
      }
    }
    throw MoveError("unknown name '" + id + "' in expression");
  }

  std::optional<Word> try_word_token(const std::string& tok) const {
    try {
      return ctx.alph.parse_word(tok);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  // -- evaluation at level >= 1

  SkewExpr eval_ge1(const ExprNode& n) {
    switch (n.k) {
      case ExprNode::INT: {
        SkewExpr e;
        e.add({}, n.i);
        return e;
      }
      case ExprNode::WORD: {
        SkewExpr e;
        Word w = canon(n.w);
        Mono m;
        if (!w.trivial()) m.push_back({Atom::WORD, w, -1});
        e.add(m, 1);
        return e;
      }
      case ExprNode::NAME:
        return std::get<SkewExpr>(lets.at(n.name));
      case ExprNode::VAR:
        throw MoveError("abelianized variables are only valid at level 0");
      case ExprNode::NEG:
        return expr_neg(eval_ge1(n.kids[0]));
      case ExprNode::ADD:
        return normalize(
            expr_add(eval_ge1(n.kids[0]), eval_ge1(n.kids[1])));
      case ExprNode::SUB:
        return normalize(expr_add(eval_ge1(n.kids[0]),
                                  expr_neg(eval_ge1(n.kids[1]))));
      case ExprNode::MUL:
        return normalize(
            expr_concat(eval_ge1(n.kids[0]), eval_ge1(n.kids[1])));
      case ExprNode::INV:
        return eval_inv_ge1(n.kids[0]);
    }
    return {};
  }

  SkewExpr eval_inv_ge1(const ExprNode& child) {
    SkewExpr def = normalize(eval_ge1(child));
    if (def.is_zero()) {
      throw MoveError("inverse of an expression that normalizes to zero");
    }
    // Single +-word monomials invert directly.
    if (def.terms.size() == 1) {
      const auto& [m, c] = *def.terms.begin();
      if ((c == 1 || c == -1) &&
          std::all_of(m.begin(), m.end(), [](const Atom& a) {
            return a.kind == Atom::WORD;
          })) {
        Mono inv;
        for (auto it = m.rbegin(); it != m.rend(); ++it) {
          inv.push_back({Atom::WORD, it->word.inverse(), -1});
        }
        SkewExpr e;
        e.add(normalize_mono(inv), c);
        return e;
      }
      if (m.size() == 1 && m[0].kind == Atom::INV && (c == 1 || c == -1)) {
        return expr_scale(units[m[0].ref].def, c);
      }
    }
    // Sign-normalize so that E and -E share one unit table slot.
    long long sign = 1;
    if (!def.terms.empty() && def.terms.begin()->second < 0) {
      sign = -1;
      def = expr_neg(def);
    }
    std::string named;
    if (child.k == ExprNode::NAME) named = child.name;
    int idx = intern_unit(def, named);
    UnitCheck chk = certify_unit_ge1(units[idx].def);
    if (!chk.ok) {
      throw MoveError("expression '" + units[idx].display +
                      "' is not a certified unit: " + chk.why);
    }
    units[idx].certified = true;
    units[idx].level = chk.level;
    SkewExpr e;
    e.add({Atom{Atom::INV, Word{}, idx}}, sign);
    return e;
  }

  int intern_unit(const SkewExpr& def, const std::string& name) {
    if (!name.empty()) {
      if (auto it = unit_by_name.find(name); it != unit_by_name.end()) {
        return it->second;
      }
    }
    std::string key = expr_str(def);
    if (auto it = unit_by_key.find(key); it != unit_by_key.end()) {
      return it->second;
    }
    UnitDef u;
    u.display = name.empty() ? key : name;
    u.def = def;
    collect_support(def, &u.support);
    units.push_back(std::move(u));
    int idx = static_cast<int>(units.size()) - 1;
    unit_by_key.emplace(key, idx);
    if (!name.empty()) unit_by_name.emplace(name, idx);
    return idx;
  }

  void collect_support(const SkewExpr& e, std::vector<Word>* out) const {
    for (const auto& [m, c] : e.terms) {
      for (const Atom& a : m) {
        if (a.kind == Atom::WORD) {
          out->push_back(a.word);
        } else {
          for (const Word& w : units[a.ref].support) out->push_back(w);
        }
      }
    }
  }

  // -- evaluation at level 0

  AbFrac eval_l0(const ExprNode& n) {
    const int s = pres.components;
    switch (n.k) {
      case ExprNode::INT:
        return {LaurentPoly::constant(s, static_cast<long>(n.i)),
                LaurentPoly::constant(s, 1)};
      case ExprNode::WORD: {
        Exponent e(s);
        std::vector<long> ab = pres.ab_image(n.w);
        for (int i = 0; i < s; ++i) e[i] = static_cast<int>(ab[i]);
        return {LaurentPoly::monomial(e, 1), LaurentPoly::constant(s, 1)};
      }
      case ExprNode::NAME:
        return std::get<AbFrac>(lets.at(n.name));
      case ExprNode::VAR: {
        Exponent e(s);
        e[n.var] = static_cast<int>(n.i);
        return {LaurentPoly::monomial(e, 1), LaurentPoly::constant(s, 1)};
      }
      case ExprNode::NEG:
        return frac_neg(eval_l0(n.kids[0]));
      case ExprNode::ADD:
        return frac_add(eval_l0(n.kids[0]), eval_l0(n.kids[1]));
      case ExprNode::SUB:
        return frac_add(eval_l0(n.kids[0]), frac_neg(eval_l0(n.kids[1])));
      case ExprNode::MUL:
        return frac_mul(eval_l0(n.kids[0]), eval_l0(n.kids[1]));
      case ExprNode::INV: {
        AbFrac f = eval_l0(n.kids[0]);
        if (f.num.is_zero()) {
          throw MoveError(
              "inverse of an expression that is zero at level 0 (its "
              "abelianized image vanishes)");
        }
        if (!is_level_homogeneous(f.num, pres.component_weights)) {
          throw MoveError(
              "inverse of a non-homogeneous expression is not a unit at "
              "level 0");
        }
        return frac_reduce(f.den, f.num);
      }
    }
    return {LaurentPoly::zero(s), LaurentPoly::constant(s, 1)};
  }

  Entry eval_entry(const std::string& text) {
    ExprNode ast = parse_expr_text(text);
    if (level == 0) return eval_l0(ast);
    return eval_ge1(ast);
  }

  // ---- entry arithmetic ----------------------------------------------------

  Entry entry_zero() const {
    if (level == 0) {
      return AbFrac{LaurentPoly::zero(pres.components),
                    LaurentPoly::constant(pres.components, 1)};
    }
    return SkewExpr{};
  }

  bool entry_is_zero(const Entry& e) const {
    if (const SkewExpr* s = std::get_if<SkewExpr>(&e)) return s->is_zero();
    return std::get<AbFrac>(e).num.is_zero();
  }

  Entry mul_left(const Entry& mult, const Entry& e) const {
    if (level == 0) {
      return frac_mul(std::get<AbFrac>(mult), std::get<AbFrac>(e));
    }
    return normalize(
        expr_concat(std::get<SkewExpr>(mult), std::get<SkewExpr>(e)));
  }

  Entry mul_right(const Entry& e, const Entry& mult) const {
    if (level == 0) {
      return frac_mul(std::get<AbFrac>(e), std::get<AbFrac>(mult));
    }
    return normalize(
        expr_concat(std::get<SkewExpr>(e), std::get<SkewExpr>(mult)));
  }

  Entry add_entries(const Entry& a, const Entry& b) const {
    if (level == 0) return frac_add(std::get<AbFrac>(a), std::get<AbFrac>(b));
    return normalize(
        expr_add(std::get<SkewExpr>(a), std::get<SkewExpr>(b)));
  }

  Entry neg_entry(const Entry& a) const {
    if (level == 0) return frac_neg(std::get<AbFrac>(a));
    return expr_neg(std::get<SkewExpr>(a));
  }

  UnitCheck certify_unit_entry(const Entry& e) const {
    if (level == 0) return certify_unit_l0(std::get<AbFrac>(e));
    return certify_unit_ge1(std::get<SkewExpr>(e));
  }

  bool certify_nonzero_entry(const Entry& e) const {
    if (level == 0) return !std::get<AbFrac>(e).num.is_zero();
    return certify_nonzero(std::get<SkewExpr>(e));
  }

  // ---- ledger --------------------------------------------------------------

  void record(const std::string& move, const json& args,
              const std::string& source, const std::vector<std::string>& notes) {
    json entry;
    entry["step"] = static_cast<int>(moves.size()) + 1;
    entry["move"] = move;
    entry["args"] = args;
    entry["source"] = source;
    entry["status"] = "applied";
    if (!notes.empty()) entry["notes"] = notes;
    entry["deletions"] = deletions;
    entry["state"] = state_json();
    moves.push_back(entry);
    sources.push_back(source);
  }

  void record_rejected(const std::string& move, const json& args,
                       const std::string& source, const std::string& reason) {
    json entry;
    entry["step"] = static_cast<int>(moves.size()) + 1;
    entry["move"] = move;
    entry["args"] = args;
    entry["source"] = source;
    entry["status"] = "rejected";
    entry["reason"] = reason;
    entry["deletions"] = deletions;
    entry["state"] = state_json();
    moves.push_back(entry);
    sources.push_back(source);
  }

  void check_row(int i) const {
    if (i < 1 || i > rows()) {
      throw MoveError("row index " + std::to_string(i) + " out of range");
    }
  }
  void check_col(int j) const {
    if (j < 1 || j > cols()) {
      throw MoveError("column index " + std::to_string(j) + " out of range");
    }
  }
};

// ===========================================================================
// Session: construction and moves
// ===========================================================================

SkewSession::SkewSession(const WeightedPresentation& p, const FactSet& facts,
                         int level)
    : impl_(std::make_unique<Impl>()) {
  if (level != 0 && level != 1) {
    throw std::invalid_argument("level must be 0 or 1 (meaning any n >= 1)");
  }
  auto bad = validate(p);
  if (!bad.empty()) {
    std::string msg = "invalid presentation:";
    for (const auto& b : bad) msg += " " + b + ";";
    throw std::invalid_argument(msg);
  }
  impl_->pres = p;
  impl_->facts = facts;
  impl_->level = level;
  impl_->m = p.gen_count();
  impl_->ctx.build(impl_->pres, facts, level);

  FoxMatrix fm = fox_matrix(impl_->pres);
  impl_->mat.assign(fm.rows, std::vector<Entry>(fm.cols, impl_->entry_zero()));
  for (int i = 0; i < fm.rows; ++i) {
    for (int j = 0; j < fm.cols; ++j) {
      if (level == 0) {
        impl_->mat[i][j] =
            frac_reduce(abelianize(fm.entries[i][j], impl_->pres),
                        LaurentPoly::constant(p.components, 1));
      } else {
        SkewExpr e;
        for (const auto& [w, c] : fm.entries[i][j].terms()) {
          Word cw = impl_->canon(w);
          Mono m;
          if (!cw.trivial()) m.push_back({Atom::WORD, cw, -1});
          e.add(m, c);
        }
        impl_->mat[i][j] = impl_->normalize(e);
      }
    }
  }
}

SkewSession::~SkewSession() = default;
SkewSession::SkewSession(SkewSession&&) noexcept = default;
SkewSession& SkewSession::operator=(SkewSession&&) noexcept = default;

int SkewSession::level() const { return impl_->level; }
int SkewSession::rows() const { return impl_->rows(); }
int SkewSession::cols() const { return impl_->cols(); }
int SkewSession::deletions() const { return impl_->deletions; }

std::string SkewSession::entry_display(int i, int j) const {
  impl_->check_row(i);
  impl_->check_col(j);
  return impl_->entry_str(impl_->mat[i - 1][j - 1]);
}

std::vector<std::vector<std::string>> SkewSession::matrix_display() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : impl_->mat) {
    std::vector<std::string> r;
    for (const Entry& e : row) r.push_back(impl_->entry_str(e));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

bool valid_let_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::islower(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  static const char* reserved[] = {"inv", "left", "right", "rows", "cols"};
  for (const char* r : reserved) {
    if (name == r) return false;
  }
  return true;
}

}  // namespace

void SkewSession::let_binding(const std::string& name,
                              const std::string& expr) {
  Impl& im = *impl_;
  json args{{"name", name}, {"expr", expr}};
  std::string source = "let " + name + " = " + expr;
  try {
    if (!valid_let_name(name)) {
      throw MoveError("invalid let name '" + name + "'");
    }
    if (im.lets.count(name)) {
      throw MoveError("name '" + name + "' is already bound");
    }
    if (im.try_word_token(name)) {
      throw MoveError("name '" + name + "' collides with a generator token");
    }
    Entry v = im.eval_entry(expr);
    im.lets.emplace(name, v);
    if (im.level >= 1) {
      // Register the definition so inv(name) keeps the friendly display.
      SkewExpr def = std::get<SkewExpr>(v);
      if (!def.is_zero()) {
        long long sign = def.terms.begin()->second < 0 ? -1 : 1;
        if (sign < 0) def = expr_neg(def);
        im.intern_unit(def, name);
      }
    }
    im.record("let", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("let", args, source, e.what());
    throw;
  }
}

void SkewSession::row_scale(int i, const std::string& side,
                            const std::string& expr) {
  Impl& im = *impl_;
  json args{{"row", i}, {"side", side}, {"expr", expr}};
  std::string source =
      "rowscale " + std::to_string(i) + " " + side + " " + expr;
  try {
    im.check_row(i);
    if (side != "left") {
      throw MoveError(
          "unsupported side '" + side +
          "': rows scale from the left (columns scale from the right)");
    }
    Entry mult = im.eval_entry(expr);
    auto chk = im.certify_unit_entry(mult);
    if (!chk.ok) {
      throw MoveError("scale factor is not a certified unit: " + chk.why);
    }
    for (int c = 0; c < im.cols(); ++c) {
      im.mat[i - 1][c] = im.mul_left(mult, im.mat[i - 1][c]);
    }
    im.record("rowscale", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("rowscale", args, source, e.what());
    throw;
  }
}

void SkewSession::col_scale(int j, const std::string& side,
                            const std::string& expr) {
  Impl& im = *impl_;
  json args{{"col", j}, {"side", side}, {"expr", expr}};
  std::string source =
      "colscale " + std::to_string(j) + " " + side + " " + expr;
  try {
    im.check_col(j);
    if (side != "right") {
      throw MoveError(
          "unsupported side '" + side +
          "': columns scale from the right (rows scale from the left)");
    }
    Entry mult = im.eval_entry(expr);
    auto chk = im.certify_unit_entry(mult);
    if (!chk.ok) {
      throw MoveError("scale factor is not a certified unit: " + chk.why);
    }
    for (int r = 0; r < im.rows(); ++r) {
      im.mat[r][j - 1] = im.mul_right(im.mat[r][j - 1], mult);
    }
    im.record("colscale", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("colscale", args, source, e.what());
    throw;
  }
}

void SkewSession::row_addmul(int i, int k, const std::string& expr) {
  Impl& im = *impl_;
  json args{{"row", i}, {"from", k}, {"expr", expr}};
  std::string source =
      "rowaddmul " + std::to_string(i) + " " + std::to_string(k) + " " + expr;
  try {
    im.check_row(i);
    im.check_row(k);
    if (i == k) throw MoveError("row indices must differ");
    Entry mult = im.eval_entry(expr);
    for (int c = 0; c < im.cols(); ++c) {
      im.mat[i - 1][c] = im.add_entries(
          im.mat[i - 1][c], im.mul_left(mult, im.mat[k - 1][c]));
    }
    im.record("rowaddmul", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("rowaddmul", args, source, e.what());
    throw;
  }
}

void SkewSession::col_addmul(int j, int k, const std::string& expr) {
  Impl& im = *impl_;
  json args{{"col", j}, {"from", k}, {"expr", expr}};
  std::string source =
      "coladdmul " + std::to_string(j) + " " + std::to_string(k) + " " + expr;
  try {
    im.check_col(j);
    im.check_col(k);
    if (j == k) throw MoveError("column indices must differ");
    Entry mult = im.eval_entry(expr);
    for (int r = 0; r < im.rows(); ++r) {
      im.mat[r][j - 1] = im.add_entries(
          im.mat[r][j - 1], im.mul_right(im.mat[r][k - 1], mult));
    }
    im.record("coladdmul", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("coladdmul", args, source, e.what());
    throw;
  }
}

void SkewSession::rewrite_all() {
  Impl& im = *impl_;
  json args = json::object();
  try {
    for (auto& row : im.mat) {
      for (Entry& e : row) {
        if (im.level == 0) {
          AbFrac f = std::get<AbFrac>(e);
          e = frac_reduce(f.num, f.den);
        } else {
          e = im.normalize(std::get<SkewExpr>(e));
        }
      }
    }
    im.record("rewrite", args, "rewrite", {});
  } catch (const MoveError& e) {
    im.record_rejected("rewrite", args, "rewrite", e.what());
    throw;
  }
}

void SkewSession::rewrite_entry(int i, int j, const std::string& expr) {
  Impl& im = *impl_;
  json args{{"row", i}, {"col", j}, {"expr", expr}};
  std::string source = "rewriteentry " + std::to_string(i) + " " +
                       std::to_string(j) + " " + expr;
  try {
    im.check_row(i);
    im.check_col(j);
    Entry v = im.eval_entry(expr);
    Entry diff = im.add_entries(im.mat[i - 1][j - 1], im.neg_entry(v));
    if (!im.entry_is_zero(diff)) {
      throw MoveError(
          "replacement could not be verified equal to the entry (difference "
          "normalizes to '" +
          im.entry_str(diff) + "')");
    }
    im.mat[i - 1][j - 1] = v;
    im.record("rewriteentry", args, source, {});
  } catch (const MoveError& e) {
    im.record_rejected("rewriteentry", args, source, e.what());
    throw;
  }
}

void SkewSession::pivot_delete(int i, int j) {
  Impl& im = *impl_;
  json args{{"row", i}, {"col", j}};
  std::string source =
      "pivotdelete " + std::to_string(i) + " " + std::to_string(j);
  try {
    im.check_row(i);
    im.check_col(j);
    Entry pivot = im.mat[i - 1][j - 1];
    auto chk = im.certify_unit_entry(pivot);
    if (!chk.ok) {
      throw MoveError("pivot (" + std::to_string(i) + "," +
                      std::to_string(j) +
                      ") is not a certified unit: " + chk.why);
    }
    std::vector<std::string> notes;
    Entry pinv;
    if (im.level == 0) {
      AbFrac f = std::get<AbFrac>(pivot);
      pinv = frac_reduce(f.den, f.num);
    } else {
      SkewExpr def = std::get<SkewExpr>(pivot);
      long long sign = def.terms.begin()->second < 0 ? -1 : 1;
      if (sign < 0) def = expr_neg(def);
      SkewExpr inv;
      // Reuse the inversion path so single words invert directly.
      const auto& [m0, c0] = *def.terms.begin();
      if (def.terms.size() == 1 && (c0 == 1 || c0 == -1) &&
          std::all_of(m0.begin(), m0.end(), [](const Atom& a) {
            return a.kind == Atom::WORD;
          })) {
        Mono rm;
        for (auto it = m0.rbegin(); it != m0.rend(); ++it) {
          rm.push_back({Atom::WORD, it->word.inverse(), -1});
        }
        inv.add(im.normalize_mono(rm), c0);
      } else {
        int idx = im.intern_unit(def, "");
        im.units[idx].certified = true;
        im.units[idx].level = chk.level;
        inv.add({Atom{Atom::INV, Word{}, idx}}, 1);
      }
      pinv = sign < 0 ? Entry(expr_neg(inv)) : Entry(inv);
    }
    // Clear column j with row operations.
    for (int r = 1; r <= im.rows(); ++r) {
      if (r == i || im.entry_is_zero(im.mat[r - 1][j - 1])) continue;
      Entry mult = im.neg_entry(im.mul_right(im.mat[r - 1][j - 1], pinv));
      notes.push_back("row " + std::to_string(r) + " += (" +
                      im.entry_str(mult) + ") * row " + std::to_string(i));
      for (int c = 0; c < im.cols(); ++c) {
        im.mat[r - 1][c] = im.add_entries(im.mat[r - 1][c],
                                          im.mul_left(mult, im.mat[i - 1][c]));
      }
      if (!im.entry_is_zero(im.mat[r - 1][j - 1])) {
        notes.push_back("entry (" + std::to_string(r) + "," +
                        std::to_string(j) +
                        ") set to the exact zero guaranteed by the pivot "
                        "identity");
        im.mat[r - 1][j - 1] = im.entry_zero();
      }
    }
    // Clear row i with column operations (other rows are zero in column j).
    for (int c = 1; c <= im.cols(); ++c) {
      if (c == j || im.entry_is_zero(im.mat[i - 1][c - 1])) continue;
      Entry mult = im.neg_entry(im.mul_left(pinv, im.mat[i - 1][c - 1]));
      notes.push_back("col " + std::to_string(c) + " += col " +
                      std::to_string(j) + " * (" + im.entry_str(mult) + ")");
      for (int r = 0; r < im.rows(); ++r) {
        im.mat[r][c - 1] = im.add_entries(
            im.mat[r][c - 1], im.mul_right(im.mat[r][j - 1], mult));
      }
      if (!im.entry_is_zero(im.mat[i - 1][c - 1])) {
        notes.push_back("entry (" + std::to_string(i) + "," +
                        std::to_string(c) +
                        ") set to the exact zero guaranteed by the pivot "
                        "identity");
        im.mat[i - 1][c - 1] = im.entry_zero();
      }
    }
    im.mat.erase(im.mat.begin() + (i - 1));
    for (auto& row : im.mat) row.erase(row.begin() + (j - 1));
    im.deletions += 1;
    im.record("pivotdelete", args, source, notes);
  } catch (const MoveError& e) {
    im.record_rejected("pivotdelete", args, source, e.what());
    throw;
  }
}

void SkewSession::rank_zero(const std::vector<int>& rows_in,
                            const std::vector<int>& cols_in) {
  Impl& im = *impl_;
  json args{{"rows", rows_in}, {"cols", cols_in}};
  std::string source = "rankzero";
  if (!rows_in.empty() || !cols_in.empty()) {
    source += " rows=";
    for (size_t i = 0; i < rows_in.size(); ++i) {
      source += (i ? "," : "") + std::to_string(rows_in[i]);
    }
    source += " cols=";
    for (size_t i = 0; i < cols_in.size(); ++i) {
      source += (i ? "," : "") + std::to_string(cols_in[i]);
    }
  }
  try {
    if (rows_in.size() != cols_in.size()) {
      throw MoveError("rankzero needs as many rows as columns");
    }
    for (int r : rows_in) im.check_row(r);
    for (int c : cols_in) im.check_col(c);
    if (static_cast<int>(rows_in.size()) + im.deletions != im.m - 1) {
      throw MoveError(
          "rank certificate requires |rows| + deletions = m - 1 (" +
          std::to_string(rows_in.size()) + " + " +
          std::to_string(im.deletions) + " != " + std::to_string(im.m - 1) +
          ")");
    }
    // Find a permuted-triangular order with certified-nonzero diagonal:
    // repeatedly peel a row whose only nonzero certificate column remains.
    std::vector<int> rrem(rows_in), crem(cols_in);
    while (!rrem.empty()) {
      bool peeled = false;
      for (size_t a = 0; a < rrem.size() && !peeled; ++a) {
        int nz = 0, the_c = -1;
        for (size_t b = 0; b < crem.size(); ++b) {
          if (!im.entry_is_zero(im.mat[rrem[a] - 1][crem[b] - 1])) {
            ++nz;
            the_c = static_cast<int>(b);
          }
        }
        if (nz == 1 &&
            im.certify_nonzero_entry(im.mat[rrem[a] - 1][crem[the_c] - 1])) {
          rrem.erase(rrem.begin() + a);
          crem.erase(crem.begin() + the_c);
          peeled = true;
        }
      }
      if (!peeled) {
        throw MoveError(
            "certificate rows/columns are not permuted-triangular with a "
            "certified-nonzero diagonal");
      }
    }
    std::vector<std::string> notes;
    notes.push_back(
        "rank m - 1 = " + std::to_string(im.m - 1) +
        " realized by deleted pivots plus the certificate: the level "
        "invariant is finite");
    for (int r = 1; r <= im.rows(); ++r) {
      if (std::find(rows_in.begin(), rows_in.end(), r) != rows_in.end()) {
        continue;
      }
      for (int c : cols_in) {
        if (!im.entry_is_zero(im.mat[r - 1][c - 1])) {
          throw MoveError("row " + std::to_string(r) +
                          " is not literally zero on the certificate "
                          "columns");
        }
      }
      bool any = false;
      for (int c = 0; c < im.cols(); ++c) {
        if (!im.entry_is_zero(im.mat[r - 1][c])) any = true;
        im.mat[r - 1][c] = im.entry_zero();
      }
      if (any) {
        notes.push_back("row " + std::to_string(r) +
                        " zeroed by the rank bound (deleted pivots and the "
                        "certificate witness full row rank m - 1 = " +
                        std::to_string(im.m - 1) + ")");
      }
    }
    im.record("rankzero", args, source, notes);
  } catch (const MoveError& e) {
    im.record_rejected("rankzero", args, source, e.what());
    throw;
  }
}

// ===========================================================================
// Readout
// ===========================================================================

namespace {

json readout_to_json(const Readout& r) {
  json j;
  j["conclusive"] = r.conclusive;
  if (r.conclusive) {
    j["delta"] = r.delta;
  } else {
    j["reason"] = r.reason;
  }
  j["diagonal"] = r.diagonal;
  j["deletions"] = r.deletions;
  return j;
}

}  // namespace

Readout SkewSession::readout() const {
  Impl& im = *impl_;
  Readout out;
  out.deletions = im.deletions;
  std::vector<std::pair<int, int>> diag;
  std::vector<bool> col_used(im.cols(), false);
  for (int r = 0; r < im.rows(); ++r) {
    int nz = 0, cj = -1;
    for (int c = 0; c < im.cols(); ++c) {
      if (!im.entry_is_zero(im.mat[r][c])) {
        ++nz;
        cj = c;
      }
    }
    if (nz == 0) continue;
    if (nz > 1) {
      out.reason = "row " + std::to_string(r + 1) +
                   " has more than one nonzero entry; the matrix is not in "
                   "diagonal-plus-zero-rows form";
      return out;
    }
    if (col_used[cj]) {
      out.reason = "column " + std::to_string(cj + 1) +
                   " carries two diagonal entries; the matrix is not in "
                   "diagonal-plus-zero-rows form";
      return out;
    }
    col_used[cj] = true;
    diag.push_back({r, cj});
  }
  if (static_cast<int>(diag.size()) + im.deletions != im.m - 1) {
    out.reason = "rank deficit: " + std::to_string(diag.size()) +
                 " diagonal entries + " + std::to_string(im.deletions) +
                 " deletions != m - 1 = " + std::to_string(im.m - 1);
    return out;
  }
  long delta = 0;
  for (auto [r, c] : diag) {
    const Entry& e = im.mat[r][c];
    out.diagonal.push_back(im.entry_str(e));
    if (im.level == 0) {
      const AbFrac& f = std::get<AbFrac>(e);
      long s = degree_spread(f.num, im.pres.component_weights) -
               degree_spread(f.den, im.pres.component_weights);
      delta += s;
    } else {
      const SkewExpr& s = std::get<SkewExpr>(e);
      long lo = 0, hi = 0;
      bool first = true;
      for (const auto& [m, cc] : s.terms) {
        long l = im.mono_level(m);
        if (first) {
          lo = hi = l;
          first = false;
        } else {
          lo = std::min(lo, l);
          hi = std::max(hi, l);
        }
      }
      SkewExpr top, bot;
      for (const auto& [m, cc] : s.terms) {
        long l = im.mono_level(m);
        if (l == hi) top.add(m, cc);
        if (l == lo) bot.add(m, cc);
      }
      if (!im.certify_nonzero(top) || !im.certify_nonzero(bot)) {
        out.reason = "cannot certify the extreme level components of a "
                     "diagonal entry nonzero: " +
                     im.entry_str(e);
        out.diagonal.clear();
        return out;
      }
      delta += hi - lo;
    }
  }
  out.conclusive = true;
  out.delta = delta;
  return out;
}

Readout SkewSession::record_readout() {
  Impl& im = *impl_;
  Readout r = readout();
  json args = readout_to_json(r);
  im.record("readout", args, "readout", {});
  im.readout_json = args;
  return r;
}

std::string SkewSession::ledger_json() const {
  Impl& im = *impl_;
  json led;
  led["level"] = im.level;
  led["presentation"] = print_presentation(im.pres);
  json fs = json::array();
  for (const DeclaredFact& f : im.facts.facts) {
    json j;
    switch (f.kind) {
      case FactKind::GENERATOR_EQUALITY:
        j["kind"] = "equal";
        j["lhs"] = im.word_str(f.lhs);
        j["rhs"] = im.word_str(f.rhs);
        break;
      case FactKind::COMMUTATION:
        j["kind"] = "commute";
        j["lhs"] = im.word_str(f.lhs);
        j["rhs"] = im.word_str(f.rhs);
        break;
      case FactKind::NONTRIVIAL:
        j["kind"] = "nontrivial";
        j["lhs"] = im.word_str(f.lhs);
        break;
      case FactKind::LEVEL:
        j["kind"] = "level";
        j["level"] = f.level;
        break;
    }
    if (!f.citation.empty()) j["citation"] = f.citation;
    fs.push_back(j);
  }
  led["facts"] = fs;
  led["moves"] = im.moves;
  if (im.readout_json) led["readout"] = *im.readout_json;
  return led.dump(1);
}

// ===========================================================================
// Facts parsing
// ===========================================================================

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_bar(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '|') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

FactSet parse_facts(const std::string& text, const Alphabet& alph) {
  FactSet fs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    auto err = [&](const std::string& msg) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  msg);
    };
    try {
      if (kw == "level") {
        if (rest == "0") {
          fs.declared_level = 0;
        } else if (rest == "ge1" || rest == "1") {
          fs.declared_level = 1;
        } else {
          err("level must be 0 or ge1");
        }
        DeclaredFact f;
        f.kind = FactKind::LEVEL;
        f.level = fs.declared_level;
        fs.facts.push_back(f);
      } else if (kw == "commute") {
        auto parts = split_bar(rest);
        if (parts.size() < 2) err("commute needs two words separated by |");
        DeclaredFact f;
        f.kind = FactKind::COMMUTATION;
        f.lhs = alph.parse_word(parts[0]);
        f.rhs = alph.parse_word(parts[1]);
        if (parts.size() >= 3) f.citation = parts[2];
        fs.facts.push_back(f);
      } else if (kw == "equal") {
        auto parts = split_bar(rest);
        if (parts.size() < 3) {
          err("equal needs two words and a citation separated by |");
        }
        DeclaredFact f;
        f.kind = FactKind::GENERATOR_EQUALITY;
        f.lhs = alph.parse_word(parts[0]);
        f.rhs = alph.parse_word(parts[1]);
        f.citation = parts[2];
        fs.facts.push_back(f);
      } else if (kw == "nontrivial") {
        auto parts = split_bar(rest);
        if (parts.size() < 2) err("nontrivial needs a word and a citation");
        DeclaredFact f;
        f.kind = FactKind::NONTRIVIAL;
        f.lhs = alph.parse_word(parts[0]);
        f.citation = parts[1];
        fs.facts.push_back(f);
      } else {
        err("unknown fact keyword '" + kw + "'");
      }
    } catch (const std::exception& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;  // already line-scoped
      err(what);
    }
  }
  return fs;
}

// ===========================================================================
// Script parsing and running
// ===========================================================================

namespace {

struct ScriptMove {
  enum Kind {
    LET,
    ROWSCALE,
    COLSCALE,
    ROWADDMUL,
    COLADDMUL,
    REWRITE,
    REWRITEENTRY,
    PIVOTDELETE,
    RANKZERO,
    READOUT,
  } kind = REWRITE;
  int i = 0, j = 0;
  std::string side, expr, name;
  std::vector<int> rows, cols;
  int lineno = 0;
};

std::string strip_quotes(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<int> parse_index_list(const std::string& spec) {
  std::vector<int> out;
  std::string cur;
  for (char c : spec) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(std::stoi(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(std::stoi(trim(cur)));
  return out;
}

std::vector<ScriptMove> parse_script(const std::string& text) {
  std::vector<ScriptMove> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    auto err = [&](const std::string& msg) {
      throw std::invalid_argument("script line " + std::to_string(lineno) +
                                  ": " + msg);
    };
    ScriptMove mv;
    mv.lineno = lineno;
    if (kw == "let") {
      std::string rest;
      std::getline(ls, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos) err("let needs '='");
      mv.kind = ScriptMove::LET;
      mv.name = trim(rest.substr(0, eq));
      mv.expr = strip_quotes(rest.substr(eq + 1));
      if (mv.name.empty() || mv.expr.empty()) err("malformed let");
    } else if (kw == "rowscale" || kw == "colscale") {
      mv.kind = kw == "rowscale" ? ScriptMove::ROWSCALE : ScriptMove::COLSCALE;
      if (!(ls >> mv.i >> mv.side)) err(kw + " needs INDEX SIDE EXPR");
      std::string rest;
      std::getline(ls, rest);
      mv.expr = strip_quotes(rest);
      if (mv.expr.empty()) err(kw + " needs an expression");
    } else if (kw == "rowaddmul" || kw == "coladdmul") {
      mv.kind =
          kw == "rowaddmul" ? ScriptMove::ROWADDMUL : ScriptMove::COLADDMUL;
      if (!(ls >> mv.i >> mv.j)) err(kw + " needs two indices");
      std::string rest;
      std::getline(ls, rest);
      mv.expr = strip_quotes(rest);
      if (mv.expr.empty()) err(kw + " needs an expression");
    } else if (kw == "rewrite") {
      mv.kind = ScriptMove::REWRITE;
    } else if (kw == "rewriteentry") {
      mv.kind = ScriptMove::REWRITEENTRY;
      if (!(ls >> mv.i >> mv.j)) err("rewriteentry needs two indices");
      std::string rest;
      std::getline(ls, rest);
      mv.expr = strip_quotes(rest);
      if (mv.expr.empty()) err("rewriteentry needs an expression");
    } else if (kw == "pivotdelete") {
      mv.kind = ScriptMove::PIVOTDELETE;
      if (!(ls >> mv.i >> mv.j)) err("pivotdelete needs two indices");
    } else if (kw == "rankzero") {
      mv.kind = ScriptMove::RANKZERO;
      std::string tok;
      while (ls >> tok) {
        if (tok.rfind("rows=", 0) == 0) {
          mv.rows = parse_index_list(tok.substr(5));
        } else if (tok.rfind("cols=", 0) == 0) {
          mv.cols = parse_index_list(tok.substr(5));
        } else {
          err("unknown rankzero argument '" + tok + "'");
        }
      }
    } else if (kw == "readout") {
      mv.kind = ScriptMove::READOUT;
    } else {
      err("unknown move '" + kw + "'");
    }
    out.push_back(mv);
  }
  return out;
}

struct RunOutcome {
  ScriptResult result;
};

RunOutcome run_moves(const WeightedPresentation& p, const FactSet& facts,
                     int level, const std::vector<ScriptMove>& moves) {
  RunOutcome out;
  SkewSession session(p, facts, level);
  out.result.ok = true;
  int pos = 0;
  for (const ScriptMove& mv : moves) {
    ++pos;
    try {
      switch (mv.kind) {
        case ScriptMove::LET:
          session.let_binding(mv.name, mv.expr);
          break;
        case ScriptMove::ROWSCALE:
          session.row_scale(mv.i, mv.side, mv.expr);
          break;
        case ScriptMove::COLSCALE:
          session.col_scale(mv.i, mv.side, mv.expr);
          break;
        case ScriptMove::ROWADDMUL:
          session.row_addmul(mv.i, mv.j, mv.expr);
          break;
        case ScriptMove::COLADDMUL:
          session.col_addmul(mv.i, mv.j, mv.expr);
          break;
        case ScriptMove::REWRITE:
          session.rewrite_all();
          break;
        case ScriptMove::REWRITEENTRY:
          session.rewrite_entry(mv.i, mv.j, mv.expr);
          break;
        case ScriptMove::PIVOTDELETE:
          session.pivot_delete(mv.i, mv.j);
          break;
        case ScriptMove::RANKZERO:
          session.rank_zero(mv.rows, mv.cols);
          break;
        case ScriptMove::READOUT:
          out.result.readout = session.record_readout();
          break;
      }
    } catch (const MoveError& e) {
      out.result.ok = false;
      out.result.failed_move = pos;
      out.result.error = e.what();
      break;
    }
  }
  out.result.ledger = session.ledger_json();
  return out;
}

// Replays the raw source lines recorded in a ledger as a fresh script and
// reports whether the regenerated ledger is bit-identical.
bool replay_matches(const WeightedPresentation& p, const FactSet& facts,
                    int level, const std::string& ledger) {
  json led = json::parse(ledger);
  std::string text;
  for (const auto& mv : led["moves"]) {
    text += mv["source"].get<std::string>();
    text += "\n";
  }
  RunOutcome again = run_moves(p, facts, level, parse_script(text));
  return again.result.ledger == ledger;
}

}  // namespace

ScriptResult run_script(const WeightedPresentation& p, const FactSet& facts,
                        int level, const std::string& script_text) {
  std::vector<ScriptMove> moves = parse_script(script_text);
  RunOutcome first = run_moves(p, facts, level, moves);
  first.result.replay_identical =
      replay_matches(p, facts, level, first.result.ledger);
  return first.result;
}

// ===========================================================================
// Automatic reduction
// ===========================================================================

namespace {

std::string frac_expr_text(const AbFrac& f) {
  std::string out = "((" + print_laurent(f.num) + ")";
  if (!(f.den.is_constant() && !f.den.is_zero() &&
        f.den.terms().begin()->second == 1)) {
    out += " * inv(" + print_laurent(f.den) + ")";
  }
  out += ")";
  return out;
}

}  // namespace

ScriptResult run_auto(const WeightedPresentation& p, const FactSet& facts,
                      int level) {
  ScriptResult res;
  SkewSession session(p, facts, level);
  SkewSession::Impl& im = *session.impl_;
  const std::vector<long>& w = p.component_weights;

  try {
    if (level == 0) {
      for (int guard = 0; guard < 400; ++guard) {
        // 1. Delete a pivot whose numerator is homogeneous (hence a unit).
        bool acted = false;
        for (int i = 0; i < im.rows() && !acted; ++i) {
          for (int j = 0; j < im.cols() && !acted; ++j) {
            const AbFrac& f = std::get<AbFrac>(im.mat[i][j]);
            if (!f.num.is_zero() && is_level_homogeneous(f.num, w)) {
              session.pivot_delete(i + 1, j + 1);
              acted = true;
            }
          }
        }
        if (acted) continue;
        // 2. One graded elimination step in the first column (then row)
        //    holding at least two nonzero entries: reduce the wider-spread
        //    entry by the other, cancelling its top level.
        auto spread_of = [&](const AbFrac& f) {
          return degree_spread(f.num, w) - degree_spread(f.den, w);
        };
        // Quotient of top components, always expressible with a homogeneous
        // denominator: top(e)/top(f) = (top_num_e * den_f) / (den_e * top_num_f).
        auto top_quotient = [&](const AbFrac& e, const AbFrac& f) {
          return frac_reduce(top_component(e.num, w) * f.den,
                             e.den * top_component(f.num, w));
        };
        for (int j = 0; j < im.cols() && !acted; ++j) {
          std::vector<int> nz;
          for (int i = 0; i < im.rows(); ++i) {
            if (!std::get<AbFrac>(im.mat[i][j]).num.is_zero()) nz.push_back(i);
          }
          if (nz.size() < 2) continue;
          std::sort(nz.begin(), nz.end(), [&](int a, int b) {
            long sa = spread_of(std::get<AbFrac>(im.mat[a][j]));
            long sb = spread_of(std::get<AbFrac>(im.mat[b][j]));
            return sa != sb ? sa < sb : a < b;
          });
          int small = nz[0], big = nz[1];
          AbFrac qt = top_quotient(std::get<AbFrac>(im.mat[big][j]),
                                   std::get<AbFrac>(im.mat[small][j]));
          session.row_addmul(big + 1, small + 1, "-" + frac_expr_text(qt));
          acted = true;
        }
        for (int i = 0; i < im.rows() && !acted; ++i) {
          std::vector<int> nz;
          for (int j = 0; j < im.cols(); ++j) {
            if (!std::get<AbFrac>(im.mat[i][j]).num.is_zero()) nz.push_back(j);
          }
          if (nz.size() < 2) continue;
          std::sort(nz.begin(), nz.end(), [&](int a, int b) {
            long sa = spread_of(std::get<AbFrac>(im.mat[i][a]));
            long sb = spread_of(std::get<AbFrac>(im.mat[i][b]));
            return sa != sb ? sa < sb : a < b;
          });
          int small = nz[0], big = nz[1];
          AbFrac qt = top_quotient(std::get<AbFrac>(im.mat[i][big]),
                                   std::get<AbFrac>(im.mat[i][small]));
          session.col_addmul(big + 1, small + 1, "-" + frac_expr_text(qt));
          acted = true;
        }
        if (!acted) break;
      }
    } else {
      for (int guard = 0; guard < 100; ++guard) {
        bool acted = false;
        for (int i = 0; i < im.rows() && !acted; ++i) {
          for (int j = 0; j < im.cols() && !acted; ++j) {
            const SkewExpr& e = std::get<SkewExpr>(im.mat[i][j]);
            if (e.is_zero()) continue;
            // Probe the certificate first so the ledger only records moves
            // that actually apply.
            if (im.certify_unit_ge1(e).ok) {
              session.pivot_delete(i + 1, j + 1);
              acted = true;
            }
          }
        }
        if (!acted) break;
      }
      if (im.deletions == im.m - 1 && im.rows() > 0) {
        bool residue = false;
        for (int i = 0; i < im.rows(); ++i) {
          for (int j = 0; j < im.cols(); ++j) {
            if (!im.entry_is_zero(im.mat[i][j])) residue = true;
          }
        }
        if (residue) session.rank_zero({}, {});
      }
    }
    res.ok = true;
  } catch (const MoveError& e) {
    // A probed move was still rejected; surface it honestly.
    res.ok = false;
    res.error = e.what();
  }
  res.readout = session.record_readout();
  res.ledger = session.ledger_json();
  res.replay_identical = replay_matches(p, facts, level, res.ledger);
  return res;
}

}  // namespace alex
