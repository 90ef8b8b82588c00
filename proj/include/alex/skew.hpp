#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "alex/laurent.hpp"
#include "alex/presentations.hpp"
#include "alex/words.hpp"

namespace alex {

// ---------------------------------------------------------------------------
// Declared facts
// ---------------------------------------------------------------------------

enum class FactKind {
  GENERATOR_EQUALITY,  // lhs = rhs in the session quotient (cited)
  COMMUTATION,         // [lhs, rhs] = 1
  NONTRIVIAL,          // lhs != 1 in the session quotient (cited)
  LEVEL,               // which quotient the facts target (level field)
};

struct DeclaredFact {
  FactKind kind = FactKind::COMMUTATION;
  Word lhs;
  Word rhs;
  int level = 0;  // LEVEL facts: 0, or 1 meaning every n >= 1
  std::string citation;
};

struct FactSet {
  int declared_level = -1;  // from a LEVEL fact; -1 when absent
  std::vector<DeclaredFact> facts;
};

// Line-oriented fact file; '#' starts a comment. Lines:
//   level 0            (or: level ge1)
//   commute <word> | <word> [| citation]
//   equal <word> | <word> | citation
//   nontrivial <word> | citation
// Words use the presentation's alphabet tokens separated by spaces.
FactSet parse_facts(const std::string& text, const Alphabet& alph);

// ---------------------------------------------------------------------------
// Session entries
// ---------------------------------------------------------------------------

// One factor of a noncommutative monomial: either a group word or the formal
// inverse of a previously certified unit (indexing the session unit table).
struct Atom {
  enum Kind { WORD, INV };
  Kind kind = WORD;
  Word word;     // WORD
  int ref = -1;  // INV

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using Mono = std::vector<Atom>;

// Z-linear combination of monomials; the working representative of a matrix
// entry at levels n >= 1.
struct SkewExpr {
  std::map<Mono, long long> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const Mono& m, long long c);

  friend bool operator==(const SkewExpr&, const SkewExpr&) = default;
};

// Matrix entry at level 0: a fraction of Laurent polynomials whose
// denominator is a nonzero psi-homogeneous polynomial.
struct AbFrac {
  LaurentPoly num;
  LaurentPoly den;

  friend bool operator==(const AbFrac&, const AbFrac&);
};

using Entry = std::variant<SkewExpr, AbFrac>;

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

struct Readout {
  bool conclusive = false;
  long delta = 0;                     // when conclusive
  std::string reason;                 // when inconclusive
  std::vector<std::string> diagonal;  // display of diagonal entries
  int deletions = 0;
};

class MoveError : public std::runtime_error {
 public:
  explicit MoveError(const std::string& what) : std::runtime_error(what) {}
};

struct ScriptResult;

class SkewSession {
 public:
  // level: 0, or 1 meaning "any n >= 1". Throws std::invalid_argument on an
  // invalid presentation or inconsistent facts (an equality fact must not be
  // refuted by abelianization).
  SkewSession(const WeightedPresentation& p, const FactSet& facts, int level);
  ~SkewSession();
  SkewSession(SkewSession&&) noexcept;
  SkewSession& operator=(SkewSession&&) noexcept;

  int level() const;
  int rows() const;
  int cols() const;
  int deletions() const;
  std::string entry_display(int i, int j) const;  // 1-based
  std::vector<std::vector<std::string>> matrix_display() const;

  // Moves (1-based indices). Expressions use the script grammar below.
  // Throws MoveError with the rejection reason on an illegal move.
  void let_binding(const std::string& name, const std::string& expr);
  void row_scale(int i, const std::string& side, const std::string& expr);
  void col_scale(int j, const std::string& side, const std::string& expr);
  void row_addmul(int i, int k, const std::string& expr);  // row_i += e*row_k
  void col_addmul(int j, int k, const std::string& expr);  // col_j += col_k*e
  void rewrite_all();
  void rewrite_entry(int i, int j, const std::string& expr);
  void pivot_delete(int i, int j);
  void rank_zero(const std::vector<int>& rows, const std::vector<int>& cols);

  Readout readout() const;

  // Computes the readout and records it in the ledger as a move.
  Readout record_readout();

  // Ledger of every attempted move with the matrix state after each
  // successful one, serialized as JSON.
  std::string ledger_json() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;

  friend ScriptResult run_auto(const WeightedPresentation&, const FactSet&,
                               int);
};

// ---------------------------------------------------------------------------
// Scripts
// ---------------------------------------------------------------------------

// One move per line, '#' comments. Grammar:
//   let NAME = EXPR
//   rowscale I left EXPR        colscale J right EXPR
//   rowaddmul I K EXPR          coladdmul J K EXPR
//   rewrite                     rewriteentry I J EXPR
//   pivotdelete I J             rankzero rows=1,2 cols=1,2
//   readout
// EXPR: integers, + - *, parentheses, inv(EXPR), (EXPR)^-1, let names, and
// word tokens of the presentation alphabet (at level 0 also t, t1, t2, ...
// for abelianized monomials). The expression may be double-quoted.
struct ScriptResult {
  bool ok = false;           // every move applied
  int failed_move = 0;       // 1-based position of the first rejected move
  std::string error;         // rejection reason
  std::optional<Readout> readout;
  std::string ledger;        // serialized ledger JSON
  bool replay_identical = false;
};

ScriptResult run_script(const WeightedPresentation& p, const FactSet& facts,
                        int level, const std::string& script_text);

// Automatic reduction: at level 0 a graded elimination over fractions with
// homogeneous denominators; at levels n >= 1 a heuristic unit-pivot search.
// Returns the readout (possibly inconclusive) with the generated ledger.
ScriptResult run_auto(const WeightedPresentation& p, const FactSet& facts,
                      int level);

}  // namespace alex
