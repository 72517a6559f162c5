#pragma once

#include <map>
#include <string>
#include <vector>

#include "formula.hpp"
#include "rng.hpp"

namespace loginf {

enum class SentenceMode { Declarative, Condition, Negated, NegatedCondition };

// Surface forms of one lexicon entry. Forms are stored explicitly (no
// morphology): "is rich" / "were rich" / "is not rich" / "were not rich".
// some_subject/some_complement feed the "some Xs are Y" pattern and are only
// set for predicate entries.
struct LexEntry {
  std::string decl;
  std::string cond;
  std::string neg;
  std::string neg_cond;
  std::string some_subject;
  std::string some_complement;

  const std::string& form(SentenceMode mode) const;
};

struct Lexicon {
  std::vector<std::string> subjects;     // 20 person names
  std::vector<LexEntry> predicates;      // 30 predicate phrases
  std::vector<LexEntry> actions;         // 15 verb phrases
  std::vector<LexEntry> impersonals;     // 8 impersonal clauses ("it is raining")

  static const Lexicon& builtin();
  static Lexicon load(const std::string& path);  // JSON, same shape as builtin
  void validate() const;                         // pool sizes and uniqueness
};

enum class AtomPattern { SubjectAction, SubjectPredicate, Impersonal };

struct PropositionPhrase {
  AtomPattern pattern = AtomPattern::Impersonal;
  std::string subject;  // empty for impersonal
  LexEntry entry;
};

struct PredicatePhrase {
  bool is_action = false;
  LexEntry entry;
};

// Fixed symbol-to-phrase map for one example; input and output share it.
struct LexAssignment {
  std::map<std::string, PropositionPhrase> propositions;
  std::map<std::string, PredicatePhrase> predicates;
  std::map<std::string, std::string> constants;
};

/// Samples phrases for every symbol of the inventory without replacement
/// within the example. Throws LogicError when the inventory outgrows a pool.
LexAssignment assign_lexicon(const SymbolInventory& inventory, const Lexicon& lexicon,
                             Rng& rng);

/// Templated natural-language rendering of a clause. All symbols of f must
/// be covered by the assignment.
std::string render_nl(const Formula& f, const LexAssignment& assignment, SentenceMode mode);

/// render_nl as a sentence: leading capital and trailing period.
std::string nl_sentence(const Formula& f, const LexAssignment& assignment);

/// Deterministic renaming for type-1 targets: atoms become p, q, r, ... in
/// order of first appearance, predicates P, Q, ..., constants a, b, ...,
/// variables x, y, ... Idempotent.
std::vector<Formula> canonicalize_type1(const std::vector<Formula>& formulas);

}  // namespace loginf
