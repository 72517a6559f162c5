#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "formula.hpp"
#include "rng.hpp"
#include "semantics.hpp"

namespace loginf {

// An inference rule is a 5-tuple (P, I, C, U, name): premise patterns,
// inferences, contradictions, unrelated clauses, and a surface name. Pattern
// formulas use the rule's placeholder symbols; everything else is literal.
struct InferenceRule {
  std::vector<Formula> premises;
  std::vector<Formula> inferences;
  std::vector<Formula> contradictions;
  std::vector<Formula> unrelated;
  std::vector<std::string> placeholders;
  std::string name;
  // Restricts propositional placeholders to literal bindings. Used by
  // conjunction, which otherwise pairs arbitrary compound premises.
  bool literal_bindings = false;

  bool is_placeholder(const std::string& symbol) const;
  bool quantified() const;
};

struct Substitution {
  std::map<std::string, Formula> formulas;       // propositional placeholders
  std::map<std::string, std::string> predicates; // predicate placeholders
  std::map<std::string, Term> terms;             // variable/constant placeholders
};

// Names fresh symbols for placeholders left unbound by a match. Fresh names
// carry the application counter as a suffix (p -> p_2 on the second rule
// application of a problem) and never collide with the avoid set.
class FreshNamer {
 public:
  explicit FreshNamer(int application) : application_(application) {}
  FreshNamer(int application, SymbolInventory avoid)
      : application_(application), avoid_(std::move(avoid)) {}

  std::string fresh_name(const std::string& placeholder);
  void avoid(const SymbolInventory& inv) { avoid_.merge(inv); }
  void set_application(int application) { application_ = application; }

 private:
  int application_;
  SymbolInventory avoid_;
  std::set<std::string> used_;
};

/// All substitutions under which `pattern` matches `f`, extending `base`.
/// Propositional placeholders bind whole quantifier-free sub-formulas
/// (literals only for literal_bindings rules), predicate placeholders bind
/// predicate names, and `~pattern` also matches positive formulas modulo
/// double negation. Bindings are injective within each placeholder class.
std::vector<Substitution> match_pattern(const Formula& pattern, const Formula& f,
                                        const InferenceRule& rule, const Substitution& base);

std::vector<Substitution> match_patterns(const std::vector<Formula>& patterns,
                                         const std::vector<Formula>& formulas,
                                         const InferenceRule& rule, const Substitution& base);

/// Instantiates a pattern under a substitution, normalizing any double
/// negation the substitution introduces. Unbound placeholders are named by
/// `fresh` (and recorded in `subst`), or make the result nullopt when fresh
/// is null.
std::optional<Formula> instantiate(const Formula& pattern, const InferenceRule& rule,
                                   Substitution& subst, FreshNamer* fresh);

struct ForwardInference {
  Formula conclusion;
  Substitution subst;
};

/// One-step forward application: all ways the rule's premise patterns match
/// the candidate list (in order), paired with each instantiated inference.
/// Inferences that would need a fresh symbol are skipped unless `fresh` is
/// provided.
std::vector<ForwardInference> apply_forward(const InferenceRule& rule,
                                            const std::vector<Formula>& candidates,
                                            FreshNamer* fresh = nullptr);

class RuleCatalog {
 public:
  /// The full 66-rule catalog (17 propositional + universal instantiation +
  /// existential generalization + 47 derived quantified rules), validated
  /// against the semantic oracle on first use.
  static const RuleCatalog& builtin();

  const std::vector<InferenceRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  const InferenceRule& at(std::size_t i) const { return rules_[i]; }
  std::vector<const InferenceRule*> find(const std::string& name) const;

  explicit RuleCatalog(std::vector<InferenceRule> rules);

 private:
  std::vector<InferenceRule> rules_;
  std::multimap<std::string, std::size_t> by_name_;
};

/// The 19 hand-defined rules: 17 propositional plus universal instantiation
/// and existential generalization.
std::vector<InferenceRule> builtin_rules();

/// Derives the 47 quantified rules from the 17 propositional ones: one
/// universal variant each, plus one existential variant per premise.
std::vector<InferenceRule> derive_quantified_rules(const std::vector<InferenceRule>& prop_rules);

/// Oracle check of one rule: consistent premises, entailed inferences,
/// contradicted contradictions, independent unrelated clauses (domain sizes
/// 1-3 for quantified rules). Throws LogicError on the first violation.
void validate_rule(const InferenceRule& rule);

struct BackwardMatch {
  const InferenceRule* rule = nullptr;
  Substitution subst;
  std::vector<Formula> new_premises;
};

/// Picks uniformly among all (rule, substitution) pairs whose inference
/// pattern matches `target`, then instantiates that rule's premises,
/// inventing fresh names for unbound placeholders.
std::optional<BackwardMatch> match_backward(const RuleCatalog& catalog, const Formula& target,
                                            Rng& rng, FreshNamer& fresh);

}  // namespace loginf
