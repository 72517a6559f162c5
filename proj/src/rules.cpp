#include "rules.hpp"

#include <algorithm>
#include <cctype>

namespace loginf {

bool InferenceRule::is_placeholder(const std::string& symbol) const {
  return std::find(placeholders.begin(), placeholders.end(), symbol) != placeholders.end();
}

bool InferenceRule::quantified() const {
  for (const auto& f : premises)
    if (!f.quantifier_free()) return true;
  for (const auto& f : inferences)
    if (!f.quantifier_free()) return true;
  return false;
}

std::string FreshNamer::fresh_name(const std::string& placeholder) {
  for (int k = application_;; ++k) {
    std::string name = placeholder + "_" + std::to_string(k);
    if (!avoid_.contains(name) && used_.find(name) == used_.end()) {
      used_.insert(name);
      return name;
    }
  }
}

// ---------------------------------------------------------------------------
// Matching

namespace {

void match_into(const Formula& pattern, const Formula& f, const InferenceRule& rule,
                const Substitution& subst, std::vector<Substitution>& out);

void match_term(const Term& pattern_term, const Term& t, const InferenceRule& rule,
                Substitution subst, std::vector<Substitution>& out) {
  if (rule.is_placeholder(pattern_term.name)) {
    bool want_variable = is_variable_name(pattern_term.name);
    if (want_variable != (t.kind == TKind::Variable)) return;
    auto it = subst.terms.find(pattern_term.name);
    if (it != subst.terms.end()) {
      if (!(it->second == t)) return;
    } else {
      subst.terms[pattern_term.name] = t;
    }
    out.push_back(std::move(subst));
  } else if (pattern_term == t) {
    out.push_back(std::move(subst));
  }
}

void match_into(const Formula& pattern, const Formula& f, const InferenceRule& rule,
                const Substitution& subst, std::vector<Substitution>& out) {
  switch (pattern.kind()) {
    case FKind::Atom: {
      const std::string& sym = pattern.symbol();
      if (!rule.is_placeholder(sym)) {
        if (f.kind() == FKind::Atom && f.symbol() == sym) out.push_back(subst);
        return;
      }
      auto it = subst.formulas.find(sym);
      if (it != subst.formulas.end()) {
        if (it->second == f) out.push_back(subst);
        return;
      }
      if (!f.quantifier_free()) return;
      if (rule.literal_bindings && !f.is_literal()) return;
      for (const auto& [other, bound] : subst.formulas)
        if (bound == f) return;  // injective on propositional placeholders
      Substitution s2 = subst;
      s2.formulas[sym] = f;
      out.push_back(std::move(s2));
      return;
    }
    case FKind::Pred: {
      if (f.kind() != FKind::Pred) return;
      Substitution s2 = subst;
      const std::string& sym = pattern.symbol();
      if (rule.is_placeholder(sym)) {
        auto it = s2.predicates.find(sym);
        if (it != s2.predicates.end()) {
          if (it->second != f.symbol()) return;
        } else {
          for (const auto& [other, bound] : s2.predicates)
            if (bound == f.symbol()) return;  // injective on predicate placeholders
          s2.predicates[sym] = f.symbol();
        }
      } else if (sym != f.symbol()) {
        return;
      }
      match_term(pattern.arg(), f.arg(), rule, std::move(s2), out);
      return;
    }
    case FKind::Not:
      if (f.kind() == FKind::Not)
        match_into(pattern.left(), f.left(), rule, subst, out);
      else
        // Match modulo double negation: ~pattern against a positive formula
        // binds the inner pattern to the formula's negation.
        match_into(pattern.left(), Formula::negate(f), rule, subst, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: {
      if (f.kind() != pattern.kind()) return;
      std::vector<Substitution> lefts;
      match_into(pattern.left(), f.left(), rule, subst, lefts);
      for (const auto& s : lefts) match_into(pattern.right(), f.right(), rule, s, out);
      return;
    }
    case FKind::ForAll:
    case FKind::Exists: {
      if (f.kind() != pattern.kind()) return;
      const std::string& pv = pattern.symbol();
      Substitution s2 = subst;
      if (rule.is_placeholder(pv)) {
        Term want{TKind::Variable, f.symbol()};
        auto it = s2.terms.find(pv);
        if (it != s2.terms.end()) {
          if (!(it->second == want)) return;
        } else {
          s2.terms[pv] = want;
        }
      } else if (pv != f.symbol()) {
        return;
      }
      match_into(pattern.left(), f.left(), rule, s2, out);
      return;
    }
  }
}

}  // namespace

std::vector<Substitution> match_pattern(const Formula& pattern, const Formula& f,
                                        const InferenceRule& rule, const Substitution& base) {
  std::vector<Substitution> out;
  match_into(pattern, f, rule, base, out);
  return out;
}

std::vector<Substitution> match_patterns(const std::vector<Formula>& patterns,
                                         const std::vector<Formula>& formulas,
                                         const InferenceRule& rule, const Substitution& base) {
  if (patterns.size() != formulas.size()) return {};
  std::vector<Substitution> current{base};
  for (std::size_t i = 0; i < patterns.size() && !current.empty(); ++i) {
    std::vector<Substitution> next;
    for (const auto& s : current) match_into(patterns[i], formulas[i], rule, s, next);
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Instantiation

std::optional<Formula> instantiate(const Formula& pattern, const InferenceRule& rule,
                                   Substitution& subst, FreshNamer* fresh) {
  switch (pattern.kind()) {
    case FKind::Atom: {
      const std::string& sym = pattern.symbol();
      if (!rule.is_placeholder(sym)) return Formula::atom(sym);
      auto it = subst.formulas.find(sym);
      if (it != subst.formulas.end()) return it->second;
      if (!fresh) return std::nullopt;
      Formula fresh_atom = Formula::atom(fresh->fresh_name(sym));
      subst.formulas[sym] = fresh_atom;
      return fresh_atom;
    }
    case FKind::Pred: {
      const std::string& sym = pattern.symbol();
      std::string pred_name;
      if (rule.is_placeholder(sym)) {
        auto it = subst.predicates.find(sym);
        if (it != subst.predicates.end()) {
          pred_name = it->second;
        } else if (fresh) {
          pred_name = fresh->fresh_name(sym);
          subst.predicates[sym] = pred_name;
        } else {
          return std::nullopt;
        }
      } else {
        pred_name = sym;
      }
      Term t = pattern.arg();
      if (rule.is_placeholder(t.name)) {
        auto it = subst.terms.find(t.name);
        if (it != subst.terms.end()) {
          t = it->second;
        } else if (fresh) {
          t.name = fresh->fresh_name(t.name);
          subst.terms[pattern.arg().name] = t;
        } else {
          return std::nullopt;
        }
      }
      return Formula::pred(pred_name, t);
    }
    case FKind::Not: {
      auto inner = instantiate(pattern.left(), rule, subst, fresh);
      if (!inner) return std::nullopt;
      return negate_simpl(*inner);  // collapses ~~f introduced by the binding
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff: {
      auto l = instantiate(pattern.left(), rule, subst, fresh);
      if (!l) return std::nullopt;
      auto r = instantiate(pattern.right(), rule, subst, fresh);
      if (!r) return std::nullopt;
      switch (pattern.kind()) {
        case FKind::And: return Formula::conj(*l, *r);
        case FKind::Or: return Formula::disj(*l, *r);
        case FKind::Implies: return Formula::implies(*l, *r);
        default: return Formula::iff(*l, *r);
      }
    }
    case FKind::ForAll:
    case FKind::Exists: {
      const std::string& pv = pattern.symbol();
      std::string var;
      if (rule.is_placeholder(pv)) {
        auto it = subst.terms.find(pv);
        if (it != subst.terms.end()) {
          var = it->second.name;
        } else if (fresh) {
          var = fresh->fresh_name(pv);
          subst.terms[pv] = Term{TKind::Variable, var};
        } else {
          return std::nullopt;
        }
      } else {
        var = pv;
      }
      auto body = instantiate(pattern.left(), rule, subst, fresh);
      if (!body) return std::nullopt;
      return pattern.kind() == FKind::ForAll ? Formula::forall(var, *body)
                                             : Formula::exists(var, *body);
    }
  }
  return std::nullopt;
}

std::vector<ForwardInference> apply_forward(const InferenceRule& rule,
                                            const std::vector<Formula>& candidates,
                                            FreshNamer* fresh) {
  std::vector<ForwardInference> out;
  if (candidates.size() != rule.premises.size()) return out;
  for (const auto& subst : match_patterns(rule.premises, candidates, rule, Substitution{})) {
    for (const auto& inference : rule.inferences) {
      Substitution extended = subst;
      if (auto conclusion = instantiate(inference, rule, extended, fresh))
        out.push_back(ForwardInference{*conclusion, std::move(extended)});
    }
  }
  return out;
}

std::optional<BackwardMatch> match_backward(const RuleCatalog& catalog, const Formula& target,
                                            Rng& rng, FreshNamer& fresh) {
  struct Candidate {
    const InferenceRule* rule;
    Substitution subst;
  };
  std::vector<Candidate> candidates;
  for (const auto& rule : catalog.rules()) {
    for (const auto& inference : rule.inferences) {
      for (auto& subst : match_pattern(inference, target, rule, Substitution{}))
        candidates.push_back(Candidate{&rule, std::move(subst)});
    }
  }
  if (candidates.empty()) return std::nullopt;

  Candidate& pick = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
  BackwardMatch match;
  match.rule = pick.rule;
  match.subst = std::move(pick.subst);
  match.new_premises.reserve(pick.rule->premises.size());
  for (const auto& premise : pick.rule->premises) {
    auto inst = instantiate(premise, *pick.rule, match.subst, &fresh);
    if (!inst) return std::nullopt;  // cannot happen: fresh namer always fills
    match.new_premises.push_back(*inst);
  }
  return match;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

InferenceRule make_rule(std::string name, std::vector<std::string> placeholders,
                        std::vector<std::string> premises, std::vector<std::string> inferences,
                        std::vector<std::string> contradictions, std::vector<std::string> unrelated,
                        bool literal_bindings = false) {
  InferenceRule rule;
  rule.name = std::move(name);
  rule.placeholders = std::move(placeholders);
  auto parse_all = [](const std::vector<std::string>& texts) {
    std::vector<Formula> fs;
    fs.reserve(texts.size());
    for (const auto& t : texts) fs.push_back(parse_formula(t));
    return fs;
  };
  rule.premises = parse_all(premises);
  rule.inferences = parse_all(inferences);
  rule.contradictions = parse_all(contradictions);
  rule.unrelated = parse_all(unrelated);
  rule.literal_bindings = literal_bindings;
  return rule;
}

std::vector<InferenceRule> propositional_rules() {
  std::vector<InferenceRule> rules;
  rules.push_back(make_rule("modus ponens", {"p", "q", "r"},
                            {"p -> q", "p"}, {"q"}, {"~q"}, {"r", "~r"}));
  rules.push_back(make_rule("modus tollens", {"p", "q", "r"},
                            {"p -> q", "~q"}, {"~p"}, {"p"}, {"r", "~r"}));
  rules.push_back(make_rule("modus tollens", {"p", "q", "r"},
                            {"p -> ~q", "q"}, {"~p"}, {"p"}, {"r", "~r"}));
  rules.push_back(make_rule("hypothetical syllogism", {"p", "q", "r", "s"},
                            {"p -> q", "q -> r"}, {"p -> r"}, {"p and ~r"}, {"s", "~s"}));
  rules.push_back(make_rule("disjunctive syllogism", {"p", "q", "r"},
                            {"p or q", "~p"}, {"q"}, {"~q"}, {"r", "~r"}));
  rules.push_back(make_rule("disjunctive syllogism", {"p", "q", "r"},
                            {"p or q", "~q"}, {"p"}, {"~p"}, {"r", "~r"}));
  rules.push_back(make_rule("conjunction", {"p", "q", "r"},
                            {"p", "q"}, {"p and q"}, {"~p or ~q"}, {"r", "~r"},
                            /*literal_bindings=*/true));
  rules.push_back(make_rule("simplification", {"p", "q", "r"},
                            {"p and q"}, {"p"}, {"~p"}, {"r", "~r"}));
  rules.push_back(make_rule("simplification", {"p", "q", "r"},
                            {"p and q"}, {"q"}, {"~q"}, {"r", "~r"}));
  rules.push_back(make_rule("addition", {"p", "q", "r"},
                            {"p"}, {"p or q"}, {"~p and ~q"}, {"r", "~r"}));
  rules.push_back(make_rule("resolution", {"p", "q", "r", "s"},
                            {"p or q", "~p or r"}, {"q or r"}, {"~q and ~r"}, {"s", "~s"}));
  rules.push_back(make_rule("biconditional introduction", {"p", "q", "r"},
                            {"p -> q", "q -> p"}, {"p <-> q"}, {"p and ~q"}, {"r", "~r"}));
  rules.push_back(make_rule("biconditional elimination", {"p", "q", "r"},
                            {"p <-> q"}, {"p -> q"}, {"p and ~q"}, {"r", "~r"}));
  rules.push_back(make_rule("biconditional elimination", {"p", "q", "r"},
                            {"p <-> q"}, {"q -> p"}, {"q and ~p"}, {"r", "~r"}));
  rules.push_back(make_rule("biconditional elimination", {"p", "q", "r"},
                            {"p <-> q", "~p"}, {"~q"}, {"q"}, {"r", "~r"}));
  rules.push_back(make_rule("biconditional elimination", {"p", "q", "r"},
                            {"p <-> q", "~q"}, {"~p"}, {"p"}, {"r", "~r"}));
  rules.push_back(make_rule("constructive dilemma", {"p", "q", "r", "s", "t"},
                            {"p -> q", "r -> s", "p or r"}, {"q or s"}, {"~q and ~s"},
                            {"t", "~t"}));
  return rules;
}

// p -> P(x) etc. for building the quantified variants.
Formula predicate_form(const Formula& f, const InferenceRule& rule) {
  switch (f.kind()) {
    case FKind::Atom: {
      std::string name = f.symbol();
      if (rule.is_placeholder(name)) name[0] = static_cast<char>(std::toupper(name[0]));
      return Formula::pred(name, Term{TKind::Variable, "x"});
    }
    case FKind::Not:
      return Formula::negate(predicate_form(f.left(), rule));
    case FKind::And:
      return Formula::conj(predicate_form(f.left(), rule), predicate_form(f.right(), rule));
    case FKind::Or:
      return Formula::disj(predicate_form(f.left(), rule), predicate_form(f.right(), rule));
    case FKind::Implies:
      return Formula::implies(predicate_form(f.left(), rule), predicate_form(f.right(), rule));
    case FKind::Iff:
      return Formula::iff(predicate_form(f.left(), rule), predicate_form(f.right(), rule));
    default:
      throw LogicError("cannot derive a quantified variant of a quantified rule");
  }
}

std::vector<std::string> quantified_placeholders(const InferenceRule& rule) {
  std::vector<std::string> out;
  for (std::string ph : rule.placeholders) {
    ph[0] = static_cast<char>(std::toupper(ph[0]));
    out.push_back(std::move(ph));
  }
  out.push_back("x");
  return out;
}

}  // namespace

std::vector<InferenceRule> builtin_rules() {
  std::vector<InferenceRule> rules = propositional_rules();
  rules.push_back(make_rule("universal instantiation", {"P", "x", "a", "Q"},
                            {"forall x: P(x)"}, {"P(a)"}, {"~P(a)"}, {"Q(a)", "~Q(a)"}));
  rules.push_back(make_rule("existential generalization", {"P", "a", "x", "Q"},
                            {"P(a)"}, {"exists x: P(x)"}, {"forall x: ~P(x)"},
                            {"Q(a)", "~Q(a)"}));
  return rules;
}

std::vector<InferenceRule> derive_quantified_rules(const std::vector<InferenceRule>& prop_rules) {
  std::vector<InferenceRule> derived;
  for (const auto& base : prop_rules) {
    auto lift = [&base](const std::vector<Formula>& fs, auto&& wrap) {
      std::vector<Formula> out;
      out.reserve(fs.size());
      for (const auto& f : fs) out.push_back(wrap(predicate_form(f, base)));
      return out;
    };
    auto universally = [](Formula f) { return Formula::forall("x", std::move(f)); };
    auto existentially = [](Formula f) { return Formula::exists("x", std::move(f)); };

    InferenceRule universal;
    universal.name = "universal " + base.name;
    universal.placeholders = quantified_placeholders(base);
    universal.literal_bindings = base.literal_bindings;
    universal.premises = lift(base.premises, universally);
    universal.inferences = lift(base.inferences, universally);
    // A universally false body makes the existential claim false too, so the
    // contradicted clauses are the sharper existential ones.
    universal.contradictions = lift(base.contradictions, existentially);
    universal.unrelated = lift(base.unrelated, universally);
    derived.push_back(std::move(universal));

    // One existential variant per premise: that premise holds for some x,
    // all others for every x, and the conclusions hold for some x.
    for (std::size_t k = 0; k < base.premises.size(); ++k) {
      InferenceRule existential;
      existential.name = "existential " + base.name;
      existential.placeholders = quantified_placeholders(base);
      existential.literal_bindings = base.literal_bindings;
      for (std::size_t j = 0; j < base.premises.size(); ++j) {
        Formula body = predicate_form(base.premises[j], base);
        existential.premises.push_back(j == k ? Formula::exists("x", body)
                                              : Formula::forall("x", body));
      }
      existential.inferences = lift(base.inferences, existentially);
      existential.contradictions = lift(base.contradictions, universally);
      existential.unrelated = lift(base.unrelated, existentially);
      derived.push_back(std::move(existential));
    }
  }
  return derived;
}

void validate_rule(const InferenceRule& rule) {
  const int max_domain = rule.quantified() ? 3 : 1;
  auto check = [&rule, max_domain](const Formula& target, Verdict want, const char* what) {
    for (int d = 1; d <= max_domain; ++d) {
      Verdict got = classify(rule.premises, target, d);
      if (got != want)
        throw LogicError("rule '" + rule.name + "': " + what + " clause " +
                         render_formula(target) + " is " + to_string(got) + " at domain size " +
                         std::to_string(d) + ", expected " + to_string(want));
    }
  };
  for (const auto& f : rule.inferences) check(f, Verdict::Entailed, "inference");
  for (const auto& f : rule.contradictions) check(f, Verdict::Contradicted, "contradiction");
  for (const auto& f : rule.unrelated) check(f, Verdict::Independent, "unrelated");
}

RuleCatalog::RuleCatalog(std::vector<InferenceRule> rules) : rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) by_name_.emplace(rules_[i].name, i);
}

std::vector<const InferenceRule*> RuleCatalog::find(const std::string& name) const {
  std::vector<const InferenceRule*> out;
  auto [lo, hi] = by_name_.equal_range(name);
  for (auto it = lo; it != hi; ++it) out.push_back(&rules_[it->second]);
  return out;
}

const RuleCatalog& RuleCatalog::builtin() {
  static const RuleCatalog catalog = [] {
    std::vector<InferenceRule> base = builtin_rules();
    std::vector<InferenceRule> prop(base.begin(), base.end() - 2);
    std::vector<InferenceRule> all = base;
    for (auto& rule : derive_quantified_rules(prop)) all.push_back(std::move(rule));
    if (all.size() != 66)
      throw LogicError("rule catalog has " + std::to_string(all.size()) + " rules, expected 66");
    for (const auto& rule : all) validate_rule(rule);
    return RuleCatalog(std::move(all));
  }();
  return catalog;
}

// ---------------------------------------------------------------------------
// Chain verification (declared in semantics.hpp; needs the matcher)

namespace {

bool step_matches_rule(const InferenceRule& rule, const ChainStep& step) {
  if (rule.premises.size() != step.premises.size()) return false;
  std::vector<std::size_t> order(step.premises.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end());
  do {
    std::vector<Formula> arranged;
    arranged.reserve(order.size());
    for (std::size_t i : order) arranged.push_back(step.premises[i]);
    for (const auto& subst : match_patterns(rule.premises, arranged, rule, Substitution{})) {
      for (const auto& inference : rule.inferences) {
        if (!match_pattern(inference, step.conclusion, rule, subst).empty()) return true;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace

ChainCheck verify_chain(const std::vector<Formula>& premises, const InferenceChain& chain,
                        const RuleCatalog& rules) {
  auto fail = [](int step, std::string reason) {
    ChainCheck c;
    c.ok = false;
    c.failed_step = step;
    c.reason = std::move(reason);
    return c;
  };

  std::vector<Formula> known = premises;
  auto is_known = [&known](const Formula& f) {
    return std::find(known.begin(), known.end(), f) != known.end();
  };

  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const ChainStep& step = chain.steps[i];
    if (step.premises.empty()) return fail(static_cast<int>(i), "step has no premises");
    for (const auto& p : step.premises) {
      if (!is_known(p))
        return fail(static_cast<int>(i),
                    "step premise " + render_formula(p) +
                        " is neither a problem premise nor an earlier conclusion");
    }
    auto candidates = rules.find(step.rule_name);
    if (candidates.empty())
      return fail(static_cast<int>(i), "unknown rule '" + step.rule_name + "'");
    bool matched = false;
    for (const auto* rule : candidates) {
      if (step_matches_rule(*rule, step)) {
        matched = true;
        break;
      }
    }
    if (!matched)
      return fail(static_cast<int>(i),
                  "step is not an instance of rule '" + step.rule_name + "'");
    known.push_back(step.conclusion);
  }

  if (chain.steps.empty()) {
    if (chain.kind == ChainKind::Refutes)
      return fail(-1, "refutation chain has no steps");
    if (!is_known(chain.target))
      return fail(-1, "empty chain but target is not a premise");
    return {};
  }

  const Formula& last = chain.steps.back().conclusion;
  if (chain.kind == ChainKind::Proves) {
    if (!(last == chain.target))
      return fail(static_cast<int>(chain.steps.size()) - 1,
                  "final conclusion does not equal the target");
  } else {
    if (!contradicts(last, chain.target))
      return fail(static_cast<int>(chain.steps.size()) - 1,
                  "final conclusion does not contradict the target");
  }
  return {};
}

}  // namespace loginf
