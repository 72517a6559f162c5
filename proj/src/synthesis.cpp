#include "synthesis.hpp"

#include <algorithm>
#include <set>

#include "parallel.hpp"

namespace loginf {

namespace {

constexpr std::uint64_t kProblemStream = 0x70726f62;

const std::vector<std::string>& proposition_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> out;
    for (const char* base : {"p", "q", "r", "s", "t", "u", "w"}) {
      out.push_back(base);
      for (int i = 1; i <= 4; ++i) out.push_back(std::string(base) + "_" + std::to_string(i));
    }
    return out;
  }();
  return pool;
}

const std::vector<std::string>& predicate_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> out;
    for (const char* base : {"P", "Q", "R", "S", "T", "U", "W"}) {
      out.push_back(base);
      for (int i = 1; i <= 4; ++i) out.push_back(std::string(base) + "_" + std::to_string(i));
    }
    return out;
  }();
  return pool;
}

const std::vector<std::string>& variable_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> out{"x"};
    for (int i = 1; i <= 9; ++i) out.push_back("x_" + std::to_string(i));
    return out;
  }();
  return pool;
}

const std::vector<std::string>& constant_pool() {
  static const std::vector<std::string> pool = [] {
    std::vector<std::string> out;
    for (const char* base : {"a", "b", "c", "d", "e"}) {
      out.push_back(base);
      for (int i = 1; i <= 4; ++i) out.push_back(std::string(base) + "_" + std::to_string(i));
    }
    return out;
  }();
  return pool;
}

void collect_into(const InferenceChain& chain, SymbolInventory& inv) {
  inv.merge(collect_symbols(chain.target));
  for (const auto& step : chain.steps) {
    inv.merge(collect_symbols(step.premises));
    inv.merge(collect_symbols(step.conclusion));
  }
}

bool inconsistent_at(const std::vector<Formula>& premises, int domain_size) {
  return classify(premises, premises.front(), domain_size) == Verdict::PremisesInconsistent;
}

// Placeholders of `pattern` that a premise match left unbound. Term
// placeholders can still be filled from the premise symbol pool; an unbound
// proposition or predicate would introduce a new symbol.
void unbound_placeholders(const Formula& pattern, const InferenceRule& rule,
                          const Substitution& subst, std::set<std::string>& constants,
                          std::set<std::string>& variables, bool& needs_fresh_symbol) {
  switch (pattern.kind()) {
    case FKind::Atom:
      if (rule.is_placeholder(pattern.symbol()) && !subst.formulas.count(pattern.symbol()))
        needs_fresh_symbol = true;
      return;
    case FKind::Pred: {
      if (rule.is_placeholder(pattern.symbol()) && !subst.predicates.count(pattern.symbol()))
        needs_fresh_symbol = true;
      const Term& t = pattern.arg();
      if (rule.is_placeholder(t.name) && !subst.terms.count(t.name)) {
        if (is_variable_name(t.name))
          variables.insert(t.name);
        else
          constants.insert(t.name);
      }
      return;
    }
    case FKind::Not:
      unbound_placeholders(pattern.left(), rule, subst, constants, variables,
                           needs_fresh_symbol);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      unbound_placeholders(pattern.left(), rule, subst, constants, variables,
                           needs_fresh_symbol);
      unbound_placeholders(pattern.right(), rule, subst, constants, variables,
                           needs_fresh_symbol);
      return;
    case FKind::ForAll:
    case FKind::Exists:
      if (rule.is_placeholder(pattern.symbol()) && !subst.terms.count(pattern.symbol()))
        variables.insert(pattern.symbol());
      unbound_placeholders(pattern.left(), rule, subst, constants, variables,
                           needs_fresh_symbol);
      return;
  }
}

// Step-4 cleanup. Steps that infer a premise are dropped (the last step of a
// refutation always stays so the chain keeps its contradicting conclusion),
// proves-chains are cut at the earliest point the target is established, and
// a target that is itself a premise gets the empty chain.
void simplify_chain(InferenceChain& chain, const std::vector<Formula>& premises) {
  auto is_premise = [&premises](const Formula& f) {
    return std::find(premises.begin(), premises.end(), f) != premises.end();
  };
  if (chain.kind == ChainKind::Proves && is_premise(chain.target)) {
    chain.steps.clear();
    return;
  }
  std::vector<ChainStep> kept;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    bool final_refute_step =
        chain.kind == ChainKind::Refutes && i + 1 == chain.steps.size();
    if (!final_refute_step && is_premise(chain.steps[i].conclusion)) continue;
    kept.push_back(chain.steps[i]);
  }
  if (chain.kind == ChainKind::Proves) {
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (kept[i].conclusion == chain.target) {
        kept.resize(i + 1);
        break;
      }
    }
  }
  chain.steps = std::move(kept);
}

}  // namespace

SymbolInventory problem_symbols(const InferenceProblem& problem) {
  SymbolInventory inv = collect_symbols(problem.premises);
  for (const auto& chain : problem.inferences) collect_into(chain, inv);
  for (const auto& chain : problem.contradictions) collect_into(chain, inv);
  inv.merge(collect_symbols(problem.unrelated));
  return inv;
}

std::string canonical_problem_string(const InferenceProblem& problem) {
  std::string out = "P:";
  for (const auto& f : problem.premises) out += render_formula(f) + "|";
  auto chains = [&out](const char* tag, const std::vector<InferenceChain>& cs) {
    out += tag;
    for (const auto& c : cs) {
      out += render_formula(c.target) + "{";
      for (const auto& s : c.steps) {
        for (const auto& p : s.premises) out += render_formula(p) + ",";
        out += ">" + render_formula(s.conclusion) + ";" + s.rule_name + "/";
      }
      out += "}";
    }
  };
  chains("I:", problem.inferences);
  chains("C:", problem.contradictions);
  out += "U:";
  for (const auto& f : problem.unrelated) out += render_formula(f) + "|";
  return out;
}

std::optional<InferenceProblem> generate_problem(const RuleCatalog& catalog,
                                                 const GenerationConfig& config, Rng& rng) {
  const int depth = static_cast<int>(rng.pick_weighted(config.chain_length_distribution));

  // Seed problem from a random rule, all placeholders named with suffix _1.
  const InferenceRule& seed = catalog.at(static_cast<std::size_t>(rng.below(catalog.size())));
  FreshNamer namer(1);
  Substitution subst;
  InferenceProblem problem;
  for (const auto& pattern : seed.premises)
    problem.premises.push_back(*instantiate(pattern, seed, subst, &namer));
  std::vector<Formula> seed_inferences;
  for (const auto& pattern : seed.inferences)
    seed_inferences.push_back(*instantiate(pattern, seed, subst, &namer));
  for (const auto& f : seed_inferences) {
    InferenceChain chain;
    chain.target = f;
    chain.kind = ChainKind::Proves;
    chain.steps.push_back(ChainStep{problem.premises, f, seed.name});
    problem.inferences.push_back(std::move(chain));
  }
  for (const auto& pattern : seed.contradictions) {
    Formula target = *instantiate(pattern, seed, subst, &namer);
    // The refutation derives the inference that clashes with the target.
    const Formula* clashing = nullptr;
    for (const auto& f : seed_inferences)
      if (contradicts(f, target)) {
        clashing = &f;
        break;
      }
    if (!clashing) return std::nullopt;  // rules are built so this never fires
    InferenceChain chain;
    chain.target = target;
    chain.kind = ChainKind::Refutes;
    chain.steps.push_back(ChainStep{problem.premises, *clashing, seed.name});
    problem.contradictions.push_back(std::move(chain));
  }
  for (const auto& pattern : seed.unrelated) {
    Substitution copy = subst;
    problem.unrelated.push_back(*instantiate(pattern, seed, copy, &namer));
    subst = std::move(copy);
  }

  // Backward growth: replace a premise with the premises of a rule that
  // infers it, prepending that step to every chain.
  for (int g = 0; g < depth; ++g) {
    namer.set_application(g + 2);
    std::vector<std::size_t> order(problem.premises.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    bool grown = false;
    for (std::size_t idx : order) {
      Formula target = problem.premises[idx];
      auto m = match_backward(catalog, target, rng, namer);
      if (!m) continue;
      problem.premises.erase(problem.premises.begin() + static_cast<long>(idx));
      for (const auto& p : m->new_premises) problem.premises.push_back(p);
      ChainStep step{m->new_premises, target, m->rule->name};
      for (auto& chain : problem.inferences) chain.steps.insert(chain.steps.begin(), step);
      for (auto& chain : problem.contradictions) chain.steps.insert(chain.steps.begin(), step);
      grown = true;
      break;
    }
    if (!grown) return std::nullopt;
    problem.depth = g + 1;
  }

  for (auto& chain : problem.inferences) simplify_chain(chain, problem.premises);
  for (auto& chain : problem.contradictions) simplify_chain(chain, problem.premises);

  // Every target must stay classifiable by the truth-table oracle at domain
  // size 3, so problems whose grounding would blow the atom bound are
  // rejected and regenerated.
  SymbolInventory all = problem_symbols(problem);
  std::size_t ground_atoms =
      all.propositions.size() + all.predicates.size() * (all.constants.size() + 3);
  if (ground_atoms > static_cast<std::size_t>(kMaxGroundAtoms)) return std::nullopt;

  bool incons1 = inconsistent_at(problem.premises, 1);
  for (int d = 2; d <= 3; ++d)
    if (inconsistent_at(problem.premises, d) != incons1) return std::nullopt;
  problem.contradictory = incons1;
  return problem;
}

std::vector<InferenceProblem> generate_problems(const RuleCatalog& catalog,
                                                const GenerationConfig& config) {
  const std::size_t n = static_cast<std::size_t>(std::max(config.num_problems, 0));
  std::vector<std::optional<InferenceProblem>> slots(n);
  parallel_for(n, config.threads, [&](std::size_t i) {
    for (int attempt = 0; attempt < config.max_retries; ++attempt) {
      Rng rng(Rng::derive(config.seed, kProblemStream,
                          i * 1024 + static_cast<std::uint64_t>(attempt)));
      auto p = generate_problem(catalog, config, rng);
      if (p) {
        p->problem_id = i;
        slots[i] = std::move(p);
        break;
      }
    }
  });

  std::vector<InferenceProblem> clean;
  std::vector<InferenceProblem> buffered;
  for (auto& slot : slots) {
    if (!slot) continue;
    if (slot->contradictory)
      buffered.push_back(std::move(*slot));
    else
      clean.push_back(std::move(*slot));
  }
  // Readmit buffered contradictory problems up to the configured fraction of
  // the final set.
  std::vector<InferenceProblem> out = std::move(clean);
  std::size_t admitted = 0;
  for (auto& p : buffered) {
    double fraction =
        static_cast<double>(admitted + 1) / static_cast<double>(out.size() + 1);
    if (fraction > config.contradiction_cap) break;
    out.push_back(std::move(p));
    ++admitted;
  }
  std::sort(out.begin(), out.end(),
            [](const InferenceProblem& a, const InferenceProblem& b) {
              return a.problem_id < b.problem_id;
            });
  return out;
}

std::vector<OneStepInference> enumerate_one_step(const std::vector<Formula>& premises,
                                                 const RuleCatalog& catalog) {
  std::vector<OneStepInference> out;
  if (premises.empty()) return out;
  SymbolInventory pool = collect_symbols(premises);
  std::set<std::string> premise_strings;
  for (const auto& p : premises) premise_strings.insert(render_formula(p));
  std::set<std::string> seen;

  std::vector<std::size_t> tuple;
  std::vector<bool> used(premises.size(), false);
  std::vector<Formula> candidates;

  auto emit = [&](const Formula& conclusion, const InferenceRule& rule) {
    SymbolInventory symbols = collect_symbols(conclusion);
    bool fresh_symbol = false;
    auto check = [&](const std::vector<std::string>& names) {
      for (const auto& s : names)
        if (!pool.contains(s)) fresh_symbol = true;
    };
    check(symbols.propositions);
    check(symbols.predicates);
    check(symbols.constants);
    if (fresh_symbol) return;
    std::string text = render_formula(conclusion);
    if (premise_strings.count(text) || !seen.insert(text).second) return;
    out.push_back(OneStepInference{conclusion, rule.name});
  };

  auto consider = [&](const InferenceRule& rule) {
    for (const auto& subst : match_patterns(rule.premises, candidates, rule, Substitution{})) {
      for (const auto& inference : rule.inferences) {
        std::set<std::string> open_constants, open_variables;
        bool needs_fresh_symbol = false;
        unbound_placeholders(inference, rule, subst, open_constants, open_variables,
                             needs_fresh_symbol);
        if (needs_fresh_symbol) continue;  // would add a new predicate/proposition
        // Unbound term placeholders range over the premise pool: every known
        // constant (universal instantiation), and the premise variable name
        // for a generalized conclusion.
        std::vector<Substitution> expanded{subst};
        for (const auto& name : open_variables) {
          std::string var = pool.variables.empty() ? "x" : pool.variables.front();
          for (auto& s : expanded) s.terms[name] = Term{TKind::Variable, var};
        }
        for (const auto& name : open_constants) {
          std::vector<Substitution> next;
          for (const auto& s : expanded) {
            for (const auto& c : pool.constants) {
              Substitution s2 = s;
              s2.terms[name] = Term{TKind::Constant, c};
              next.push_back(std::move(s2));
            }
          }
          expanded = std::move(next);
        }
        for (auto& s : expanded) {
          if (auto conclusion = instantiate(inference, rule, s, nullptr))
            emit(*conclusion, rule);
        }
      }
    }
  };

  // Ordered premise tuples, lexicographic by index.
  auto tuples = [&](const InferenceRule& rule, std::size_t arity, auto&& self) -> void {
    if (tuple.size() == arity) {
      candidates.clear();
      for (std::size_t i : tuple) candidates.push_back(premises[i]);
      consider(rule);
      return;
    }
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple.push_back(i);
      self(rule, arity, self);
      tuple.pop_back();
      used[i] = false;
    }
  };

  for (const auto& rule : catalog.rules()) {
    std::size_t arity = rule.premises.size();
    if (arity > premises.size()) continue;
    tuples(rule, arity, tuples);
  }
  return out;
}

std::map<std::string, std::string> sample_renaming(const SymbolInventory& inventory, Rng& rng) {
  std::map<std::string, std::string> map;
  auto assign = [&map, &rng](const std::vector<std::string>& names,
                             const std::vector<std::string>& pool, const char* what) {
    if (names.size() > pool.size())
      throw LogicError(std::string("sample_renaming: more ") + what +
                       " symbols than pool names");
    std::vector<std::string> shuffled = pool;
    rng.shuffle(shuffled);
    for (std::size_t i = 0; i < names.size(); ++i) map[names[i]] = shuffled[i];
  };
  assign(inventory.propositions, proposition_pool(), "proposition");
  assign(inventory.predicates, predicate_pool(), "predicate");
  assign(inventory.constants, constant_pool(), "constant");
  assign(inventory.variables, variable_pool(), "variable");
  return map;
}

InferenceProblem apply_renaming(const InferenceProblem& problem,
                                const std::map<std::string, std::string>& map) {
  InferenceProblem out;
  out.problem_id = problem.problem_id;
  out.depth = problem.depth;
  out.contradictory = problem.contradictory;
  for (const auto& f : problem.premises) out.premises.push_back(rename_symbols(f, map));
  auto rename_chain = [&map](const InferenceChain& chain) {
    InferenceChain renamed;
    renamed.target = rename_symbols(chain.target, map);
    renamed.kind = chain.kind;
    for (const auto& step : chain.steps) {
      ChainStep s;
      for (const auto& p : step.premises) s.premises.push_back(rename_symbols(p, map));
      s.conclusion = rename_symbols(step.conclusion, map);
      s.rule_name = step.rule_name;
      renamed.steps.push_back(std::move(s));
    }
    return renamed;
  };
  for (const auto& c : problem.inferences) out.inferences.push_back(rename_chain(c));
  for (const auto& c : problem.contradictions) out.contradictions.push_back(rename_chain(c));
  for (const auto& f : problem.unrelated) out.unrelated.push_back(rename_symbols(f, map));
  return out;
}

std::vector<InferenceProblem> make_variations(const InferenceProblem& problem, int n, Rng& rng) {
  std::vector<InferenceProblem> out;
  if (n <= 0) return out;
  SymbolInventory inventory = problem_symbols(problem);
  std::set<std::string> seen{canonical_problem_string(problem)};
  const int max_attempts = 2 * n + 20;
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    auto map = sample_renaming(inventory, rng);
    InferenceProblem candidate = apply_renaming(problem, map);
    if (seen.insert(canonical_problem_string(candidate)).second)
      out.push_back(std::move(candidate));
  }
  return out;
}

}  // namespace loginf
