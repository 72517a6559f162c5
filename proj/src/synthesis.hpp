#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "formula.hpp"
#include "rng.hpp"
#include "rules.hpp"
#include "semantics.hpp"

namespace loginf {

// An inference problem p = (P, I, C, U): premises, provable targets with
// their chains, disprovable targets with refutation chains, and unrelated
// clauses. problem_id is stable across renaming variations.
struct InferenceProblem {
  std::vector<Formula> premises;
  std::vector<InferenceChain> inferences;      // ChainKind::Proves
  std::vector<InferenceChain> contradictions;  // ChainKind::Refutes
  std::vector<Formula> unrelated;
  bool contradictory = false;
  std::uint64_t problem_id = 0;
  int depth = 0;  // growth steps applied
};

/// Symbols used anywhere in the problem (premises, chains, unrelated set).
SymbolInventory problem_symbols(const InferenceProblem& problem);

/// Stable text form used for duplicate detection.
std::string canonical_problem_string(const InferenceProblem& problem);

/// One problem: seed rule, depth ~ chain_length_distribution, backward
/// growth, chain simplification, consistency classification. Returns nullopt
/// for the rare draws whose consistency is not stable across domain sizes.
std::optional<InferenceProblem> generate_problem(const RuleCatalog& catalog,
                                                 const GenerationConfig& config, Rng& rng);

/// Deterministic batch generation: per-index rng streams (so any thread
/// count yields the same set), duplicate removal, and contradiction-buffer
/// readmission up to config.contradiction_cap.
std::vector<InferenceProblem> generate_problems(const RuleCatalog& catalog,
                                                const GenerationConfig& config);

struct OneStepInference {
  Formula conclusion;
  std::string rule_name;
};

/// Every conclusion reachable by a single rule application over the premises
/// that introduces no new predicates, constants or propositions and is not
/// already a premise. Order is deterministic: catalog order, then premise
/// tuples by index.
std::vector<OneStepInference> enumerate_one_step(const std::vector<Formula>& premises,
                                                 const RuleCatalog& catalog);

/// Injective renaming into the fixed name pools, covering every symbol of
/// the inventory. Throws LogicError if the inventory exceeds a pool.
std::map<std::string, std::string> sample_renaming(const SymbolInventory& inventory, Rng& rng);

/// The problem under a renaming map, applied consistently to premises,
/// chains and unrelated clauses. problem_id is preserved.
InferenceProblem apply_renaming(const InferenceProblem& problem,
                                const std::map<std::string, std::string>& map);

/// Up to n distinct renaming variations (the identity is excluded).
std::vector<InferenceProblem> make_variations(const InferenceProblem& problem, int n, Rng& rng);

}  // namespace loginf
