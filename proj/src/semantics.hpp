#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formula.hpp"

namespace loginf {

enum class Verdict { Entailed, Contradicted, Independent, PremisesInconsistent };

std::string to_string(Verdict v);

// Truth-table cap after grounding; generated problems stay far below it.
inline constexpr int kMaxGroundAtoms = 24;

/// Exact entailment check. Propositional formulas are evaluated directly;
/// quantified clauses are grounded over the constants appearing in the input
/// plus `domain_size` fresh ones (forall -> conjunction, exists ->
/// disjunction). Throws LogicError when the grounded atom count exceeds
/// kMaxGroundAtoms.
Verdict classify(const std::vector<Formula>& premises, const Formula& query,
                 int domain_size = 1);

/// Verdict agreed on by domain sizes 1..3, or nullopt if the sizes disagree
/// (which normal generated problems never produce).
std::optional<Verdict> classify_stable(const std::vector<Formula>& premises,
                                       const Formula& query);

/// True iff {f} makes `target` false in every model at domain sizes 1..3.
bool contradicts(const Formula& f, const Formula& target);

struct ChainStep {
  std::vector<Formula> premises;
  Formula conclusion;
  std::string rule_name;
};

enum class ChainKind { Proves, Refutes };

// A derivation for one target: ordered steps whose last conclusion either
// equals the target (Proves) or contradicts it (Refutes). A Proves chain
// with no steps means the target is itself a premise.
struct InferenceChain {
  Formula target;
  ChainKind kind = ChainKind::Proves;
  std::vector<ChainStep> steps;
};

struct ChainCheck {
  bool ok = true;
  int failed_step = -1;        // index of the first invalid step, -1 otherwise
  std::string reason;
};

class RuleCatalog;  // rules.hpp

/// Checks that every step instantiates its named rule under one substitution,
/// that step premises come from the problem premises plus earlier
/// conclusions, and that the final conclusion proves/refutes the target.
ChainCheck verify_chain(const std::vector<Formula>& premises, const InferenceChain& chain,
                        const RuleCatalog& rules);

}  // namespace loginf
