#include "semantics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace loginf {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Entailed: return "entailed";
    case Verdict::Contradicted: return "contradicted";
    case Verdict::Independent: return "independent";
    case Verdict::PremisesInconsistent: return "premises_inconsistent";
  }
  return "?";
}

namespace {

// Compiled quantifier-free formula over ground-atom indices.
struct Expr {
  FKind kind;
  int atom = -1;
  int a = -1, b = -1;
};

class Grounder {
 public:
  explicit Grounder(std::vector<std::string> domain) : domain_(std::move(domain)) {}

  int compile(const Formula& f) {
    switch (f.kind()) {
      case FKind::Atom:
        return leaf(f.symbol());
      case FKind::Pred:
        return leaf(f.symbol() + "(" + f.arg().name + ")");
      case FKind::Not: {
        int child = compile(f.left());
        return node(FKind::Not, child, -1);
      }
      case FKind::And:
      case FKind::Or:
      case FKind::Implies:
      case FKind::Iff: {
        int l = compile(f.left());
        int r = compile(f.right());
        return node(f.kind(), l, r);
      }
      case FKind::ForAll:
      case FKind::Exists: {
        FKind join = f.kind() == FKind::ForAll ? FKind::And : FKind::Or;
        int acc = -1;
        for (const auto& c : domain_) {
          Term t{TKind::Constant, c};
          int inst = compile(substitute_var(f.left(), f.symbol(), t));
          acc = acc < 0 ? inst : node(join, acc, inst);
        }
        if (acc < 0) throw LogicError("classify: empty grounding domain");
        return acc;
      }
    }
    throw LogicError("classify: invalid formula");
  }

  bool eval(int idx, std::uint32_t bits) const {
    const Expr& e = exprs_[static_cast<std::size_t>(idx)];
    switch (e.kind) {
      case FKind::Atom:
        return ((bits >> e.atom) & 1u) != 0;
      case FKind::Not:
        return !eval(e.a, bits);
      case FKind::And:
        return eval(e.a, bits) && eval(e.b, bits);
      case FKind::Or:
        return eval(e.a, bits) || eval(e.b, bits);
      case FKind::Implies:
        return !eval(e.a, bits) || eval(e.b, bits);
      case FKind::Iff:
        return eval(e.a, bits) == eval(e.b, bits);
      default:
        throw LogicError("classify: bad expression node");
    }
  }

  int atom_count() const { return static_cast<int>(atoms_.size()); }

 private:
  static Formula substitute_var(const Formula& f, const std::string& var, const Term& value) {
    switch (f.kind()) {
      case FKind::Atom:
        return f;
      case FKind::Pred:
        if (f.arg().kind == TKind::Variable && f.arg().name == var)
          return Formula::pred(f.symbol(), value);
        return f;
      case FKind::Not:
        return Formula::negate(substitute_var(f.left(), var, value));
      case FKind::And:
        return Formula::conj(substitute_var(f.left(), var, value),
                             substitute_var(f.right(), var, value));
      case FKind::Or:
        return Formula::disj(substitute_var(f.left(), var, value),
                             substitute_var(f.right(), var, value));
      case FKind::Implies:
        return Formula::implies(substitute_var(f.left(), var, value),
                                substitute_var(f.right(), var, value));
      case FKind::Iff:
        return Formula::iff(substitute_var(f.left(), var, value),
                            substitute_var(f.right(), var, value));
      case FKind::ForAll:
      case FKind::Exists:
        throw LogicError("classify: nested quantifier outside the fragment");
    }
    throw LogicError("classify: invalid formula");
  }

  int leaf(const std::string& key) {
    auto it = atoms_.find(key);
    int atom;
    if (it != atoms_.end()) {
      atom = it->second;
    } else {
      atom = static_cast<int>(atoms_.size());
      if (atom >= kMaxGroundAtoms)
        throw LogicError("classify: grounded atom count exceeds feasibility bound");
      atoms_.emplace(key, atom);
    }
    exprs_.push_back(Expr{FKind::Atom, atom, -1, -1});
    return static_cast<int>(exprs_.size()) - 1;
  }

  int node(FKind kind, int a, int b) {
    exprs_.push_back(Expr{kind, -1, a, b});
    return static_cast<int>(exprs_.size()) - 1;
  }

  std::vector<std::string> domain_;
  std::map<std::string, int> atoms_;
  std::vector<Expr> exprs_;
};

std::vector<std::string> grounding_domain(const std::vector<Formula>& premises,
                                          const Formula& query, int domain_size) {
  std::vector<Formula> all = premises;
  all.push_back(query);
  SymbolInventory inv = collect_symbols(all);
  std::vector<std::string> domain = inv.constants;
  for (int i = 1; i <= domain_size; ++i) {
    std::string name = "dom_" + std::to_string(i);
    while (inv.contains(name)) name += "_g";
    domain.push_back(name);
  }
  return domain;
}

}  // namespace

Verdict classify(const std::vector<Formula>& premises, const Formula& query, int domain_size) {
  if (domain_size < 1) throw LogicError("classify: domain_size must be >= 1");

  Grounder g(grounding_domain(premises, query, domain_size));
  std::vector<int> premise_exprs;
  premise_exprs.reserve(premises.size());
  for (const auto& p : premises) premise_exprs.push_back(g.compile(p));
  int query_expr = g.compile(query);

  const int n = g.atom_count();
  bool any_model = false, all_query = true, all_not_query = true;
  const std::uint32_t total = n >= 31 ? 0 : (1u << n);  // n <= kMaxGroundAtoms < 31
  for (std::uint32_t bits = 0;; ++bits) {
    bool premises_hold = true;
    for (int pe : premise_exprs) {
      if (!g.eval(pe, bits)) {
        premises_hold = false;
        break;
      }
    }
    if (premises_hold) {
      any_model = true;
      if (g.eval(query_expr, bits))
        all_not_query = false;
      else
        all_query = false;
      if (!all_query && !all_not_query) return Verdict::Independent;
    }
    if (bits + 1 == total || total == 0) break;
  }
  if (!any_model) return Verdict::PremisesInconsistent;
  if (all_query) return Verdict::Entailed;
  if (all_not_query) return Verdict::Contradicted;
  return Verdict::Independent;
}

std::optional<Verdict> classify_stable(const std::vector<Formula>& premises,
                                       const Formula& query) {
  Verdict v = classify(premises, query, 1);
  for (int d = 2; d <= 3; ++d)
    if (classify(premises, query, d) != v) return std::nullopt;
  return v;
}

bool contradicts(const Formula& f, const Formula& target) {
  if (clause_negation(f) == target || clause_negation(target) == f) return true;
  for (int d = 1; d <= 3; ++d)
    if (classify({f}, target, d) != Verdict::Contradicted) return false;
  return true;
}

}  // namespace loginf
