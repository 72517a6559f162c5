#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace loginf {

enum class FKind { Atom, Pred, Not, And, Or, Implies, Iff, ForAll, Exists };
enum class TKind { Constant, Variable };

struct Term {
  TKind kind = TKind::Constant;
  std::string name;
  friend bool operator==(const Term&, const Term&) = default;
};

// Immutable formula tree for the fragment: propositional connectives over
// atoms and unary predicate applications, with at most one prenex quantifier
// per clause. Nodes are shared, so copies are cheap and thread-safe.
class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string name);
  static Formula pred(std::string pred_name, Term arg);
  static Formula negate(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  bool valid() const { return node_ != nullptr; }
  FKind kind() const { return node_->kind; }
  // Atom name, predicate name, or quantifier variable depending on kind.
  const std::string& symbol() const { return node_->symbol; }
  const Term& arg() const { return node_->arg; }
  Formula left() const { return Formula(node_->a); }   // unary child for Not/quantifiers
  Formula right() const { return Formula(node_->b); }

  bool is_atomic() const;        // Atom or Pred
  bool is_literal() const;       // atomic or a single negation of an atomic
  bool quantifier_free() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  struct Node {
    FKind kind;
    std::string symbol;
    Term arg;
    std::shared_ptr<const Node> a, b;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class LogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the surface notation: `~` binds tightest, then `and`/`or` (which
/// may not be mixed without parentheses), then right-associative `->`/`<->`.
/// `forall x:` / `exists x:` scope over the rest of the clause and are only
/// accepted at the top level.
Formula parse_formula(const std::string& text);

/// Inverse of parse_formula with minimal parentheses.
std::string render_formula(const Formula& f);

/// ~f, except that negating a negation strips it instead of stacking.
Formula negate_simpl(const Formula& f);

/// Clause-level contradiction: quantifiers are dualized (forall <-> exists
/// with negated body) so the result stays inside the prenex fragment.
Formula clause_negation(const Formula& f);

// Symbol names are classified lexically: uppercase-first = predicate,
// x/y/z family = variable, other lowercase = proposition or constant
// depending on position.
bool is_predicate_name(const std::string& name);
bool is_variable_name(const std::string& name);

struct SymbolInventory {
  std::vector<std::string> propositions;
  std::vector<std::string> predicates;
  std::vector<std::string> constants;
  std::vector<std::string> variables;

  bool contains(const std::string& name) const;
  std::size_t size() const {
    return propositions.size() + predicates.size() + constants.size() + variables.size();
  }
  void merge(const SymbolInventory& other);
};

/// First-occurrence-ordered symbols of a formula. Throws LogicError if the
/// same name is used in two different classes.
SymbolInventory collect_symbols(const Formula& f);
SymbolInventory collect_symbols(const std::vector<Formula>& fs);

/// Applies a name->name map to every symbol of f. The map must not merge two
/// distinct symbols of f and must keep each name in its lexical class.
Formula rename_symbols(const Formula& f, const std::map<std::string, std::string>& map);

}  // namespace loginf
